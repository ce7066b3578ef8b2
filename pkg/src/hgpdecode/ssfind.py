"""Envelope finding by small-set scoring.

The decoder walks over locally reduced subsets of generator supports
("candidates"), repeatedly absorbing the lowest-scoring candidate into the
envelope and marking its checks suspicious, until no candidate scores at or
below twice the expansion threshold.

Everything a candidate's score depends on lives inside one generator's check
grid: the delta_c x delta_v cells Γ(c) x Γ(v).  Each grid cell sees exactly
two of the generator's qubits (one VV, one CC), so a candidate's unique /
covered cells are pure functions of its local mask, precomputed once per
degree pair.  A per-generator bitmask of suspicious grid cells is then the
entire mutable score state: rescoring batches over dirty generators as a
handful of vectorized bitwise ops, and candidate selection is an argmin over
per-generator bests.  Scores compare exactly — integer cross-multiplication
on the fast path, Fractions on the fallback path (degree pairs whose grid or
denominator LCM overflows 63 bits).

Scoring thresholds, tie-breaking (lowest score, then generator index, then
mask) and retirement (candidates sharing a qubit with the envelope never
return) are deterministic, so a decode is replayable from (code, syndrome,
config) alone.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .hgp import CheckSet, HgpCode, QubitSet, qnbhd_unique
from .reduction import Candidate, ReductionConfigError, enumerate_minsets, locally_reduced_masks, mask_to_qubitset, part_sizes

__all__ = [
    "DecoderConfig",
    "SsfindIterationError",
    "SsfindResult",
    "SsfindState",
    "TraceEntry",
    "TraceParseError",
    "candidate_seeding",
    "min_untouched_score",
    "score",
    "ssfind",
    "trace_from_text",
    "trace_to_text",
]

_BIG = np.int64(1) << np.int64(62)
_INT_GUARD = 1 << 40


@dataclass(frozen=True)
class DecoderConfig:
    """Decode-time knobs; epsilon is the expansion parameter, held exactly."""

    epsilon: Fraction
    degree_cap: int = 20
    max_iterations: int | None = None
    verify_exit: bool = False
    record_rescored: bool = False

    def __post_init__(self):
        eps = self.epsilon
        if isinstance(eps, float):
            raise TypeError(
                "epsilon must be exact (Fraction, int, or 'p/q' string), not float"
            )
        eps = Fraction(eps)
        object.__setattr__(self, "epsilon", eps)
        if eps < 0:
            raise ValueError("epsilon must be non-negative")
        if eps >= Fraction(1, 10):
            warnings.warn(
                f"epsilon = {eps} is outside the guarantee regime (< 1/10); "
                "decoding proceeds without the envelope-size bound",
                UserWarning,
                stacklevel=2,
            )


class SsfindIterationError(RuntimeError):
    """Iteration cap hit while qualifying candidates remain (diagnostic)."""

    def __init__(self, message: str, trace: tuple):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    generator: int
    mask: int
    score_num: int
    score_den: int
    envelope_size: int
    suspicious_size: int


class TraceParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def trace_to_text(trace: Iterable[TraceEntry]) -> str:
    lines = [
        f"{t.iteration} {t.generator} {t.mask} {t.score_num} {t.score_den} "
        f"{t.envelope_size} {t.suspicious_size}"
        for t in trace
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def trace_from_text(text: str) -> tuple[TraceEntry, ...]:
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 7:
            raise TraceParseError(line_no, f"expected 7 fields, got {len(parts)}")
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise TraceParseError(line_no, f"non-integer field in {raw!r}") from None
        out.append(TraceEntry(*vals))
    return tuple(out)


# --- per-degree-pair local view tables ---


class _ViewTables:
    """Candidate geometry for one degree pair, shared across codes.

    Grid cell (i, j) = bit i*delta_v + j pairs the i-th VV qubit with the j-th
    CC qubit of a local view; a mask's unique cells are those covering exactly
    one of the pair, its covered cells those covering at least one.
    """

    def __init__(self, delta_v: int, delta_c: int):
        self.delta_v = delta_v
        self.delta_c = delta_c
        self.width = delta_v + delta_c
        self.grid_bits = delta_v * delta_c
        self.gridfull = (1 << self.grid_bits) - 1
        masks = locally_reduced_masks(delta_v, delta_c)
        self.masks = masks
        self.pos_of_mask = {m: p for p, m in enumerate(masks)}
        uq, cov, den = [], [], []
        for mask in masks:
            u = c = 0
            for i in range(delta_c):
                ai = (mask >> i) & 1
                for j in range(delta_v):
                    bj = (mask >> (delta_c + j)) & 1
                    cell = 1 << (i * delta_v + j)
                    if ai ^ bj:
                        u |= cell
                    if ai | bj:
                        c |= cell
            a, b = part_sizes(mask, delta_c)
            uq.append(u)
            cov.append(c)
            den.append(a * delta_v + b * delta_c)
        self.py_uq = tuple(uq)
        self.py_cov = tuple(cov)
        self.py_den = tuple(den)
        self.min_untouched = min(
            Fraction(d - 2 * part_sizes(m, delta_c)[0] * part_sizes(m, delta_c)[1], d)
            for m, d in zip(masks, den)
        )
        lcm = math.lcm(*den)
        self.fast_ok = self.grid_bits <= 63 and lcm <= _INT_GUARD
        if self.fast_ok:
            self.np_masks = np.array(masks, dtype=np.int64)
            self.np_uq = np.array(uq, dtype=np.int64)
            self.np_den = np.array(den, dtype=np.int64)
            self.np_mult = np.array([lcm // d for d in den], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _view_tables(delta_v: int, delta_c: int) -> _ViewTables:
    return _ViewTables(delta_v, delta_c)


def min_untouched_score(delta_v: int, delta_c: int) -> Fraction:
    """Lowest possible score of a candidate none of whose checks is suspicious."""
    return _view_tables(delta_v, delta_c).min_untouched


# --- per-code incidence maps (built lazily, cached on the code object) ---


class _CodeMaps:
    def __init__(self, code: HgpCode):
        self.code = code
        self.qubit_gens: dict[int, tuple[tuple[int, int], ...]] = {}
        self.check_gens: dict[int, tuple[tuple[int, int], ...]] = {}
        self.grid_checks: dict[int, tuple[int, ...]] = {}

    def gens_of_qubit(self, q: int) -> tuple[tuple[int, int], ...]:
        """(generator, local-position bit) pairs whose support contains q."""
        hit = self.qubit_gens.get(q)
        if hit is None:
            code = self.code
            kind, i, j = code.qubit_coords(q)
            out = []
            if kind == "VV":
                for c in code.base.adj_v[i]:
                    pos = code.base.adj_c[c].index(i)
                    out.append((code.gen_index(c, j), 1 << pos))
            else:
                for v in code.base.adj_c[j]:
                    pos = code.base.adj_v[v].index(j)
                    out.append((code.gen_index(i, v), 1 << (code.delta_c + pos)))
            hit = tuple(out)
            self.qubit_gens[q] = hit
        return hit

    def gens_of_check(self, x: int) -> tuple[tuple[int, int], ...]:
        """(generator, grid-cell bit) pairs whose check grid contains x."""
        hit = self.check_gens.get(x)
        if hit is None:
            code = self.code
            nu, zeta = code.check_coords(x)
            out = []
            for c in code.base.adj_v[nu]:
                i = code.base.adj_c[c].index(nu)
                for v in code.base.adj_c[zeta]:
                    j = code.base.adj_v[v].index(zeta)
                    out.append((code.gen_index(c, v), 1 << (i * code.delta_v + j)))
            hit = tuple(out)
            self.check_gens[x] = hit
        return hit

    def checks_of_grid(self, g: int) -> tuple[int, ...]:
        """Check index of every grid cell of generator g, cell-bit order."""
        hit = self.grid_checks.get(g)
        if hit is None:
            code = self.code
            c, v = code.gen_coords(g)
            rows = code.base.adj_c[c]
            cols = code.base.adj_v[v]
            hit = tuple(
                code.check_index(rows[i], cols[j])
                for i in range(code.delta_c)
                for j in range(code.delta_v)
            )
            self.grid_checks[g] = hit
        return hit

    def qubits_of_mask(self, g: int, mask: int) -> list[int]:
        code = self.code
        c, v = code.gen_coords(g)
        rows = code.base.adj_c[c]
        cols = code.base.adj_v[v]
        out = [
            code.vv_index(rows[i], v)
            for i in range(code.delta_c)
            if (mask >> i) & 1
        ]
        out += [
            code.cc_index(c, cols[j])
            for j in range(code.delta_v)
            if (mask >> (code.delta_c + j)) & 1
        ]
        return out


def _code_maps(code: HgpCode) -> _CodeMaps:
    maps = getattr(code, "_ssfind_maps", None)
    if maps is None:
        maps = _CodeMaps(code)
        code._ssfind_maps = maps
    return maps


# --- public slow-path score (set machinery only; the engine's oracle) ---


def score(code: HgpCode, candidate: Candidate, suspicious: CheckSet) -> Fraction:
    """|unique checks outside the suspicious set| / (delta * weighted norm)."""
    subset = mask_to_qubitset(code, candidate.generator, candidate.mask)
    uniq = qnbhd_unique(code, subset)
    num = sum(1 for chk in uniq.members if chk not in suspicious.members)
    den = candidate.a_v * code.delta_v + candidate.a_c * code.delta_c
    return Fraction(num, den)


def candidate_seeding(code: HgpCode, sigma: CheckSet) -> dict[int, list[Candidate]]:
    """Initial catalog: every candidate of every generator whose check grid
    meets the syndrome.  Lazy decoding extends this as checks turn suspicious."""
    maps = _code_maps(code)
    gens: set[int] = set()
    for chk in sigma.to_indices(code):
        gens.update(g for g, _ in maps.gens_of_check(chk))
    return {g: list(enumerate_minsets(code, g)) for g in sorted(gens)}


# --- decoder state ---


@dataclass
class SsfindState:
    """Mutable decode state plus inspection helpers for the cached scores."""

    code: HgpCode
    config: DecoderConfig
    mode: str
    sigma: frozenset[int]
    envelope_set: set[int] = field(default_factory=set)
    suspicious_set: set[int] = field(default_factory=set)
    seeded: list[bool] = field(default_factory=list)
    retired: list[int] = field(default_factory=list)
    rmask: list[int] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)

    def _tables(self) -> _ViewTables:
        return _view_tables(self.code.delta_v, self.code.delta_c)

    def alive_masks(self, g: int) -> list[int]:
        retired = self.retired[g]
        return [m for m in self._tables().masks if not (m & retired)]

    def cached_score(self, g: int, mask: int) -> Fraction:
        """Score from the incrementally maintained suspicious-cell mask."""
        t = self._tables()
        p = t.pos_of_mask[mask]
        num = (t.py_uq[p] & ~self.rmask[g] & t.gridfull).bit_count()
        return Fraction(num, t.py_den[p])

    def catalog(self) -> dict[int, list[Candidate]]:
        out = {}
        for g in range(self.code.num_gens):
            if self.seeded[g]:
                out[g] = [
                    Candidate(g, m, *part_sizes(m, self.code.delta_c))
                    for m in self.alive_masks(g)
                ]
        return out

    def buckets(self) -> dict[str, list[tuple[int, int]]]:
        """Alive candidates split at the qualification threshold 2*epsilon."""
        twoeps = 2 * self.config.epsilon
        low, high = [], []
        for g, cands in self.catalog().items():
            for cand in cands:
                s = self.cached_score(g, cand.mask)
                (low if s <= twoeps else high).append((g, cand.mask))
        return {"at_or_below": low, "above": high}


@dataclass(frozen=True)
class SsfindResult:
    envelope: QubitSet
    suspicious: CheckSet
    trace: tuple[TraceEntry, ...]
    iterations: int
    mode: str
    state: SsfindState
    rescored: tuple[tuple[int, ...], ...] | None = None


class _Engine:
    def __init__(self, code: HgpCode, sigma: CheckSet, config: DecoderConfig):
        if code.delta_v + code.delta_c > config.degree_cap:
            raise ReductionConfigError(
                f"local view has {code.delta_v + code.delta_c} qubits, "
                f"above the configured cap {config.degree_cap}"
            )
        self.code = code
        self.config = config
        self.tables = _view_tables(code.delta_v, code.delta_c)
        self.maps = _code_maps(code)
        eps = config.epsilon
        self.eps_num = eps.numerator
        self.eps_den = eps.denominator
        self.fast = self.tables.fast_ok and self.eps_den <= _INT_GUARD
        self.mode = "eager" if 2 * eps >= self.tables.min_untouched else "lazy"
        g_count = code.num_gens
        sigma_idx = sigma.to_indices(code)
        self.state = SsfindState(
            code=code,
            config=config,
            mode=self.mode,
            sigma=frozenset(sigma_idx),
            suspicious_set=set(sigma_idx),
            seeded=[self.mode == "eager"] * g_count,
            retired=[0] * g_count,
            rmask=[0] * g_count,
        )
        self.dirty: set[int] = set(range(g_count)) if self.mode == "eager" else set()
        if self.fast:
            self.np_retired = np.zeros(g_count, dtype=np.int64)
            self.np_rmask = np.zeros(g_count, dtype=np.int64)
            self.best_key = np.full(g_count, _BIG, dtype=np.int64)
            self.best_pos = np.zeros(g_count, dtype=np.int64)
            self.thr = 2 * self.eps_num * self.tables.np_den
        else:
            self.best_score: list[Fraction | None] = [None] * g_count
            self.best_pos_py: list[int] = [0] * g_count
        for chk in sigma_idx:
            self._mark_suspicious_cells(chk)

    # -- bookkeeping --

    def _mark_suspicious_cells(self, chk: int) -> None:
        st = self.state
        for g, cellbit in self.maps.gens_of_check(chk):
            st.rmask[g] |= cellbit
            if self.fast:
                self.np_rmask[g] |= cellbit
            st.seeded[g] = True
            self.dirty.add(g)

    def _retire(self, q: int) -> None:
        st = self.state
        for g, posbit in self.maps.gens_of_qubit(q):
            st.retired[g] |= posbit
            if self.fast:
                self.np_retired[g] |= posbit
            if st.seeded[g]:
                self.dirty.add(g)

    # -- scoring --

    def _rescore(self, gens: list[int]) -> None:
        if self.fast:
            d = np.array(gens, dtype=np.int64)
            not_r = self.np_rmask[d] ^ self.tables.gridfull
            num = np.bitwise_count(self.tables.np_uq[None, :] & not_r[:, None]).astype(
                np.int64
            )
            alive = (self.tables.np_masks[None, :] & self.np_retired[d][:, None]) == 0
            qual = alive & (num * self.eps_den <= self.thr[None, :])
            key = np.where(qual, num * self.tables.np_mult[None, :], _BIG)
            pos = np.argmin(key, axis=1)
            self.best_key[d] = key[np.arange(len(d)), pos]
            self.best_pos[d] = pos
            return
        t = self.tables
        twoeps = Fraction(2 * self.eps_num, self.eps_den)
        for g in gens:
            retired = self.state.retired[g]
            not_r = ~self.state.rmask[g] & t.gridfull
            best: Fraction | None = None
            best_p = 0
            for p, mask in enumerate(t.masks):
                if mask & retired:
                    continue
                s = Fraction((t.py_uq[p] & not_r).bit_count(), t.py_den[p])
                if s <= twoeps and (best is None or s < best):
                    best, best_p = s, p
            self.best_score[g] = best
            self.best_pos_py[g] = best_p

    def _select(self) -> tuple[int, int] | None:
        """(generator, table position) of the lowest-scoring qualifier."""
        if self.fast:
            g = int(np.argmin(self.best_key))
            if self.best_key[g] == _BIG:
                return None
            return g, int(self.best_pos[g])
        found: tuple[Fraction, int, int] | None = None
        for g, s in enumerate(self.best_score):
            if s is not None and (found is None or s < found[0]):
                found = (s, g, self.best_pos_py[g])
        if found is None:
            return None
        return found[1], found[2]

    # -- main loop --

    def run(self) -> SsfindResult:
        st = self.state
        t = self.tables
        max_iter = (
            self.config.max_iterations
            if self.config.max_iterations is not None
            else self.code.num_qubits
        )
        rescored_log: list[tuple[int, ...]] | None = (
            [] if self.config.record_rescored else None
        )
        iterations = 0
        while True:
            if self.dirty:
                batch = sorted(self.dirty)
                if rescored_log is not None:
                    rescored_log.append(tuple(batch))
                self._rescore(batch)
                self.dirty.clear()
            picked = self._select()
            if picked is None:
                break
            if iterations >= max_iter:
                raise SsfindIterationError(
                    f"iteration cap {max_iter} reached with qualifying candidates "
                    "remaining (every iteration should add at least one qubit)",
                    tuple(st.trace),
                )
            g, p = picked
            mask = t.masks[p]
            num = (t.py_uq[p] & ~st.rmask[g] & t.gridfull).bit_count()
            qubits = self.maps.qubits_of_mask(g, mask)
            st.envelope_set.update(qubits)
            for q in qubits:
                self._retire(q)
            grid = self.maps.checks_of_grid(g)
            cov = t.py_cov[p]
            while cov:
                low = cov & -cov
                chk = grid[low.bit_length() - 1]
                cov ^= low
                if chk not in st.suspicious_set:
                    st.suspicious_set.add(chk)
                    self._mark_suspicious_cells(chk)
            iterations += 1
            st.trace.append(
                TraceEntry(
                    iteration=iterations,
                    generator=g,
                    mask=mask,
                    score_num=num,
                    score_den=t.py_den[p],
                    envelope_size=len(st.envelope_set),
                    suspicious_size=len(st.suspicious_set),
                )
            )
        if self.config.verify_exit:
            self._verify_exit()
        return SsfindResult(
            envelope=QubitSet.from_indices(self.code, sorted(st.envelope_set)),
            suspicious=CheckSet.from_indices(self.code, sorted(st.suspicious_set)),
            trace=tuple(st.trace),
            iterations=iterations,
            mode=self.mode,
            state=st,
            rescored=tuple(rescored_log) if rescored_log is not None else None,
        )

    def _verify_exit(self) -> None:
        """From-scratch exit audit: rebuild suspicious cells from R and confirm
        no alive candidate qualifies.  Unseeded generators (lazy mode) are
        untouched and cannot qualify by the mode precondition."""
        st = self.state
        t = self.tables
        twoeps = Fraction(2 * self.eps_num, self.eps_den)
        if self.mode == "lazy" and not twoeps < t.min_untouched:
            raise AssertionError("lazy mode ran although untouched sets qualify")
        for g in range(self.code.num_gens):
            if not st.seeded[g]:
                continue
            rebuilt = 0
            for cell, chk in enumerate(self.maps.checks_of_grid(g)):
                if chk in st.suspicious_set:
                    rebuilt |= 1 << cell
            if rebuilt != st.rmask[g]:
                raise AssertionError(
                    f"incremental suspicious-cell mask diverged for generator {g}"
                )
            retired = st.retired[g]
            not_r = ~rebuilt & t.gridfull
            for p, mask in enumerate(t.masks):
                if mask & retired:
                    continue
                s = Fraction((t.py_uq[p] & not_r).bit_count(), t.py_den[p])
                if s <= twoeps:
                    raise AssertionError(
                        f"candidate (generator {g}, mask {mask:#x}) still "
                        f"qualifies at exit with score {s}"
                    )


def ssfind(code: HgpCode, sigma: CheckSet, config: DecoderConfig) -> SsfindResult:
    """Run the envelope finder on a syndrome; deterministic for fixed inputs."""
    return _Engine(code, sigma, config).run()
