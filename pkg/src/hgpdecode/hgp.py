"""Product quantum codes built from two copies of one bipartite base graph.

Qubits live on (left x left) ∪ (right x right) vertex pairs, X-type parity
checks on (left x right), stabilizer generators on (right x left).  With a
(delta_v, delta_c)-biregular base graph every generator and check touches
exactly delta_v + delta_c qubits, and a generator meets a check in 0 or 2
qubits — the orthogonality that makes the pair a CSS code.

Adjacency is computed on demand from the base graph; nothing of size N² is
materialized (N = n² + m² can reach 18,000+ here while every neighborhood has
constant size).  Norms and all threshold comparisons downstream are exact
rationals, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gf2 import BitMatrix, RowBasis, rank
from .graphs import BipartiteGraph

__all__ = [
    "HgpCode",
    "QubitSet",
    "CheckSet",
    "QubitParseError",
    "build_hgp",
    "supp_generator",
    "supp_check",
    "qnbhd",
    "qnbhd_unique",
    "project",
    "weighted_norm",
    "syndrome",
    "dual",
    "qubitset_to_text",
    "qubitset_from_text",
]


@dataclass(frozen=True)
class QubitSet:
    """A set of qubits, split into its vertex-vertex and check-check parts.

    ``vv_part`` holds pairs over (left x left) base vertices, ``cc_part`` pairs
    over (right x right); the two blocks are disjoint by construction.
    """

    vv_part: frozenset[tuple[int, int]] = frozenset()
    cc_part: frozenset[tuple[int, int]] = frozenset()

    @classmethod
    def of(cls, vv=(), cc=()) -> QubitSet:
        return cls(frozenset(vv), frozenset(cc))

    @property
    def weight(self) -> int:
        return len(self.vv_part) + len(self.cc_part)

    def __or__(self, other: QubitSet) -> QubitSet:
        return QubitSet(self.vv_part | other.vv_part, self.cc_part | other.cc_part)

    def __xor__(self, other: QubitSet) -> QubitSet:
        return QubitSet(self.vv_part ^ other.vv_part, self.cc_part ^ other.cc_part)

    def __and__(self, other: QubitSet) -> QubitSet:
        return QubitSet(self.vv_part & other.vv_part, self.cc_part & other.cc_part)

    def __le__(self, other: QubitSet) -> bool:
        return self.vv_part <= other.vv_part and self.cc_part <= other.cc_part

    def isdisjoint(self, other: QubitSet) -> bool:
        return self.vv_part.isdisjoint(other.vv_part) and self.cc_part.isdisjoint(other.cc_part)

    def to_indices(self, code: HgpCode) -> list[int]:
        out = [code.vv_index(i, j) for i, j in self.vv_part]
        out += [code.cc_index(i, j) for i, j in self.cc_part]
        return sorted(out)

    @classmethod
    def from_indices(cls, code: HgpCode, indices) -> QubitSet:
        vv, cc = [], []
        for q in indices:
            kind, i, j = code.qubit_coords(q)
            (vv if kind == "VV" else cc).append((i, j))
        return cls.of(vv, cc)


@dataclass(frozen=True)
class CheckSet:
    """A set of X-type parity checks, as (left, right) base-vertex pairs."""

    members: frozenset[tuple[int, int]] = frozenset()

    @classmethod
    def of(cls, members) -> CheckSet:
        return cls(frozenset(members))

    def __or__(self, other: CheckSet) -> CheckSet:
        return CheckSet(self.members | other.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members

    def to_indices(self, code: HgpCode) -> list[int]:
        return sorted(code.check_index(i, j) for i, j in self.members)

    @classmethod
    def from_indices(cls, code: HgpCode, indices) -> CheckSet:
        return cls.of(code.check_coords(x) for x in indices)


class HgpCode:
    """Product code over a base graph; immutable after construction.

    Derived quantities that need linear algebra (logical count ``k``, the tiny
    brute-force distance hint) are computed lazily and cached; everything else
    is O(1) index arithmetic plus base-graph lookups.
    """

    def __init__(self, base: BipartiteGraph):
        self.base = base
        self.n = base.n
        self.m = base.m
        self.delta_v = base.delta_v
        self.delta_c = base.delta_c
        self.num_qubits = base.n * base.n + base.m * base.m
        self.num_checks = base.n * base.m
        self.num_gens = base.m * base.n
        self._k: int | None = None
        self._hint: int | None = None
        self._hint_done = False
        self._x_matrix: BitMatrix | None = None
        self._gen_matrix: BitMatrix | None = None
        self._gen_basis: RowBasis | None = None

    def __eq__(self, other) -> bool:
        return isinstance(other, HgpCode) and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.base)

    # --- index arithmetic (VV block row-major, CC block offset by n²) ---

    def vv_index(self, left1: int, left2: int) -> int:
        if not (0 <= left1 < self.n and 0 <= left2 < self.n):
            raise IndexError(f"VV qubit ({left1}, {left2}) out of range")
        return left1 * self.n + left2

    def cc_index(self, right1: int, right2: int) -> int:
        if not (0 <= right1 < self.m and 0 <= right2 < self.m):
            raise IndexError(f"CC qubit ({right1}, {right2}) out of range")
        return self.n * self.n + right1 * self.m + right2

    def qubit_coords(self, q: int) -> tuple[str, int, int]:
        nn = self.n * self.n
        if 0 <= q < nn:
            return "VV", q // self.n, q % self.n
        if nn <= q < self.num_qubits:
            r = q - nn
            return "CC", r // self.m, r % self.m
        raise IndexError(f"qubit index {q} out of range [0, {self.num_qubits})")

    def check_index(self, left: int, right: int) -> int:
        if not (0 <= left < self.n and 0 <= right < self.m):
            raise IndexError(f"check ({left}, {right}) out of range")
        return left * self.m + right

    def check_coords(self, x: int) -> tuple[int, int]:
        if not 0 <= x < self.num_checks:
            raise IndexError(f"check index {x} out of range [0, {self.num_checks})")
        return x // self.m, x % self.m

    def gen_index(self, right: int, left: int) -> int:
        if not (0 <= right < self.m and 0 <= left < self.n):
            raise IndexError(f"generator ({right}, {left}) out of range")
        return right * self.n + left

    def gen_coords(self, g: int) -> tuple[int, int]:
        if not 0 <= g < self.num_gens:
            raise IndexError(f"generator index {g} out of range [0, {self.num_gens})")
        return g // self.n, g % self.n

    # --- derived matrices and parameters ---

    def x_check_matrix(self) -> BitMatrix:
        """Checks-by-qubits parity matrix (built once, cached)."""
        if self._x_matrix is None:
            supports = (
                supp_check(self, x).to_indices(self) for x in range(self.num_checks)
            )
            self._x_matrix = BitMatrix.from_row_supports(
                self.num_checks, self.num_qubits, supports
            )
        return self._x_matrix

    def generator_matrix(self) -> BitMatrix:
        """Generators-by-qubits support matrix; its row space is the stabilizer span."""
        if self._gen_matrix is None:
            supports = (
                supp_generator(self, g).to_indices(self) for g in range(self.num_gens)
            )
            self._gen_matrix = BitMatrix.from_row_supports(
                self.num_gens, self.num_qubits, supports
            )
        return self._gen_matrix

    def generator_basis(self) -> RowBasis:
        if self._gen_basis is None:
            self._gen_basis = RowBasis(self.generator_matrix())
        return self._gen_basis

    @property
    def k(self) -> int:
        """Logical qubit count: N minus the ranks of the two parity matrices."""
        if self._k is None:
            self._k = (
                self.num_qubits
                - rank(self.x_check_matrix())
                - rank(self.generator_matrix())
            )
        return self._k

    @property
    def design_distance_hint(self) -> int | None:
        """Minimum over the two base classical codes' distances, by brute force.

        Only computed for n <= 16 (cost 2^n); None otherwise, and None when
        neither base code has a nonzero codeword.
        """
        if not self._hint_done:
            self._hint_done = True
            if self.n <= 16:
                d1 = _min_kernel_weight(self.base.adj_c, self.n)
                d2 = _min_kernel_weight(self.base.adj_v, self.m)
                candidates = [d for d in (d1, d2) if d is not None]
                self._hint = min(candidates) if candidates else None
        return self._hint


def _min_kernel_weight(check_rows, width: int) -> int | None:
    """Minimum Hamming weight of a nonzero kernel vector, by 2^width enumeration."""
    if width > 20:
        raise ValueError("kernel enumeration is only for tiny instances")
    masks = []
    for nbrs in check_rows:
        acc = 0
        for v in nbrs:
            acc |= 1 << v
        masks.append(acc)
    best = None
    for w in range(1, 1 << width):
        if all(((mask & w).bit_count() & 1) == 0 for mask in masks):
            wt = w.bit_count()
            if best is None or wt < best:
                best = wt
    return best


def build_hgp(graph: BipartiteGraph) -> HgpCode:
    """Take the product of ``graph`` with itself."""
    return HgpCode(graph)


def supp_generator(code: HgpCode, g: int) -> QubitSet:
    """Support of a generator: a column of VV qubits plus a row of CC qubits."""
    c, v = code.gen_coords(g)
    vv = [(nu, v) for nu in code.base.adj_c[c]]
    cc = [(c, zeta) for zeta in code.base.adj_v[v]]
    return QubitSet.of(vv, cc)


def supp_check(code: HgpCode, x: int) -> QubitSet:
    """Support of an X check: a row of VV qubits plus a column of CC qubits."""
    nu, zeta = code.check_coords(x)
    vv = [(nu, v) for v in code.base.adj_c[zeta]]
    cc = [(c, zeta) for c in code.base.adj_v[nu]]
    return QubitSet.of(vv, cc)


def _incidences(code: HgpCode, qubits: QubitSet) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for nu, v in qubits.vv_part:
        if not (0 <= nu < code.n and 0 <= v < code.n):
            raise IndexError(f"VV qubit ({nu}, {v}) out of range")
        for zeta in code.base.adj_v[v]:
            key = (nu, zeta)
            counts[key] = counts.get(key, 0) + 1
    for c, zeta in qubits.cc_part:
        if not (0 <= c < code.m and 0 <= zeta < code.m):
            raise IndexError(f"CC qubit ({c}, {zeta}) out of range")
        for nu in code.base.adj_c[c]:
            key = (nu, zeta)
            counts[key] = counts.get(key, 0) + 1
    return counts


def qnbhd(code: HgpCode, qubits: QubitSet) -> CheckSet:
    """All checks incident to the set."""
    return CheckSet.of(_incidences(code, qubits).keys())


def qnbhd_unique(code: HgpCode, qubits: QubitSet) -> CheckSet:
    """Checks with exactly one incidence into the set."""
    return CheckSet.of(k for k, cnt in _incidences(code, qubits).items() if cnt == 1)


def syndrome(code: HgpCode, error: QubitSet) -> CheckSet:
    """Checks with an odd number of incidences into the error."""
    return CheckSet.of(k for k, cnt in _incidences(code, error).items() if cnt & 1)


def project(qubits: QubitSet, axis: str, index: int | None = None) -> set[int]:
    """Coordinate projections of a qubit set onto the base graph.

    With ``index`` unset, the aggregate projection: every first (or second)
    coordinate appearing in the relevant block.  With ``index`` set, the slice:
    partners of that fixed first (or second) coordinate.
    """
    if axis == "V1":
        pairs, pos = qubits.vv_part, 0
    elif axis == "V2":
        pairs, pos = qubits.vv_part, 1
    elif axis == "C1":
        pairs, pos = qubits.cc_part, 0
    elif axis == "C2":
        pairs, pos = qubits.cc_part, 1
    else:
        raise ValueError(f"axis must be one of V1, V2, C1, C2; got {axis!r}")
    if index is None:
        return {p[pos] for p in pairs}
    return {p[1 - pos] for p in pairs if p[pos] == index}


def weighted_norm(code: HgpCode, qubits: QubitSet) -> Fraction:
    """|VV part| / delta_c + |CC part| / delta_v, exactly."""
    return Fraction(len(qubits.vv_part), code.delta_c) + Fraction(
        len(qubits.cc_part), code.delta_v
    )


def dual(code: HgpCode) -> HgpCode:
    """The same product with bit/check roles of the base graph exchanged.

    Decoding X errors on the original code is decoding Z errors here."""
    g = code.base
    swapped = BipartiteGraph(g.m, g.n, g.delta_c, g.delta_v, g.adj_c, g.adj_v)
    return HgpCode(swapped)


# --- qubit-set file format: one qubit per line, "VV i j" or "CC i j" ---

class QubitParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def qubitset_to_text(qubits: QubitSet) -> str:
    lines = [f"VV {i} {j}" for i, j in sorted(qubits.vv_part)]
    lines += [f"CC {i} {j}" for i, j in sorted(qubits.cc_part)]
    return "\n".join(lines) + ("\n" if lines else "")


def qubitset_from_text(text: str, code: HgpCode | None = None) -> QubitSet:
    vv, cc = [], []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("VV", "CC"):
            raise QubitParseError(line_no, f"expected 'VV i j' or 'CC i j', got {raw!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise QubitParseError(line_no, f"coordinates must be integers in {raw!r}") from None
        if code is not None:
            limit = code.n if parts[0] == "VV" else code.m
            if not (0 <= i < limit and 0 <= j < limit):
                raise QubitParseError(line_no, f"qubit ({i}, {j}) out of range for this code")
        (vv if parts[0] == "VV" else cc).append((i, j))
    return QubitSet.of(vv, cc)
