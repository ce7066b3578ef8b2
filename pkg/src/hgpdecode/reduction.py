"""Reduced error representatives and the per-generator candidate catalog.

A generator's support is a fixed-size local view: delta_c VV qubits (one per
base neighbor of its right vertex) plus delta_v CC qubits (one per neighbor of
its left vertex).  Subsets of one view are packed into (delta_v + delta_c)-bit
masks — low bits the VV part in base-adjacency order, high bits the CC part —
so the catalog of locally reduced sets depends only on the degree pair and is
shared across all generators and all codes with those degrees.

Toggling a generator's support never changes the syndrome; exact reduction is
a brute-force search over all togglings (tiny codes only), greedy reduction
the scalable fixpoint stand-in used to prepare trial errors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

from .hgp import HgpCode, QubitSet, supp_generator

__all__ = [
    "Candidate",
    "ReductionConfigError",
    "part_sizes",
    "is_locally_reduced",
    "locally_reduced_masks",
    "enumerate_minsets",
    "mask_to_qubitset",
    "reduce_error",
]


class ReductionConfigError(ValueError):
    """Local view too wide to enumerate (memory guard)."""


def part_sizes(mask: int, delta_c: int) -> tuple[int, int]:
    """(VV count, CC count) of a local-view mask."""
    return (mask & ((1 << delta_c) - 1)).bit_count(), (mask >> delta_c).bit_count()


@dataclass(frozen=True)
class Candidate:
    """A nonempty locally reduced subset of one generator's support."""

    generator: int
    mask: int
    a_v: int
    a_c: int

    def __post_init__(self):
        if self.mask <= 0:
            raise ValueError("candidate mask must be a nonempty subset")

    @classmethod
    def build(cls, code: HgpCode, generator: int, mask: int) -> Candidate:
        code.gen_coords(generator)
        if not is_locally_reduced(code, generator, mask):
            raise ValueError(f"mask {mask:#x} is not locally reduced")
        a_v, a_c = part_sizes(mask, code.delta_c)
        return cls(generator, mask, a_v, a_c)


def is_locally_reduced(code: HgpCode, generator: int, mask: int) -> bool:
    """True iff the subset keeps at most half the local view, ties included."""
    code.gen_coords(generator)
    width = code.delta_v + code.delta_c
    if not 0 <= mask < (1 << width):
        raise ValueError(f"mask {mask:#x} does not fit a {width}-bit local view")
    a_v, a_c = part_sizes(mask, code.delta_c)
    return 2 * (a_v + a_c) <= width


@functools.lru_cache(maxsize=None)
def locally_reduced_masks(delta_v: int, delta_c: int) -> tuple[int, ...]:
    """All nonempty locally reduced masks for one degree pair, ascending."""
    width = delta_v + delta_c
    out = []
    for mask in range(1, 1 << width):
        a_v, a_c = part_sizes(mask, delta_c)
        if 2 * (a_v + a_c) <= width:
            out.append(mask)
    return tuple(out)


def enumerate_minsets(code: HgpCode, generator: int, cap: int = 20) -> Iterator[Candidate]:
    """Stream the candidate catalog for one generator, ascending mask order."""
    width = code.delta_v + code.delta_c
    if width > cap:
        raise ReductionConfigError(
            f"local view has {width} qubits, above the enumeration cap {cap}"
        )
    code.gen_coords(generator)
    for mask in locally_reduced_masks(code.delta_v, code.delta_c):
        a_v, a_c = part_sizes(mask, code.delta_c)
        yield Candidate(generator, mask, a_v, a_c)


def mask_to_qubitset(code: HgpCode, generator: int, mask: int) -> QubitSet:
    """Unpack a local-view mask into the qubits it selects."""
    c, v = code.gen_coords(generator)
    row = code.base.adj_c[c]
    col = code.base.adj_v[v]
    vv = [(row[i], v) for i in range(code.delta_c) if (mask >> i) & 1]
    cc = [(c, col[j]) for j in range(code.delta_v) if (mask >> (code.delta_c + j)) & 1]
    return QubitSet.of(vv, cc)


def _support_bits(code: HgpCode, generator: int) -> int:
    acc = 0
    for q in supp_generator(code, generator).to_indices(code):
        acc |= 1 << q
    return acc


def _bits_of(code: HgpCode, qubits: QubitSet) -> int:
    acc = 0
    for q in qubits.to_indices(code):
        acc |= 1 << q
    return acc


def _adjacent_generators(code: HgpCode, bits: int) -> list[int]:
    """Generators whose support meets the given qubit set (only these can
    strictly shrink it when toggled)."""
    gens: set[int] = set()
    q = bits
    while q:
        low = q & -q
        idx = low.bit_length() - 1
        kind, i, j = code.qubit_coords(idx)
        if kind == "VV":
            for c in code.base.adj_v[i]:
                gens.add(code.gen_index(c, j))
        else:
            for v in code.base.adj_c[j]:
                gens.add(code.gen_index(i, v))
        q ^= low
    return sorted(gens)


def _sorted_indices(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


def reduce_error(code: HgpCode, error: QubitSet, mode: str = "greedy") -> QubitSet:
    """A lower-weight coset representative of ``error`` modulo generator toggles.

    ``exact`` brute-forces all 2^|gens| togglings (ties broken by smallest
    lexicographic qubit-index sequence) and is restricted to tiny codes;
    ``greedy`` repeatedly applies the first strictly-improving toggle until no
    toggle improves, a local minimum reachable at any scale.
    """
    bits = _bits_of(code, error)
    if mode == "exact":
        if code.num_gens > 20:
            raise ValueError(
                f"exact reduction needs <= 20 generators, code has {code.num_gens}"
            )
        supports = [_support_bits(code, g) for g in range(code.num_gens)]
        best = bits
        best_key = (bits.bit_count(), _sorted_indices(bits))
        cur = bits
        for step in range(1, 1 << code.num_gens):
            # Gray-code walk: one toggle per step visits every combination.
            cur ^= supports[(step & -step).bit_length() - 1]
            w = cur.bit_count()
            if w <= best_key[0]:
                key = (w, _sorted_indices(cur))
                if key < best_key:
                    best, best_key = cur, key
        return QubitSet.from_indices(code, _sorted_indices(best))
    if mode != "greedy":
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    while True:
        for g in _adjacent_generators(code, bits):
            flipped = bits ^ _support_bits(code, g)
            if flipped.bit_count() < bits.bit_count():
                bits = flipped
                break
        else:
            return QubitSet.from_indices(code, _sorted_indices(bits))
