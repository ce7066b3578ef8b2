"""Completion stage of the decode: solve for a correction on the envelope.

Once the search stage has produced an envelope that is meant to cover the
actual error, what remains is plain linear algebra: find a correction inside
the envelope whose syndrome equals the observed one.  The system is tiny
compared to the code — only checks adjacent to the envelope (plus the flagged
checks themselves) can constrain the correction, so the solve touches at most
``(Δ_V + Δ_C)·|envelope| + |σ|`` rows.

Any solution is as good as the true error whenever the envelope stays below
the code distance: two solutions differ by a kernel element supported on the
envelope, and below distance such an element is a sum of generator supports.
On small codes this can be verified outright (``detect_ambiguity``) by
inspecting a kernel basis of the restricted system; at scale the check is
skipped and the canonical solution is returned as-is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, BitVector, RestrictedSolver
from .hgp import CheckSet, HgpCode, QubitSet, qnbhd, supp_check

__all__ = ["DecodeVerdict", "erase_decode_quantum", "verify_coset"]


@dataclass(frozen=True)
class DecodeVerdict:
    """Outcome of one envelope solve.

    ``status`` is one of ``"success"``, ``"no-solution"``,
    ``"ambiguous-logical"``.  ``coset_equivalent`` is filled only in test mode
    (when the true error was supplied), else None.  ``rows_touched`` counts the
    parity-check rows the solve actually looked at.
    """

    correction: QubitSet
    status: str
    coset_equivalent: bool | None
    rows_touched: int


def verify_coset(code: HgpCode, correction: QubitSet, true_error: QubitSet) -> bool:
    """True iff the correction and the true error differ by a sum of
    generator supports — i.e. they act identically on the code space."""
    return code.generator_basis().contains(
        _qubit_bits(code, correction ^ true_error)
    )


def erase_decode_quantum(
    code: HgpCode,
    sigma: CheckSet,
    envelope: QubitSet,
    *,
    detect_ambiguity: bool = False,
    true_error: QubitSet | None = None,
) -> DecodeVerdict:
    """Solve for a correction supported on ``envelope`` with syndrome ``sigma``.

    Rows are restricted to checks adjacent to the envelope plus every flagged
    check: a check outside that set reads 0 == 0 for any supported correction,
    so dropping it loses nothing, while a flagged check with no envelope
    neighbour keeps its (unsatisfiable) row and forces ``"no-solution"``.
    Columns are the envelope's qubit indices in ascending order, which puts
    the whole vertex-vertex block before the check-check block and pins down
    which solution the canonical solve returns.

    ``detect_ambiguity`` additionally inspects a kernel basis of the
    restricted system and downgrades the status to ``"ambiguous-logical"``
    when solutions from distinct stabilizer cosets exist.  Meant for small
    codes; it triangulates the full generator matrix on first use.

    Factorizations are cached on the code, keyed by the (rows, columns) pair,
    so repeated solves against the same envelope shape only pay for
    back-substitution.
    """
    cols = tuple(envelope.to_indices(code))
    sigma_rows = set(sigma.to_indices(code))
    rows = tuple(sorted(set(qnbhd(code, envelope).to_indices(code)) | sigma_rows))
    solver = _restricted_solver(code, rows, cols)

    b_bits = 0
    for p, x in enumerate(rows):
        if x in sigma_rows:
            b_bits |= 1 << p
    solution = solver.solve(BitVector(len(rows), b_bits))
    if solution is None:
        return DecodeVerdict(QubitSet.of(), "no-solution", None, len(rows))

    correction = QubitSet.from_indices(code, (cols[p] for p in solution.support()))
    status = "success"
    if detect_ambiguity:
        basis = code.generator_basis()
        for k in solver.kernel_basis():
            k_bits = 0
            for p in k.support():
                k_bits |= 1 << cols[p]
            if not basis.contains(k_bits):
                status = "ambiguous-logical"
                break
    equivalent = None
    if true_error is not None:
        equivalent = verify_coset(code, correction, true_error)
    return DecodeVerdict(correction, status, equivalent, len(rows))


def _qubit_bits(code: HgpCode, qubits: QubitSet) -> int:
    bits = 0
    for q in qubits.to_indices(code):
        bits |= 1 << q
    return bits


def _restricted_solver(
    code: HgpCode, rows: tuple[int, ...], cols: tuple[int, ...]
) -> RestrictedSolver:
    cache = getattr(code, "_erasure_solvers", None)
    if cache is None:
        cache = {}
        code._erasure_solvers = cache
    solver = cache.get((rows, cols))
    if solver is None:
        col_pos = {q: p for p, q in enumerate(cols)}
        supports = (
            [
                col_pos[q]
                for q in supp_check(code, x).to_indices(code)
                if q in col_pos
            ]
            for x in rows
        )
        sub = BitMatrix.from_row_supports(len(rows), len(cols), supports)
        solver = RestrictedSolver(sub, range(len(cols)))
        cache[(rows, cols)] = solver
    return solver
