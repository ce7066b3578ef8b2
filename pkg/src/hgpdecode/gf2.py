"""Dense GF(2) linear algebra on bit-packed rows.

Rows live in Python integers used as bit sets (bit ``j`` = column ``j``), so a
row elimination step is a single big-int XOR.  That keeps Gaussian elimination
cache-linear and fast enough for the matrices this package meets (up to a few
thousand rows and ~20,000 columns); nothing here attempts sparse or
asymptotically fast algebra.

Solutions of underdetermined systems are canonical: the reduced row echelon
form is unique, pivots sit on the lowest-index columns, and free variables are
set to 0, so decoder outputs are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "BitVector",
    "BitMatrix",
    "Gf2DimensionError",
    "RowBasis",
    "RestrictedSolver",
    "rank",
    "solve_restricted",
    "in_rowspace",
]


class Gf2DimensionError(ValueError):
    """Raised when operand dimensions do not match, or an index is out of range."""


def _parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    """A length-checked GF(2) vector; ``bits`` holds bit ``j`` for coordinate ``j``."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise Gf2DimensionError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise Gf2DimensionError("bits outside the declared length")

    @classmethod
    def from_support(cls, length: int, support) -> BitVector:
        bits = 0
        for j in support:
            if not 0 <= j < length:
                raise Gf2DimensionError(f"coordinate {j} out of range [0, {length})")
            bits |= 1 << j
        return cls(length, bits)

    @classmethod
    def from_dense(cls, values) -> BitVector:
        values = list(values)
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    def get(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise Gf2DimensionError(f"coordinate {j} out of range [0, {self.length})")
        return (self.bits >> j) & 1

    def support(self) -> list[int]:
        out, bits = [], self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise Gf2DimensionError("length mismatch in xor")
        return BitVector(self.length, self.bits ^ other.bits)


class BitMatrix:
    """Row-major packed GF(2) matrix: ``row_bits[i]`` holds row ``i`` as an int."""

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: list[int] | None = None):
        if rows < 0 or cols < 0:
            raise Gf2DimensionError("negative dimension")
        if row_bits is None:
            row_bits = [0] * rows
        if len(row_bits) != rows:
            raise Gf2DimensionError("row count does not match row_bits")
        for r in row_bits:
            if r < 0 or r >> cols:
                raise Gf2DimensionError("row bits outside the declared column count")
        self.rows = rows
        self.cols = cols
        self.row_bits = list(row_bits)

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        dense = [list(row) for row in dense]
        cols = len(dense[0]) if dense else 0
        bits = []
        for row in dense:
            if len(row) != cols:
                raise Gf2DimensionError("ragged rows")
            acc = 0
            for j, v in enumerate(row):
                if v & 1:
                    acc |= 1 << j
            bits.append(acc)
        return cls(len(dense), cols, bits)

    @classmethod
    def from_row_supports(cls, rows: int, cols: int, supports) -> BitMatrix:
        bits = []
        for support in supports:
            acc = 0
            for j in support:
                if not 0 <= j < cols:
                    raise Gf2DimensionError(f"column {j} out of range [0, {cols})")
                acc |= 1 << j
            bits.append(acc)
        if len(bits) != rows:
            raise Gf2DimensionError("row count does not match supports")
        return cls(rows, cols, bits)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise Gf2DimensionError(f"index ({i}, {j}) out of range")
        return (self.row_bits[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        if not 0 <= i < self.rows:
            raise Gf2DimensionError(f"row {i} out of range")
        return BitVector(self.cols, self.row_bits[i])

    def transpose(self) -> BitMatrix:
        out = [0] * self.cols
        for i, bits in enumerate(self.row_bits):
            while bits:
                low = bits & -bits
                out[low.bit_length() - 1] |= 1 << i
                bits ^= low
        return BitMatrix(self.cols, self.rows, out)

    def mul_vector(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise Gf2DimensionError("vector length does not match column count")
        acc = 0
        for i, bits in enumerate(self.row_bits):
            if _parity(bits & v.bits):
                acc |= 1 << i
        return BitVector(self.rows, acc)


class RowBasis:
    """Incremental row-echelon basis over GF(2), keyed by lowest-bit pivots.

    Supports rank queries and repeated span-membership tests without
    re-eliminating the source matrix each time.
    """

    def __init__(self, matrix: BitMatrix | None = None):
        self._pivots: dict[int, int] = {}
        if matrix is not None:
            for bits in matrix.row_bits:
                self.add(bits)

    def add(self, bits: int) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        while bits:
            low = (bits & -bits).bit_length() - 1
            piv = self._pivots.get(low)
            if piv is None:
                self._pivots[low] = bits
                return True
            bits ^= piv
        return False

    def reduce(self, bits: int) -> int:
        """Return the residual of ``bits`` after cancelling every pivot it meets."""
        while bits:
            low = (bits & -bits).bit_length() - 1
            piv = self._pivots.get(low)
            if piv is None:
                return bits
            bits ^= piv
        return 0

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    @property
    def rank(self) -> int:
        return len(self._pivots)


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank; the caller's matrix is left untouched."""
    return RowBasis(matrix).rank


def in_rowspace(matrix: BitMatrix, v: BitVector) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``matrix``."""
    if v.length != matrix.cols:
        raise Gf2DimensionError("vector length does not match column count")
    return RowBasis(matrix).contains(v.bits)


class RestrictedSolver:
    """Factor ``A`` restricted to a fixed column support, then solve many ``A·x = b``.

    The factorization records, for every echelon row, which original rows were
    combined into it, so each later ``solve`` only has to fold a new right-hand
    side through those combinations: no re-elimination.  Free variables are 0
    and pivots take the lowest available column, so the returned solution is
    the canonical one (the unique-RREF solution).
    """

    def __init__(self, a: BitMatrix, support) -> None:
        support_mask = 0
        for j in support:
            if not 0 <= j < a.cols:
                raise Gf2DimensionError(f"support column {j} out of range [0, {a.cols})")
            support_mask |= 1 << j
        self.cols = a.cols
        self.rows = a.rows
        self.support_mask = support_mask
        # Echelon rows: pivot column -> (masked row bits, combination over input rows).
        self._pivots: dict[int, tuple[int, int]] = {}
        # Combinations that eliminated to zero: consistency constraints on b.
        self._null_combos: list[int] = []
        for i, raw in enumerate(a.row_bits):
            bits = raw & support_mask
            combo = 1 << i
            while bits:
                low = (bits & -bits).bit_length() - 1
                piv = self._pivots.get(low)
                if piv is None:
                    self._pivots[low] = (bits, combo)
                    break
                bits ^= piv[0]
                combo ^= piv[1]
            else:
                self._null_combos.append(combo)
        self._pivot_cols_desc = sorted(self._pivots, reverse=True)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, b: BitVector) -> BitVector | None:
        """Return the canonical solution of ``A·x = b`` with x supported on the
        factored columns, or None if the system is inconsistent."""
        if b.length != self.rows:
            raise Gf2DimensionError("right-hand side length does not match row count")
        bb = b.bits
        for combo in self._null_combos:
            if _parity(combo & bb):
                return None
        x = 0
        for col in self._pivot_cols_desc:
            bits, combo = self._pivots[col]
            val = _parity(combo & bb) ^ _parity((bits ^ (1 << col)) & x)
            if val:
                x |= 1 << col
        return BitVector(self.cols, x)

    def kernel_basis(self) -> list[BitVector]:
        """A basis of ``{x supported on the factored columns : A·x = 0}``.

        One vector per free column (that column set to 1, other frees 0),
        so the basis size is support size minus rank."""
        out = []
        frees = self.support_mask
        for col in self._pivots:
            frees &= ~(1 << col)
        while frees:
            low = frees & -frees
            frees ^= low
            x = low
            for col in self._pivot_cols_desc:
                bits, _ = self._pivots[col]
                if _parity((bits ^ (1 << col)) & x):
                    x |= 1 << col
            out.append(BitVector(self.cols, x))
        return out


def solve_restricted(a: BitMatrix, b: BitVector, support) -> BitVector | None:
    """Solve ``A·x = b`` with ``x`` zero outside ``support``; None if unsolvable.

    Deterministic: among all solutions, returns the one with free variables set
    to 0 after eliminating pivot columns in ascending column order.
    """
    if b.length != a.rows:
        raise Gf2DimensionError("right-hand side length does not match row count")
    return RestrictedSolver(a, support).solve(b)
