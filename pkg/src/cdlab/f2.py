"""Dense linear algebra over GF(2).

Rows are packed into Python integers (bit ``j`` of row ``i`` is entry
``(i, j)``), so adding two rows is a single XOR regardless of width.
Bit-vectors passed to and returned from this module use the same
convention: an ``int`` whose bit ``j`` is coordinate ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def bits_to_int(bits: Iterable[int]) -> int:
    """Pack a 0/1 sequence into an int, coordinate 0 in the lowest bit."""
    value = 0
    for j, bit in enumerate(bits):
        if bit & 1:
            value |= 1 << j
    return value


def int_to_bits(value: int, length: int) -> list[int]:
    return [(value >> j) & 1 for j in range(length)]


def popcount(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2) with bit-packed rows."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} packed rows, got {len(self.data)}")
        mask = (1 << self.cols) - 1
        for r in self.data:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged row list")
        return cls(len(rows), cols, tuple(bits_to_int(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        """Build a matrix whose column ``j`` is the packed bit-vector ``columns[j]``."""
        data = []
        for i in range(rows):
            row = 0
            for j, col in enumerate(columns):
                if (col >> i) & 1:
                    row |= 1 << j
            data.append(row)
        return cls(rows, len(columns), tuple(data))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [int_to_bits(r, self.cols) for r in self.data]

    def column(self, j: int) -> int:
        return bits_to_int((r >> j) & 1 for r in self.data)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def matvec(self, x: int) -> int:
        """``m . x`` as a packed bit-vector of length ``rows``."""
        out = 0
        for i, r in enumerate(self.data):
            if popcount(r & x) & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_of_other = [other.column(j) for j in range(other.cols)]
        data = []
        for r in self.data:
            row = 0
            for j, c in enumerate(cols_of_other):
                if popcount(r & c) & 1:
                    row |= 1 << j
            data.append(row)
        return BitMatrix(self.rows, other.cols, tuple(data))

    def is_zero(self) -> bool:
        return not any(self.data)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BitMatrix":
        """Row ``i`` of the result is row ``row_perm[i]``; same for columns."""
        data = []
        for i in row_perm:
            src = self.data[i]
            row = 0
            for new_j, old_j in enumerate(col_perm):
                if (src >> old_j) & 1:
                    row |= 1 << new_j
            data.append(row)
        return BitMatrix(self.rows, self.cols, tuple(data))


def _reduce(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns).

    Pivots are taken left to right, the pivot row being the first remaining
    row with a one in that column.
    """
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        found = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= pivot_row
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: BitMatrix) -> int:
    _, pivots = _reduce(list(m.data), m.cols)
    return len(pivots)


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    rows, pivots = _reduce(list(m.data), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row_index, p in enumerate(pivots):
            if (rows[row_index] >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def solve(m: BitMatrix, b: int, length: Optional[int] = None) -> Optional[int]:
    """Return some ``x`` with ``m x = b``, or ``None`` if ``b`` is outside the column span.

    ``length`` is the declared length of ``b``; when given it must equal
    ``m.rows``. A ``b`` with bits beyond ``m.rows`` is always rejected.
    """
    if length is not None and length != m.rows:
        raise ValueError(f"right-hand side has length {length}, matrix has {m.rows} rows")
    if b < 0 or b >> m.rows:
        raise ValueError("right-hand side has bits beyond the row count")
    aug_bit = 1 << m.cols
    aug = [row | (aug_bit if (b >> i) & 1 else 0) for i, row in enumerate(m.data)]
    rows, pivots = _reduce(aug, m.cols)
    for row in rows[len(pivots):]:
        if row & aug_bit:
            return None
    x = 0
    for row_index, p in enumerate(pivots):
        if rows[row_index] & aug_bit:
            x |= 1 << p
    return x


def span_rank(vectors: Iterable[int]) -> int:
    """Rank of a family of packed vectors (as rows)."""
    vs = list(vectors)
    width = max((v.bit_length() for v in vs), default=0)
    _, pivots = _reduce(vs, width)
    return len(pivots)
