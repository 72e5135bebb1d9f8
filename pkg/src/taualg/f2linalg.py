"""Exact linear algebra over GF(2) with int-bitset rows.

Rows are Python ints, bit i = entry in column i.  Values are treated as
immutable by callers; all operations return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple


class DimensionMismatch(ValueError):
    """Raised when operand shapes are incompatible (a usage error)."""


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_entries(cls, entries) -> "F2Vector":
        bits = 0
        entries = list(entries)
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def entries(self) -> List[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: Tuple[int, ...]  # one int per row

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        mask = (1 << self.cols) - 1
        for r in self.data:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits beyond column count")

    @classmethod
    def from_rows(cls, rows, cols: Optional[int] = None) -> "F2Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
            bits = 0
            for i, e in enumerate(r):
                if e & 1:
                    bits |= 1 << i
            data.append(bits)
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_bitrows(cls, bitrows, cols: int) -> "F2Matrix":
        return cls(len(list(bitrows)), cols, tuple(bitrows))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.data[i])

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def mul_vec(self, v: F2Vector) -> F2Vector:
        if v.length != self.cols:
            raise DimensionMismatch(
                f"matrix has {self.cols} cols, vector length {v.length}")
        bits = 0
        for i, r in enumerate(self.data):
            if bin(r & v.bits).count("1") & 1:
                bits |= 1 << i
        return F2Vector(self.rows, bits)

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return F2Matrix(self.cols, self.rows, tuple(out))

    def matmul(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions disagree")
        out = []
        for r in self.data:
            acc = 0
            rr = r
            while rr:
                k = (rr & -rr).bit_length() - 1
                acc ^= other.data[k]
                rr &= rr - 1
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))


def rref(m: F2Matrix) -> Tuple[F2Matrix, List[int], F2Matrix]:
    """Reduced row-echelon form over GF(2).

    Returns (R, pivots, T) with R = T*M, T invertible, pivots strictly
    increasing.
    """
    work = list(m.data)
    trans = [1 << i for i in range(m.rows)]  # tracks row ops on identity
    pivots: List[int] = []
    pr = 0
    for col in range(m.cols):
        sel = -1
        for i in range(pr, m.rows):
            if (work[i] >> col) & 1:
                sel = i
                break
        if sel < 0:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        trans[pr], trans[sel] = trans[sel], trans[pr]
        for i in range(m.rows):
            if i != pr and (work[i] >> col) & 1:
                work[i] ^= work[pr]
                trans[i] ^= trans[pr]
        pivots.append(col)
        pr += 1
        if pr == m.rows:
            break
    return (F2Matrix(m.rows, m.cols, tuple(work)), pivots,
            F2Matrix(m.rows, m.rows, tuple(trans)))


def rank(m: F2Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: F2Matrix) -> List[F2Vector]:
    """Basis of {v : M v = 0}; len = cols - rank."""
    r, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        bits = 1 << fc
        for i, pc in enumerate(pivots):
            if (r.data[i] >> fc) & 1:
                bits |= 1 << pc
        basis.append(F2Vector(m.cols, bits))
    return basis


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """One solution of M x = b, or None when b is not in the column space.

    A length mismatch raises DimensionMismatch (distinct from no-solution).
    """
    if b.length != m.rows:
        raise DimensionMismatch(
            f"matrix has {m.rows} rows, rhs length {b.length}")
    r, pivots, t = rref(m)
    tb = t.mul_vec(b)
    x = 0
    for i, pc in enumerate(pivots):
        if (tb.bits >> i) & 1:
            x |= 1 << pc
    for i in range(len(pivots), m.rows):
        if (tb.bits >> i) & 1:
            return None
    return F2Vector(m.cols, x)


class BitSpan:
    """Incremental row space of int-bitset vectors; supports membership
    and insertion in one reduction pass."""

    def __init__(self):
        self.pivot_rows = {}  # pivot bit index -> reduced row

    def reduce(self, bits: int) -> int:
        while bits:
            p = bits.bit_length() - 1
            row = self.pivot_rows.get(p)
            if row is None:
                return bits
            bits ^= row
        return 0

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    def add(self, bits: int) -> bool:
        """Insert; True when the vector enlarged the span."""
        red = self.reduce(bits)
        if red == 0:
            return False
        self.pivot_rows[red.bit_length() - 1] = red
        return True

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)
