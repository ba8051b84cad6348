"""Exact integer matrices.

Everything here works on Python ints, so there is no magnitude bound. Matrices
are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .ntkit import int_valuation


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"empty shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        if not rows or not rows[0]:
            raise DimensionError("matrix needs at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, m: int) -> IntMatrix:
        return cls(m, m, tuple(int(i == j) for i in range(m) for j in range(m)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> IntMatrix:
        m = len(diag)
        return cls(m, m, tuple(diag[i] if i == j else 0 for i in range(m) for j in range(m)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diag(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)]
                                    for j in range(self.cols)])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> list[list[int]]:
        cols = list(cols)
        return [[self[i, j] for j in cols] for i in rows]

    def direct_sum(self, other: IntMatrix) -> IntMatrix:
        out = [[0] * (self.cols + other.cols) for _ in range(self.rows + other.rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                out[i][j] = self[i, j]
        for i in range(other.rows):
            for j in range(other.cols):
                out[self.rows + i][self.cols + j] = other[i, j]
        return IntMatrix.from_rows(out)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.entries[j::b.cols] for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        out.extend(sum(x * y for x, y in zip(r, c)) for c in bcols)
    return IntMatrix(a.rows, b.cols, tuple(out))


def mat_pow(a: IntMatrix, n: int) -> IntMatrix:
    """``a**n`` by binary exponentiation; ``a**0`` is the identity."""
    if not a.is_square:
        raise DimensionError("power of a non-square matrix")
    if n < 0:
        raise ValueError("negative exponent")
    result = IntMatrix.identity(a.rows)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square list-of-rows by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _small_det(s: Sequence[Sequence[int]]) -> int:
    r = len(s)
    if r == 1:
        return s[0][0]
    if r == 2:
        return s[0][0] * s[1][1] - s[0][1] * s[1][0]
    if r == 3:
        return (s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
                - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
                + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]))
    return det(s)


def compound(a: IntMatrix, r: int) -> IntMatrix:
    """r-th compound matrix: all r x r minors of ``a``.

    Rows and columns are indexed by r-subsets in lexicographic order
    (``itertools.combinations`` order), so (0, 1) < (0, 2) < (1, 2) etc.
    """
    if not 1 <= r <= min(a.rows, a.cols):
        raise ValueError(f"compound order {r} out of range for {a.rows}x{a.cols}")
    row_sets = list(combinations(range(a.rows), r))
    col_sets = list(combinations(range(a.cols), r))
    out = []
    for rs in row_sets:
        for cs in col_sets:
            out.append(_small_det(a.submatrix(rs, cs)))
    return IntMatrix(len(row_sets), len(col_sets), tuple(out))


def content_gcd(m: IntMatrix) -> int:
    return math.gcd(*m.entries)


def charpoly(a: IntMatrix) -> list[int]:
    """Coefficients c_0..c_m of det(xI - a), constant term first.

    Faddeev-LeVerrier recursion; the division by k is exact over Z.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    m = a.rows
    coeffs = [0] * (m + 1)
    coeffs[m] = 1
    aux = IntMatrix.zeros(m)
    ident = IntMatrix.identity(m)
    for k in range(1, m + 1):
        aux = mat_mul(a, aux) + ident.scale(coeffs[m - k + 1])
        prod = mat_mul(a, aux)
        tr = sum(prod.diag())
        assert tr % k == 0
        coeffs[m - k] = -tr // k
    return coeffs


def mat_valuation(m: IntMatrix, p: int) -> int | float:
    """Minimum p-adic valuation over the entries; INFINITY for the zero matrix."""
    return int_valuation(content_gcd(m), p)
