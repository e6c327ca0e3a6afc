"""Exact scalars and small dense exact linear algebra.

Integers are Python ints and rationals are fractions.Fraction, both
unbounded and kept in lowest terms with positive denominator, so every
equality test in this package is bit-exact.  No floating point enters
any code path.  All values are immutable and all functions are pure,
which makes everything here safe to call from concurrent code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Matrix",
    "det",
    "det_cofactor",
    "minor",
    "interpolate",
    "eval_poly",
    "integer_sqrt",
]

Scalar = int | Fraction


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Matrix:
    """Rectangular matrix of exact rationals, stored row-major.

    Use Matrix.from_rows to build one from any mix of ints and
    Fractions; the constructor insists on at least one row and one
    column and on all rows having equal length.
    """

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("matrix rows must all have the same length")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        return cls(tuple(tuple(_frac(x) for x in row) for row in rows))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Fraction:
        self._check_row(i)
        self._check_col(j)
        return self.entries[i][j]

    def submatrix(self, drop_row: int, drop_col: int) -> "Matrix":
        """Copy of the matrix with one row and one column removed."""
        self._check_row(drop_row)
        self._check_col(drop_col)
        rows = tuple(
            tuple(x for j, x in enumerate(row) if j != drop_col)
            for i, row in enumerate(self.entries)
            if i != drop_row
        )
        return Matrix(rows)

    def drop_col(self, drop_col: int) -> "Matrix":
        """Copy of the matrix with one column removed."""
        self._check_col(drop_col)
        return Matrix(
            tuple(tuple(x for j, x in enumerate(row) if j != drop_col) for row in self.entries)
        )

    def _check_row(self, i: int) -> None:
        if not 0 <= i < self.nrows:
            raise IndexError(f"row index {i} out of range for {self.nrows} rows")

    def _check_col(self, j: int) -> None:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column index {j} out of range for {self.ncols} columns")


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free one-step elimination with row pivoting.

    The elimination divides each updated entry by the previous pivot;
    that division is always exact, so integer input matrices stay in
    integers all the way through (a fast plain-int path is used for
    them) and rational inputs never leave Fraction arithmetic.
    """
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    if all(x.denominator == 1 for row in m.entries for x in row):
        return Fraction(_det_bareiss_int([[x.numerator for x in row] for row in m.entries]))
    return _det_bareiss_frac([list(row) for row in m.entries])


def _det_bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for r in range(n - 1):
        if a[r][r] == 0:
            swap = next((i for i in range(r + 1, n) if a[i][r] != 0), None)
            if swap is None:
                return 0
            a[r], a[swap] = a[swap], a[r]
            sign = -sign
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                # exact by the one-step elimination identity
                a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) // prev
            a[i][r] = 0
        prev = a[r][r]
    return sign * a[n - 1][n - 1]


def _det_bareiss_frac(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    sign = 1
    prev = Fraction(1)
    for r in range(n - 1):
        if a[r][r] == 0:
            swap = next((i for i in range(r + 1, n) if a[i][r] != 0), None)
            if swap is None:
                return Fraction(0)
            a[r], a[swap] = a[swap], a[r]
            sign = -sign
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) / prev
            a[i][r] = Fraction(0)
        prev = a[r][r]
    return sign * a[n - 1][n - 1]


def det_cofactor(m: Matrix) -> Fraction:
    """Determinant by Laplace expansion along the first row.

    Exponential in the size; kept as an independent cross-check path
    for small matrices (tests compare it against det on sizes <= 4).
    """
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    n = m.nrows
    if n == 1:
        return m.entries[0][0]
    total = Fraction(0)
    for j, x in enumerate(m.entries[0]):
        if x == 0:
            continue
        piece = x * det_cofactor(m.submatrix(0, j))
        total += piece if j % 2 == 0 else -piece
    return total


def minor(m: Matrix, drop_row: int, drop_col: int) -> Fraction:
    """Determinant of the square matrix with one row and column removed."""
    if not m.is_square:
        raise ValueError("minor needs a square matrix")
    if m.nrows == 1:
        raise ValueError("a 1x1 matrix has no minors")
    return det(m.submatrix(drop_row, drop_col))


def interpolate(
    points: Sequence[tuple[Scalar, Scalar]], max_degree: int
) -> tuple[Fraction, ...]:
    """Lagrange interpolation through exactly max_degree + 1 points.

    Returns ascending coefficients (always max_degree + 1 of them;
    trailing zeros are kept, so the represented degree may be lower).
    Duplicate abscissae or a wrong point count raise ValueError.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if len(points) != max_degree + 1:
        raise ValueError(
            f"need exactly {max_degree + 1} points for degree bound {max_degree}, got {len(points)}"
        )
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation nodes")

    coeffs = [Fraction(0)] * (max_degree + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        # coefficients of prod_{j != i} (x - x_j), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                nxt[t + 1] += c
                nxt[t] -= xj * c
            basis = nxt
            denom *= xi - xj
        scale = yi / denom
        for t, c in enumerate(basis):
            coeffs[t] += scale * c
    return tuple(coeffs)


def eval_poly(coeffs: Sequence[Scalar], x: Scalar) -> Fraction:
    """Evaluate ascending coefficients at x by Horner's rule, exactly."""
    acc = Fraction(0)
    xf = _frac(x)
    for c in reversed(coeffs):
        acc = acc * xf + _frac(c)
    return acc


def integer_sqrt(n: int) -> int | None:
    """Exact integer square root, or None if n is negative or not a square.

    math.isqrt supplies the proven floor square root on unbounded ints;
    the only work left here is the exactness check.
    """
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
