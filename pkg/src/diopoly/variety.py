"""Evaluation-node configurations and their determinantal quadrics.

Fixing pairwise-distinct rational nodes x_0..x_n and a degree bound
d with 1 <= d < n produces the two projective varieties this package
works on:

* the certificate variety, coordinates (f_0..f_d, z_1..z_n): the
  polynomial f with those ascending coefficients must satisfy
  z_i^2 = f(x_0) * f(x_i) at every node past the base node;

* the quadric variety, coordinates (Y_0..Y_n): for each extra index
  i in d+1..n, the bracket determinant stacking the node power rows
  t = 0..d over the columns (x_0..x_d, x_i), with (Y_0^2..Y_d^2, Y_i^2)
  as the last row, must vanish.  Expanding along that last row shows
  the equation is diagonal in the squares; the coefficients are the
  signed maximal minors of the power block, i.e. Vandermonde
  determinants of d+1 of the d+2 chosen nodes.

Points are canonical primitive integer vectors (content one, first
nonzero coordinate positive), so point equality is tuple equality and
both membership tests are manifestly invariant under rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .exactmath import Matrix, Scalar, _frac, det, eval_poly

__all__ = [
    "ProjPoint",
    "PointConfig",
    "DiagonalQuadric",
    "bracket_matrix",
    "bracket",
    "bracket_cofactors",
    "diagonal_quadric",
    "diagonal_quadrics",
    "on_quadric_variety",
    "on_certificate_variety",
    "base_point",
    "power_point",
    "plane_basis",
]


@dataclass(frozen=True)
class ProjPoint:
    """Projective point with canonical primitive integer coordinates.

    Construction accepts any nonzero integer vector and immediately
    canonicalizes it: divide by the gcd of all coordinates, then flip
    the overall sign so the first nonzero coordinate is positive.
    """

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        raw = tuple(self.coords)
        if not raw:
            raise ValueError("projective point needs at least one coordinate")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in raw):
            raise TypeError("projective coordinates must be plain ints")
        if all(c == 0 for c in raw):
            raise ValueError("the zero vector is not a projective point")
        g = reduce(math.gcd, (abs(c) for c in raw))
        first = next(c for c in raw if c != 0)
        sign = 1 if first > 0 else -1
        object.__setattr__(self, "coords", tuple(sign * c // g for c in raw))

    @classmethod
    def from_rationals(cls, values: Iterable[Scalar]) -> "ProjPoint":
        """Clear denominators of a rational vector, then canonicalize."""
        fracs = [_frac(v) for v in values]
        if not fracs:
            raise ValueError("projective point needs at least one coordinate")
        common = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs), 1)
        return cls(tuple(int(f * common) for f in fracs))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class PointConfig:
    """Pairwise distinct nodes x_0..x_n plus a degree bound d.

    Requires d >= 1 and n >= d + 1 (so there is at least one quadric).
    Nodes may be arbitrary rationals; the integer-only restriction
    lives in the construction pipeline, not here.
    """

    nodes: tuple[Fraction, ...]
    degree: int

    def __post_init__(self) -> None:
        nodes = tuple(_frac(x) for x in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if len(nodes) < self.degree + 2:
            raise ValueError(
                f"need at least {self.degree + 2} nodes for degree {self.degree}, got {len(nodes)}"
            )

    @property
    def n(self) -> int:
        """Largest node index (the node count is n + 1)."""
        return len(self.nodes) - 1

    @property
    def extra_indices(self) -> range:
        """Indices d+1..n, one diagonal quadric per index."""
        return range(self.degree + 1, self.n + 1)


@dataclass(frozen=True)
class DiagonalQuadric:
    """One defining quadric: sum of coeffs[j] * Y_support[j]^2 over the support.

    Coefficients are primitive integers with the coefficient attached to
    the extra index (the last support entry) positive; up to that
    normalization they are the signed Vandermonde minors of the bracket.
    """

    support: tuple[int, ...]
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.coeffs):
            raise ValueError("support and coefficient lengths differ")
        if self.coeffs[-1] <= 0:
            raise ValueError("extra-index coefficient must be positive")
        g = reduce(math.gcd, (abs(c) for c in self.coeffs))
        if g != 1:
            raise ValueError("quadric coefficients must be primitive")

    def squares_residual(self, point_coords: Sequence[Scalar]) -> Fraction:
        """Evaluate the quadric on the squares of the given coordinates."""
        return sum(
            (_frac(c) * _frac(point_coords[j]) ** 2 for j, c in zip(self.support, self.coeffs)),
            Fraction(0),
        )


def _power_rows(config: PointConfig, column_indices: tuple[int, ...]) -> list[list[Fraction]]:
    cols = [config.nodes[j] for j in column_indices]
    return [[x**t for x in cols] for t in range(config.degree + 1)]


def _check_extra_index(config: PointConfig, extra_index: int) -> None:
    if extra_index not in config.extra_indices:
        raise IndexError(
            f"extra index {extra_index} outside {config.degree + 1}..{config.n}"
        )


def bracket_matrix(config: PointConfig, z_values: Sequence[Scalar], extra_index: int) -> Matrix:
    """The (d+2) x (d+2) bracket: power rows over (x_0..x_d, x_extra), then z."""
    _check_extra_index(config, extra_index)
    if len(z_values) != config.degree + 2:
        raise ValueError(f"need {config.degree + 2} last-row values, got {len(z_values)}")
    cols = tuple(range(config.degree + 1)) + (extra_index,)
    rows = _power_rows(config, cols)
    rows.append([_frac(z) for z in z_values])
    return Matrix.from_rows(rows)


@lru_cache(maxsize=None)
def bracket_cofactors(config: PointConfig, extra_index: int) -> tuple[Fraction, ...]:
    """Last-row cofactors of the bracket, without any normalization.

    Entry j is the signed minor multiplying the j-th last-row value in
    the Laplace expansion of the bracket determinant, so the bracket
    with last row z equals the dot product of this vector with z.
    """
    _check_extra_index(config, extra_index)
    d = config.degree
    cols = tuple(range(d + 1)) + (extra_index,)
    power = _power_rows(config, cols)
    out = []
    for j in range(d + 2):
        sub = Matrix.from_rows([[row[t] for t in range(d + 2) if t != j] for row in power])
        sign = 1 if (d + 1 + j) % 2 == 0 else -1
        out.append(sign * det(sub))
    return tuple(out)


def bracket(config: PointConfig, z_values: Sequence[Scalar], extra_index: int) -> Fraction:
    """Bracket determinant with an arbitrary last row, exactly."""
    _check_extra_index(config, extra_index)
    if len(z_values) != config.degree + 2:
        raise ValueError(f"need {config.degree + 2} last-row values, got {len(z_values)}")
    cof = bracket_cofactors(config, extra_index)
    return sum((c * _frac(z) for c, z in zip(cof, z_values)), Fraction(0))


@lru_cache(maxsize=None)
def diagonal_quadric(config: PointConfig, extra_index: int) -> DiagonalQuadric:
    """Defining quadric for one extra index, in canonical integer form."""
    cof = bracket_cofactors(config, extra_index)
    common = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in cof), 1)
    ints = [int(c * common) for c in cof]
    g = reduce(math.gcd, (abs(c) for c in ints))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    support = tuple(range(config.degree + 1)) + (extra_index,)
    return DiagonalQuadric(support=support, coeffs=tuple(ints))


@lru_cache(maxsize=None)
def diagonal_quadrics(config: PointConfig) -> tuple[DiagonalQuadric, ...]:
    return tuple(diagonal_quadric(config, i) for i in config.extra_indices)


def on_quadric_variety(config: PointConfig, point: ProjPoint) -> bool:
    """Whether (Y_0..Y_n) satisfies every defining diagonal quadric."""
    if len(point) != config.n + 1:
        raise ValueError(f"point needs {config.n + 1} coordinates, got {len(point)}")
    return all(q.squares_residual(point.coords) == 0 for q in diagonal_quadrics(config))


def on_certificate_variety(config: PointConfig, point: ProjPoint) -> bool:
    """Whether (f_0..f_d, z_1..z_n) satisfies z_i^2 = f(x_0) f(x_i) for all i."""
    d, n = config.degree, config.n
    if len(point) != (d + 1) + n:
        raise ValueError(f"point needs {(d + 1) + n} coordinates, got {len(point)}")
    coeffs = point.coords[: d + 1]
    certs = point.coords[d + 1 :]
    values = [eval_poly(coeffs, x) for x in config.nodes]
    return all(Fraction(z) ** 2 == values[0] * values[i + 1] for i, z in enumerate(certs))


def base_point(config: PointConfig) -> ProjPoint:
    """The all-ones point, which lies on every defining quadric."""
    return ProjPoint((1,) * (config.n + 1))


def power_point(config: PointConfig, t: int) -> ProjPoint:
    """Canonical form of (x_0^t, .., x_n^t); on the variety when 2t <= d."""
    if t < 0:
        raise IndexError("power must be non-negative")
    return ProjPoint.from_rationals(x**t for x in config.nodes)


def plane_basis(config: PointConfig) -> tuple[ProjPoint, ...]:
    """The power points T_0..T_k with 2k <= degree, spanning a plane inside
    the quadric variety."""
    return tuple(power_point(config, t) for t in range(config.degree // 2 + 1))
