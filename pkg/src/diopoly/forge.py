"""End-to-end pipeline: from a finite integer set to a certified polynomial
whose value products over all distinct pairs are perfect squares.

Both constructions push a projective parameter through a parametrization
onto the quadric variety, pull integer coefficients back through the
reverse birational map, and then re-derive every square root in the
certificate from the polynomial itself with exact integer arithmetic:

* quadric: nodes are the set itself, degree |S| - 2;
* plane: the set is padded to size 3k+2 with the smallest fresh
  non-negative integers (k minimal), degree 2k, and the certificate is
  restricted to the original elements.

A small exhaustive search over primitive integer polynomials doubles as
an independent oracle for the construction routines.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Sequence

from .exactmath import eval_poly, integer_sqrt
from .rationalmaps import (
    CertificatePoint,
    DegenerateParameterError,
    QuadricPoint,
    parametrize_plane,
    parametrize_quadric,
    quadric_to_certificate,
    quadric_to_certificate_raw,
)
from .variety import PointConfig, ProjPoint

__all__ = [
    "FLAG_DEGREE_DROPPED",
    "FLAG_TRIVIAL_FAMILY",
    "FLAG_ZERO_VALUE",
    "ConstructionError",
    "SearchSpaceError",
    "Polynomial",
    "Witness",
    "PairCheck",
    "VerifyReport",
    "SearchReport",
    "construct_witness",
    "verify_witness",
    "brute_force_search",
    "classify_trivial",
    "poly_square_root",
]

FLAG_DEGREE_DROPPED = "degree-dropped"
FLAG_TRIVIAL_FAMILY = "trivial-family"
FLAG_ZERO_VALUE = "zero-value"

DEFAULT_PARAM_BOUND = 50
DEFAULT_MAX_ATTEMPTS = 20
DEFAULT_SEARCH_CEILING = 10**8

METHODS = ("quadric", "plane")


class ConstructionError(RuntimeError):
    """Construction could not produce an acceptable witness.

    Carries per-reason rejection counts in .stats when sampling was
    involved.
    """

    def __init__(self, message: str, stats: dict[str, int] | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


class SearchSpaceError(ValueError):
    """The exhaustive search box exceeds the configured ceiling."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial with ascending coefficients.

    Trailing zero coefficients are trimmed on construction so degree is
    exact; the zero polynomial is rejected.  Content is preserved: the
    construction pipeline emits coefficients exactly as the reverse map
    produces them (only the overall sign is normalized), because the
    certificate identities pin those integers.  Use primitive_part for
    the content-free representative.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        raw = tuple(self.coeffs)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in raw):
            raise TypeError("coefficients must be plain ints")
        while raw and raw[-1] == 0:
            raw = raw[:-1]
        if not raw:
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", raw)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.coeffs))

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, x: int | Fraction) -> int | Fraction:
        if isinstance(x, int):
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return eval_poly(self.coeffs, x)

    def sign_normalized(self) -> "Polynomial":
        """Same polynomial up to sign, with positive leading coefficient."""
        if self.leading > 0:
            return self
        return Polynomial(tuple(-c for c in self.coeffs))

    def primitive_part(self) -> "Polynomial":
        """Content divided out, leading coefficient positive."""
        g = self.content
        sign = 1 if self.leading > 0 else -1
        return Polynomial(tuple(sign * c // g for c in self.coeffs))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_square_root(coeffs: Sequence[int]) -> tuple[int, ...] | None:
    """Integer polynomial g with g^2 equal to the input, or None.

    Takes ascending coefficients; trailing zeros are ignored, and the
    zero polynomial has no root here.
    """
    coeffs = tuple(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        return None
    deg = len(coeffs) - 1
    if deg % 2 != 0:
        return None
    m = deg // 2
    if coeffs[-1] < 0:
        return None
    r = integer_sqrt(coeffs[-1])
    if r is None:
        return None
    g: list[Fraction] = [Fraction(0)] * (m + 1)
    g[m] = Fraction(r)
    for i in range(m - 1, -1, -1):
        s = sum((g[a] * g[i + m - a] for a in range(i + 1, m)), Fraction(0))
        g[i] = (Fraction(coeffs[i + m]) - s) / (2 * r)
    if any(c.denominator != 1 for c in g):
        return None
    ints = tuple(int(c) for c in g)
    return ints if _poly_mul(ints, ints) == coeffs else None


@dataclass(frozen=True)
class Witness:
    """A certified construction result.

    pair_roots holds (i, j, root) triples with i < j indexing the sorted
    elements, where root^2 = f(elements[i]) * f(elements[j]).  The
    underlying certificate point is carried along for downstream use
    (it is what the twisted-curve emitter consumes).
    """

    elements: tuple[int, ...]
    poly: Polynomial
    pair_roots: tuple[tuple[int, int, int], ...]
    method: str
    parameter: ProjPoint
    padding: tuple[int, ...]
    flags: frozenset[str]
    certificate: CertificatePoint

    def roots_map(self) -> dict[tuple[int, int], int]:
        return {(i, j): r for i, j, r in self.pair_roots}


@dataclass(frozen=True)
class PairCheck:
    """One verified pair: indices into the sorted set, the two elements,
    the product of values, and its exact square root if it has one."""

    i: int
    j: int
    a: int
    b: int
    product: int
    root: int | None


@dataclass(frozen=True)
class VerifyReport:
    elements: tuple[int, ...]
    coeffs: tuple[int, ...]
    checks: tuple[PairCheck, ...]
    ok: bool
    zero_products: int

    @property
    def failures(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.i, c.j) for c in self.checks if c.root is None)

    def roots_map(self) -> dict[tuple[int, int], int]:
        return {(c.i, c.j): c.root for c in self.checks if c.root is not None}


@dataclass(frozen=True)
class SearchReport:
    elements: tuple[int, ...]
    max_degree: int
    max_height: int
    found: tuple[Polynomial, ...]
    candidates: int
    exhausted: bool


def _validate_elements(elements: Iterable[int], minimum: int) -> tuple[int, ...]:
    elems = list(elements)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in elems):
        raise ValueError("set elements must be plain integers")
    if len(set(elems)) != len(elems):
        raise ValueError("set elements must be distinct")
    if len(elems) < minimum:
        raise ValueError(f"need at least {minimum} elements, got {len(elems)}")
    return tuple(sorted(elems))


def _plane_padding(elems: Sequence[int]) -> tuple[int, ...]:
    size = len(elems)
    k = max(1, -(-(size - 2) // 3))
    target = 3 * k + 2
    have = set(elems)
    padding = []
    candidate = 0
    while size + len(padding) < target:
        if candidate not in have:
            padding.append(candidate)
        candidate += 1
    return tuple(padding)


def _method_setup(elems: tuple[int, ...], method: str) -> tuple[PointConfig, tuple[int, ...], int]:
    """Returns (config, padding, expected degree)."""
    if method == "quadric":
        d = len(elems) - 2
        return PointConfig(tuple(Fraction(x) for x in elems), d), (), d
    if method == "plane":
        padding = _plane_padding(elems)
        nodes = tuple(Fraction(x) for x in sorted(set(elems) | set(padding)))
        k = (len(nodes) - 2) // 3
        return PointConfig(nodes, 2 * k), padding, 2 * k
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _map_parameter(config: PointConfig, method: str, q: ProjPoint) -> QuadricPoint:
    if method == "quadric":
        return parametrize_quadric(config, q)
    return parametrize_plane(config, q)


def _build_witness(
    config: PointConfig,
    method: str,
    q: ProjPoint,
    w: QuadricPoint,
    elems: tuple[int, ...],
    padding: tuple[int, ...],
    expected_degree: int,
) -> Witness:
    raw_coeffs, _ = quadric_to_certificate_raw(w)
    # integer nodes keep the raw minors integral
    poly = Polynomial(tuple(int(c) for c in raw_coeffs)).sign_normalized()
    certificate = quadric_to_certificate(w)

    flags = set(classify_trivial(poly, elems))
    if poly.degree < expected_degree:
        flags.add(FLAG_DEGREE_DROPPED)

    values = [poly(x) for x in elems]
    roots = []
    for (i, a), (j, b) in combinations(enumerate(elems), 2):
        r = integer_sqrt(values[i] * values[j])
        if r is None:
            raise ConstructionError(
                f"internal certificate failure for pair ({a}, {b})"
            )
        roots.append((i, j, r))

    return Witness(
        elements=elems,
        poly=poly,
        pair_roots=tuple(roots),
        method=method,
        parameter=q,
        padding=padding,
        flags=frozenset(flags),
        certificate=certificate,
    )


def construct_witness(
    elements: Iterable[int],
    method: str = "quadric",
    *,
    parameter: ProjPoint | Sequence[int] | None = None,
    seed: int | None = None,
    rng: random.Random | None = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    param_bound: int = DEFAULT_PARAM_BOUND,
) -> Witness:
    """Construct a certified witness polynomial for the given set.

    With an explicit parameter the single resulting witness is returned
    whatever its flags (a degenerate parameter raises
    ConstructionError).  Without one, parameters are sampled uniformly
    over [-param_bound, param_bound] coordinates from a seeded
    generator, and degenerate or flagged outcomes (degree drop, zero
    value, base-point or in-plane image, f vanishing at the base node)
    are resampled up to max_attempts before giving up.
    """
    elems = _validate_elements(elements, minimum=3)
    config, padding, expected_degree = _method_setup(elems, method)
    plen = config.degree + 1

    if parameter is not None:
        q = parameter if isinstance(parameter, ProjPoint) else ProjPoint(tuple(parameter))
        if len(q) != plen:
            raise ValueError(f"parameter needs {plen} coordinates, got {len(q)}")
        try:
            w = _map_parameter(config, method, q)
        except DegenerateParameterError as exc:
            raise ConstructionError(f"parameter {q.coords} is degenerate: {exc}") from exc
        return _build_witness(config, method, q, w, elems, padding, expected_degree)

    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    if param_bound < 1:
        raise ValueError("param_bound must be at least 1")
    rng = rng if rng is not None else random.Random(seed)
    stats = {
        "attempts": 0,
        "degenerate-parameter": 0,
        "base-point": 0,
        "in-plane": 0,
        "degree-dropped": 0,
        "zero-value": 0,
        "base-node-zero": 0,
    }
    for _ in range(max_attempts):
        stats["attempts"] += 1
        coords = [rng.randint(-param_bound, param_bound) for _ in range(plen)]
        while all(c == 0 for c in coords):
            coords = [rng.randint(-param_bound, param_bound) for _ in range(plen)]
        q = ProjPoint(tuple(coords))
        try:
            w = _map_parameter(config, method, q)
        except DegenerateParameterError:
            stats["degenerate-parameter"] += 1
            continue
        if w.is_base_point:
            stats["base-point"] += 1
            continue
        if method == "plane" and w.in_plane:
            stats["in-plane"] += 1
            continue
        witness = _build_witness(config, method, q, w, elems, padding, expected_degree)
        if FLAG_DEGREE_DROPPED in witness.flags:
            stats["degree-dropped"] += 1
            continue
        if FLAG_ZERO_VALUE in witness.flags:
            stats["zero-value"] += 1
            continue
        if witness.certificate.degenerate:
            stats["base-node-zero"] += 1
            continue
        return witness
    raise ConstructionError(
        f"no acceptable witness within {max_attempts} attempts", stats
    )


def verify_witness(elements: Iterable[int], coeffs: Polynomial | Sequence[int]) -> VerifyReport:
    """Check every distinct pair of the set against the polynomial.

    A zero product counts as a perfect square (root 0) but is tallied
    separately in zero_products so callers can see it happened.
    """
    elems = _validate_elements(elements, minimum=2)
    poly = coeffs if isinstance(coeffs, Polynomial) else Polynomial(tuple(coeffs))
    values = [poly(x) for x in elems]
    checks = []
    zero_products = 0
    for (i, a), (j, b) in combinations(enumerate(elems), 2):
        p = values[i] * values[j]
        if p == 0:
            zero_products += 1
        checks.append(PairCheck(i=i, j=j, a=a, b=b, product=p, root=integer_sqrt(p)))
    ok = all(c.root is not None for c in checks)
    return VerifyReport(
        elements=elems,
        coeffs=poly.coeffs,
        checks=tuple(checks),
        ok=ok,
        zero_products=zero_products,
    )


def _search_size(max_degree: int, max_height: int) -> int:
    return sum(max_height * (2 * max_height + 1) ** e for e in range(max_degree + 1))


def brute_force_search(
    elements: Iterable[int],
    max_degree: int,
    max_height: int,
    *,
    ceiling: int = DEFAULT_SEARCH_CEILING,
) -> SearchReport:
    """Exhaustively enumerate primitive witness polynomials in a box.

    Candidates are primitive ascending coefficient vectors with positive
    leading coefficient, exact degree at most max_degree, and all
    coefficients bounded by max_height; enumeration order (degree, then
    lexicographic) is deterministic and the found list preserves it.
    Scaling a polynomial never changes whether products of its values
    are squares, so primitive representatives lose nothing.  Boxes
    larger than the ceiling are refused outright.
    """
    elems = _validate_elements(elements, minimum=2)
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if max_height < 1:
        raise ValueError("max_height must be at least 1")
    size = _search_size(max_degree, max_height)
    if size > ceiling:
        raise SearchSpaceError(
            f"search box holds about {size} candidates, over the ceiling {ceiling}",
            size,
        )

    found = []
    for e in range(max_degree + 1):
        for lead in range(1, max_height + 1):
            for rest in product(range(-max_height, max_height + 1), repeat=e):
                coeffs = rest + (lead,)
                if reduce(math.gcd, (abs(c) for c in coeffs)) != 1:
                    continue
                values = [eval_horner_int(coeffs, x) for x in elems]
                if all(
                    integer_sqrt(values[i] * values[j]) is not None
                    for i, j in combinations(range(len(elems)), 2)
                ):
                    found.append(Polynomial(coeffs))
    return SearchReport(
        elements=elems,
        max_degree=max_degree,
        max_height=max_height,
        found=tuple(found),
        candidates=size,
        exhausted=True,
    )


def eval_horner_int(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def classify_trivial(poly: Polynomial, elements: Iterable[int]) -> frozenset[str]:
    """Flags for structurally trivial witnesses.

    trivial-family: f is constant or an integer multiple of a square
    of an integer polynomial (then every product of values is a square
    no matter the set).  zero-value: f vanishes at some set element.
    """
    flags = set()
    if poly.is_constant:
        flags.add(FLAG_TRIVIAL_FAMILY)
    elif poly.degree % 2 == 0 and poly_square_root(poly.primitive_part().coeffs) is not None:
        flags.add(FLAG_TRIVIAL_FAMILY)
    if any(poly(x) == 0 for x in elements):
        flags.add(FLAG_ZERO_VALUE)
    return frozenset(flags)
