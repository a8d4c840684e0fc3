"""Divisor germs and smooth curve germs on a smooth surface germ.

A divisor germ is a finite positive rational combination of polynomial
branches through the origin; a smooth curve germ is a single polynomial
with nonzero linear part.  This module extracts their Newton data and
computes the purely local quantities the invariant layer builds on:
multiplicities along a curve, local intersection numbers via truncated
power-series parametrization, and the Newton-nondegeneracy certificate
that marks inputs whose toric invariants are exact.

Polynomials (not power series) keep every computation exact and decidable;
curve polynomials are trusted to be irreducible over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError
from .exactgeom import (
    Face,
    NewtonPolytope,
    compact_faces,
    minkowski_sum,
    point,
    polytope_from_support,
    scale,
    slope,
    support_value,
)
from .polys import (
    Poly,
    divide_exact,
    parse_poly,
    parse_weighted_terms,
    render_poly,
    render_weighted_terms,
    series_mul,
    uni_coprime,
    uni_is_squarefree,
    uni_trim,
)
from .scalars import Extended, POS_INF, is_infinite

__all__ = [
    "DivisorGerm",
    "SmoothCurveGerm",
    "NondegeneracyReport",
    "parse_divisor",
    "divisor",
    "newton_polytope",
    "newton_polytope_of_poly",
    "nondegeneracy_check",
    "mult_along_curve",
    "remove_curve_component",
    "local_intersection",
    "newton_intersection_bound",
    "curve_orient",
    "render_divisor",
]


@dataclass(frozen=True)
class DivisorGerm:
    """B = sum of coeff_i * (poly_i = 0) with positive rational coefficients.

    Every branch polynomial vanishes at the origin.  The empty divisor is
    allowed (it arises when all components of B lie on a curve that gets
    removed); operations that need Newton data reject it.
    """

    components: tuple[tuple[Fraction, Poly], ...]

    def __post_init__(self) -> None:
        for coeff, p in self.components:
            if coeff <= 0:
                raise InputError(f"non-positive coefficient {coeff}")
            if p.nvars != 2:
                raise InputError("divisor components must be bivariate")
            if p.is_zero:
                raise InputError("zero polynomial cannot define a component")
            if p.constant_term() != 0:
                raise InputError("component does not pass through the origin")

    def __add__(self, other: "DivisorGerm") -> "DivisorGerm":
        return DivisorGerm(self.components + other.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def max_coefficient(self) -> Fraction:
        return max((c for c, _ in self.components), default=Fraction(0))


def divisor(components: "list[tuple[object, Poly]]") -> DivisorGerm:
    return DivisorGerm(tuple((Fraction(c), p) for c, p in components))  # type: ignore[arg-type]


def parse_divisor(text: str, variables: "tuple[str, str]" = ("x", "y")) -> DivisorGerm:
    """Parse ``coeff*(poly) + coeff*(poly) + ...``, order preserved."""
    return DivisorGerm(tuple(parse_weighted_terms(text, variables)))


def render_divisor(b: DivisorGerm, variables: "tuple[str, str]" = ("x", "y")) -> str:
    return render_weighted_terms(b.components, variables)


@dataclass(frozen=True)
class SmoothCurveGerm:
    """Curve germ smooth at the origin, in its original coordinates.

    ``swapped`` records whether exchanging the two coordinates is needed to
    make the pure first-variable monomial appear; after that orientation the
    Newton diagram has vertices (1, 0) and (0, b) with ``b`` the tangency
    invariant (symbolically +inf when no pure power of the second variable
    occurs, i.e. the curve is a coordinate axis up to a unit).
    """

    poly: Poly
    swapped: bool
    b_invariant: Extended  # positive integer as Fraction, or +inf

    def oriented_poly(self) -> Poly:
        return _transpose(self.poly) if self.swapped else self.poly


def curve_orient(g: Poly) -> SmoothCurveGerm:
    """Validate smoothness and compute the orientation data of a curve."""
    if g.nvars != 2:
        raise InputError("curve polynomial must be bivariate")
    if g.is_zero or g.constant_term() != 0:
        raise InputError("curve does not pass through the origin")
    cx, cy = g.coefficient((1, 0)), g.coefficient((0, 1))
    if cx == 0 and cy == 0:
        raise InputError("curve is singular at the origin (zero linear part)")
    swapped = cx == 0
    oriented = _transpose(g) if swapped else g
    diagram = newton_polytope_of_poly(oriented)
    if diagram.x_min == 0:
        b: Extended = diagram.top.y
    else:
        b = POS_INF
    return SmoothCurveGerm(g, swapped, b)


def _transpose(p: Poly) -> Poly:
    return Poly(2, {(j, i): c for (i, j), c in p.terms.items()})


# ---------------------------------------------------------------------------
# Newton data


def newton_polytope_of_poly(p: Poly) -> NewtonPolytope:
    if p.is_zero:
        raise InputError("zero polynomial has no Newton polytope")
    return polytope_from_support([point(i, j) for (i, j) in p.terms])


def newton_polytope(b: DivisorGerm) -> NewtonPolytope:
    """Coefficient-weighted Minkowski combination of the branch polytopes."""
    if b.is_empty:
        raise InputError("empty divisor has no Newton polytope")
    total: NewtonPolytope | None = None
    for coeff, p in b.components:
        part = scale(newton_polytope_of_poly(p), coeff)
        total = part if total is None else minkowski_sum(total, part)
    assert total is not None
    return total


@dataclass(frozen=True)
class NondegeneracyReport:
    """Outcome of the Newton-nondegeneracy test.

    The test is sufficient, not necessary: every compact face form of every
    branch must be squarefree off the axes, and branches with parallel
    compact faces must have coprime face forms.  A ``degenerate`` verdict
    carries the offending component indices and face.
    """

    nondegenerate: bool
    component_indices: "tuple[int, ...]" = ()
    face: Face | None = None
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "nondegenerate" if self.nondegenerate else "degenerate"


def _face_form(p: Poly, face: Face) -> "list[Fraction]":
    """Dehomogenized restriction of ``p`` to a compact face of its diagram.

    With primitive normal (a, b), lattice points of the face are spaced by
    the direction (b, -a); the coefficient at step k becomes the u^k
    coefficient of a univariate polynomial.
    """
    s = slope(face)
    assert isinstance(s, Fraction)
    a, b = s.numerator, s.denominator
    left = face.left
    assert not isinstance(left, str)
    coeffs: dict[int, Fraction] = {}
    for (i, j), c in p.terms.items():
        if a * i + b * j == a * left.x + b * left.y:  # on the face line
            k = (Fraction(i) - left.x) / b
            assert k.denominator == 1
            coeffs[int(k)] = c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return uni_trim(out)


def nondegeneracy_check(b: DivisorGerm) -> NondegeneracyReport:
    if b.is_empty:
        raise InputError("empty divisor")
    per_face: "list[tuple[int, Face, tuple[int, int], list[Fraction]]]" = []
    for idx, (_, p) in enumerate(b.components):
        for face in compact_faces(newton_polytope_of_poly(p)):
            s = slope(face)
            assert isinstance(s, Fraction)
            form = _face_form(p, face)
            if not uni_is_squarefree(form):
                return NondegeneracyReport(
                    False, (idx,), face, "face form is not squarefree"
                )
            per_face.append((idx, face, (s.numerator, s.denominator), form))
    for n, (i, face_i, normal_i, form_i) in enumerate(per_face):
        for j, face_j, normal_j, form_j in per_face[n + 1:]:
            if i != j and normal_i == normal_j and not uni_coprime(form_i, form_j):
                return NondegeneracyReport(
                    False, (i, j), face_i, "parallel face forms share a factor"
                )
    return NondegeneracyReport(True)


# ---------------------------------------------------------------------------
# multiplicities and intersections


def _curve_multiplicity(p: Poly, g: Poly) -> "tuple[int, Poly]":
    """Largest k with g^k | p, together with the exact quotient p / g^k."""
    k = 0
    while True:
        q = divide_exact(p, g)
        if q is None:
            return k, p
        p = q
        k += 1


def mult_along_curve(b: DivisorGerm, c: SmoothCurveGerm) -> Fraction:
    """mult_C B: coefficient-weighted order of vanishing of B along C."""
    total = Fraction(0)
    for coeff, p in b.components:
        k, _ = _curve_multiplicity(p, c.poly)
        total += coeff * k
    return total


def remove_curve_component(b: DivisorGerm, c: SmoothCurveGerm) -> DivisorGerm:
    """B minus its C-part: divide every branch by the maximal power of the
    curve polynomial; branches that become units disappear."""
    out = []
    for coeff, p in b.components:
        _, reduced = _curve_multiplicity(p, c.poly)
        if reduced.constant_term() == 0:
            out.append((coeff, reduced))
    return DivisorGerm(tuple(out))


def curve_parametrization(g: Poly, order: int) -> "tuple[list[Fraction], list[Fraction]]":
    """Truncated power-series parametrization (x(t), y(t)) of a smooth curve.

    Solves for whichever variable has a nonzero linear coefficient by
    fixed-point iteration; each pass is exact and gains at least one order,
    so ``order`` passes reach the fixed point of the truncation.
    """
    cx, cy = g.coefficient((1, 0)), g.coefficient((0, 1))
    ident = [Fraction(0), Fraction(1)] + [Fraction(0)] * max(0, order - 2)
    ident = ident[:order]
    if cy != 0:
        solved_var, lin = 1, cy
    elif cx != 0:
        solved_var, lin = 0, cx
    else:
        raise InputError("curve is singular at the origin (zero linear part)")
    rest = Poly(2, {e: c for e, c in g.terms.items() if e != ((1, 0) if solved_var == 0 else (0, 1))})
    psi = [Fraction(0)] * order
    for _ in range(order + 1):
        series = (ident, psi) if solved_var == 1 else (psi, ident)
        val = _eval_poly_series(rest, series[0], series[1], order)
        new = [-v / lin for v in val]
        if new == psi:
            break
        psi = new
    xs, ys = (ident, psi) if solved_var == 1 else (psi, ident)
    residual = _eval_poly_series(g, xs, ys, order)
    assert all(v == 0 for v in residual), "parametrization did not converge"
    return list(xs), list(ys)


def _eval_poly_series(
    p: Poly, xs: "list[Fraction]", ys: "list[Fraction]", order: int
) -> "list[Fraction]":
    out = [Fraction(0)] * order
    x_pows: dict[int, list[Fraction]] = {0: _series_one(order)}
    y_pows: dict[int, list[Fraction]] = {0: _series_one(order)}

    def power(cache: dict, base: "list[Fraction]", e: int) -> "list[Fraction]":
        if e not in cache:
            prev = power(cache, base, e - 1)
            cache[e] = series_mul(prev, base, order)
        return cache[e]

    for (i, j), c in p.terms.items():
        term = series_mul(power(x_pows, xs, i), power(y_pows, ys, j), order)
        for k, v in enumerate(term):
            out[k] += c * v
    return out


def _series_one(order: int) -> "list[Fraction]":
    one = [Fraction(0)] * order
    if order > 0:
        one[0] = Fraction(1)
    return one


def local_intersection(b: DivisorGerm, c: SmoothCurveGerm) -> Fraction:
    """(B . C) at the origin, assuming no component of B lies on C.

    Truncation order N = (max branch degree) * (curve degree) + 1 always
    resolves the order: the local intersection number of curves without a
    common component is at most the product of their degrees.
    """
    if b.is_empty:
        return Fraction(0)
    max_deg = max(p.total_degree() for _, p in b.components)
    n = max_deg * c.poly.total_degree() + 1
    xs, ys = curve_parametrization(c.poly, n + 1)
    total = Fraction(0)
    for coeff, p in b.components:
        values = _eval_poly_series(p, xs, ys, n + 1)
        order = next((k for k, v in enumerate(values) if v != 0), None)
        if order is None:
            raise DomainError(
                "intersection order not determined below truncation; "
                "raise truncation or a component contains the curve"
            )
        total += coeff * order
    return total


def newton_intersection_bound(b: DivisorGerm, c: SmoothCurveGerm) -> Extended:
    """<(b, 1), Newton diagram of B> in the curve's oriented coordinates.

    This is the combinatorial lower bound for (B . C): tangency weight on
    the coordinate the curve is tangent to, with the +inf * 0 = 0 rule when
    the curve is an axis."""
    if b.is_empty:
        return Fraction(0)
    w = (c.b_invariant, Fraction(1))
    if c.swapped:
        w = (w[1], w[0])
    return support_value(newton_polytope(b), w)
