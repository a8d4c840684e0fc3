"""Unit and property tests for the exact Newton-polytope engine."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germ.errors import DomainError, InputError
from germ.exactgeom import (
    Cone2,
    Face,
    NewtonPolytope,
    Point2,
    X_INFINITY,
    Y_INFINITY,
    compact_faces,
    cone,
    cone_lattice_points,
    contains,
    face_intercepts,
    face_normals,
    faces,
    hilbert_basis,
    minkowski_sum,
    point,
    polytope_from_support,
    scale,
    slope,
    support_value,
)
from germ.scalars import POS_INF


def poly(*pts):
    return polytope_from_support([point(x, y) for x, y in pts])


def verts(p):
    return [(v.x, v.y) for v in p.vertices]


# ---------------------------------------------------------------------------
# construction


def test_from_support_three_term_cusp():
    assert verts(poly((4, 0), (1, 1), (0, 3))) == [(0, 3), (1, 1), (4, 0)]


def test_from_support_drops_collinear():
    assert verts(poly((2, 0), (1, 1), (0, 2))) == [(0, 2), (2, 0)]


def test_from_support_two_point_hull():
    for m, n in [(1, 1), (3, 5), (7, 2)]:
        assert verts(poly((m, 0), (0, n))) == [(0, n), (m, 0)]


def test_from_support_drops_dominated():
    assert verts(poly((0, 1), (1, 2), (2, 2), (1, 1))) == [(0, 1)]


def test_from_support_empty_errors():
    with pytest.raises(InputError):
        polytope_from_support([])


def test_chain_invariants_enforced():
    with pytest.raises(InputError):
        NewtonPolytope((Point2(F(0), F(2)), Point2(F(1), F(1)), Point2(F(2), F(0))))
    with pytest.raises(InputError):
        NewtonPolytope((Point2(F(1), F(1)), Point2(F(0), F(2))))


# ---------------------------------------------------------------------------
# scale / minkowski


def test_scale_pointwise():
    assert verts(scale(poly((0, 3), (2, 0)), F(3, 4))) == [(0, F(9, 4)), (F(3, 2), 0)]


def test_scale_identity():
    p = poly((0, 3), (1, 1), (4, 0))
    assert scale(p, 1) == p


def test_scale_half():
    assert verts(scale(poly((0, 2), (2, 0)), F(1, 2))) == [(0, 1), (1, 0)]


def test_scale_rejects_nonpositive():
    with pytest.raises(InputError):
        scale(poly((1, 1)), 0)
    with pytest.raises(InputError):
        scale(poly((1, 1)), F(-1, 2))


def test_minkowski_figure_example():
    p = poly((0, 3), (1, 1), (4, 0))
    q = poly((0, 2), (2, 0))
    assert verts(minkowski_sum(p, q)) == [(0, 5), (1, 3), (3, 1), (6, 0)]


def test_minkowski_identity_element():
    p = poly((0, 3), (1, 1), (4, 0))
    assert minkowski_sum(p, poly((0, 0))) == p


def test_minkowski_doubling():
    p = poly((0, 5), (3, 0))
    assert verts(minkowski_sum(p, p)) == [(0, 10), (6, 0)]


# ---------------------------------------------------------------------------
# support values and membership


def test_support_value_direct_min():
    p = poly((0, 3), (1, 1), (4, 0))
    # oracle: evaluate <w, v> on each vertex by hand
    assert min(0 + 3, 1 + 1, 4 + 0) == 2
    assert support_value(p, (1, 1)) == 2


def test_support_value_two_vertex():
    for m, n in [(2, 3), (5, 1)]:
        assert support_value(poly((m, 0), (0, n)), (1, 1)) == min(m, n)


def test_support_value_axis_weight():
    assert support_value(poly((0, 3), (2, 0)), (0, 1)) == 0


def test_support_value_rejects_bad_weights():
    p = poly((1, 1))
    with pytest.raises(InputError):
        support_value(p, (0, 0))
    with pytest.raises(InputError):
        support_value(p, (-1, 2))


def test_support_value_infinite_weight():
    p = poly((0, 2), (3, 0))
    assert support_value(p, (POS_INF, 1)) == 2  # picks the x = 0 vertex
    assert support_value(poly((1, 1)), (POS_INF, 1)) == POS_INF


def test_contains_scaled_square_example():
    p = scale(poly((2, 0), (1, 1), (0, 2)), F(3, 4))
    assert verts(p) == [(0, F(3, 2)), (F(3, 2), 0)]
    assert contains(p, Point2(F(1), F(1)))


def test_contains_origin_false():
    assert not contains(poly((0, 3), (2, 0)), Point2(F(0), F(0)))


def test_contains_vertex_itself():
    assert contains(poly((1, 1)), Point2(F(1), F(1)))


# ---------------------------------------------------------------------------
# faces, slopes, intercepts


def test_faces_single_vertex():
    fs = faces(poly((1, 1)))
    assert fs == [
        Face(Y_INFINITY, Point2(F(1), F(1))),
        Face(Point2(F(1), F(1)), X_INFINITY),
    ]


def test_faces_cusp_chain():
    fs = faces(poly((0, 3), (1, 1), (4, 0)))
    assert len(fs) == 4
    assert fs[0].left is Y_INFINITY and fs[0].right == Point2(F(0), F(3))
    assert fs[1] == Face(Point2(F(0), F(3)), Point2(F(1), F(1)))
    assert fs[2] == Face(Point2(F(1), F(1)), Point2(F(4), F(0)))
    assert fs[3].left == Point2(F(4), F(0)) and fs[3].right is X_INFINITY


def test_faces_two_vertex():
    fs = faces(poly((0, 2), (2, 0)))
    assert len(fs) == 3
    assert sum(1 for f in fs if f.is_compact) == 1


def test_slope_values():
    assert slope(Face(Point2(F(0), F(3)), Point2(F(1), F(1)))) == 2
    assert slope(Face(Point2(F(4), F(0)), X_INFINITY)) == 0
    assert slope(Face(Y_INFINITY, Point2(F(0), F(3)))) == POS_INF
    for m, n in [(2, 3), (4, 4), (6, 1)]:
        assert slope(Face(Point2(F(0), F(n)), Point2(F(m), F(0)))) == F(n, m)


def test_face_intercepts():
    assert face_intercepts(Face(Point2(F(1), F(3)), Point2(F(3), F(1)))) == (4, 4)
    assert face_intercepts(Face(Point2(F(0), F(3)), Point2(F(5), F(0)))) == (5, 3)
    assert face_intercepts(Face(Point2(F(1), F(1)), Point2(F(4), F(0)))) == (4, F(4, 3))


def test_face_intercepts_rejects_rays():
    with pytest.raises(DomainError):
        face_intercepts(Face(Point2(F(1), F(0)), X_INFINITY))


# ---------------------------------------------------------------------------
# Hilbert bases


def brute_irreducibles(c, bound):
    """Oracle: cone lattice points in the box that are not a sum of two
    nonzero cone lattice points (sums stay in the box componentwise)."""
    pts = set(cone_lattice_points(c, bound))
    out = []
    for v in sorted(pts):
        reducible = False
        for a in pts:
            if a[0] <= v[0] and a[1] <= v[1] and a != v:
                if (v[0] - a[0], v[1] - a[1]) in pts:
                    reducible = True
                    break
        if not reducible:
            out.append(v)
    return set(out)


def test_hilbert_smooth_cone():
    assert set(hilbert_basis(cone((1, 0), (0, 1)))) == {(1, 0), (0, 1)}


def test_hilbert_symmetric_cone():
    c = cone((2, 1), (1, 2))
    expected = brute_irreducibles(c, 3)
    assert expected == {(2, 1), (1, 1), (1, 2)}
    assert set(hilbert_basis(c)) == expected


def test_hilbert_sliver_cone():
    c = cone((1, 0), (1, 5))
    expected = brute_irreducibles(c, 6)
    assert expected == {(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5)}
    assert set(hilbert_basis(c)) == expected


def test_hilbert_single_ray():
    assert hilbert_basis(cone((2, 4), (1, 2))) == [(1, 2)]


def test_hilbert_rejects_outside_quadrant():
    with pytest.raises(InputError):
        cone((1, -1), (0, 1))


def test_hilbert_generators_normalized():
    assert set(hilbert_basis(cone((4, 2), (2, 4)))) == {(2, 1), (1, 1), (1, 2)}


# ---------------------------------------------------------------------------
# properties

frac = st.fractions(min_value=0, max_value=12, max_denominator=6)
support_sets = st.lists(st.tuples(frac, frac), min_size=1, max_size=7)
weights = st.tuples(
    st.fractions(min_value=0, max_value=9, max_denominator=5),
    st.fractions(min_value=0, max_value=9, max_denominator=5),
).filter(lambda w: w != (0, 0))


@settings(max_examples=200, derandomize=True)
@given(support_sets, support_sets, weights)
def test_minkowski_support_additivity(s1, s2, w):
    p, q = poly(*s1), poly(*s2)
    assert support_value(minkowski_sum(p, q), w) == support_value(p, w) + support_value(q, w)


@settings(max_examples=200, derandomize=True)
@given(support_sets, support_sets)
def test_minkowski_matches_pairwise_hull(s1, s2):
    # oracle: hull of all pairwise vertex sums
    p, q = poly(*s1), poly(*s2)
    sums = [point(a.x + b.x, a.y + b.y) for a in p.vertices for b in q.vertices]
    assert minkowski_sum(p, q) == polytope_from_support(sums)


@settings(max_examples=200, derandomize=True)
@given(support_sets)
def test_construction_idempotent(s):
    p = poly(*s)
    assert polytope_from_support(p.vertices) == p


@settings(max_examples=200, derandomize=True)
@given(support_sets)
def test_slopes_strictly_decrease(s):
    p = poly(*s)
    slopes = [slope(f) for f in faces(p)]
    for a, b in zip(slopes, slopes[1:]):
        assert a > b


def boundary_height(p, x):
    """Oracle for membership: least y with (x, y) in the polytope, +inf if
    x < x_min.  Piecewise-linear interpolation along the compact faces."""
    if x < p.x_min:
        return POS_INF
    for f in compact_faces(p):
        if f.left.x <= x <= f.right.x:
            t = (x - f.left.x) / (f.right.x - f.left.x)
            return f.left.y + t * (f.right.y - f.left.y)
    return p.y_min


@settings(max_examples=200, derandomize=True)
@given(support_sets, frac, frac)
def test_contains_matches_boundary_oracle(s, px, py):
    p = poly(*s)
    expected = boundary_height(p, px) <= py
    assert contains(p, Point2(px, py)) == expected


@settings(max_examples=200, derandomize=True)
@given(support_sets, frac, frac)
def test_contains_support_duality(s, px, py):
    p = poly(*s)
    pt = Point2(px, py)
    normals = [(F(a), F(b)) for a, b in face_normals(p)] + [(F(1), F(0)), (F(0), F(1))]
    dual = all(w[0] * px + w[1] * py >= support_value(p, w) for w in normals)
    assert contains(p, pt) == dual


@settings(max_examples=100, derandomize=True)
@given(
    st.tuples(st.integers(0, 9), st.integers(0, 9)).filter(lambda g: g != (0, 0)),
    st.tuples(st.integers(0, 9), st.integers(0, 9)).filter(lambda g: g != (0, 0)),
)
def test_hilbert_matches_brute_force(g1, g2):
    c = cone(g1, g2)
    assert set(hilbert_basis(c)) == brute_irreducibles(c, 18)
