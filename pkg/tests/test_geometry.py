from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from homothet_enclosure.core.errors import (
    DegenerateTriangleError,
    NonPositiveScaleError,
    NotHomotheticError,
)
from homothet_enclosure.core.geometry import (
    AffineMap,
    CanonicalTriangle,
    HomotheticFamily,
    Point,
    ReferenceTriangle,
    apply_map,
    canonicalizing_map,
    contains_point,
    point_in_canonical,
    to_rational,
    validate_homothet,
)

UNIT = ReferenceTriangle.canonical()


def test_point_in_canonical_is_closed():
    t = CanonicalTriangle.of(1, 0, 0, 4)
    assert point_in_canonical(t, Point.of(1, 1))
    assert point_in_canonical(t, Point.of(0, 4))
    assert not point_in_canonical(t, Point.of(3, 2))
    assert point_in_canonical(t, Point.of(2, 2))
    assert not point_in_canonical(t, Point.of(-1, 0))
    assert not point_in_canonical(t, Point.of(1, "-1/1000"))


def test_hypotenuse_constant_is_precomputed():
    t = CanonicalTriangle.of(7, "1/2", -3, 5)
    assert t.c == Fraction(5, 2)
    assert t.vertices == (Point.of("1/2", -3), Point.of("11/2", -3), Point.of("1/2", 2))


@pytest.mark.parametrize("scale", [0, -1])
def test_canonical_triangle_rejects_non_positive_scale(scale):
    with pytest.raises(NonPositiveScaleError):
        CanonicalTriangle.of(1, 0, 0, scale)


def test_to_rational_rejects_floats_and_bools():
    assert to_rational("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_canonicalizing_map_examples():
    assert canonicalizing_map(UNIT) == AffineMap.identity()

    halved = canonicalizing_map(ReferenceTriangle.of(0, 0, 2, 0, 0, 2))
    assert (halved.m00, halved.m01, halved.m10, halved.m11) == (Fraction(1, 2), 0, 0, Fraction(1, 2))
    assert (halved.tx, halved.ty) == (0, 0)

    sheared = canonicalizing_map(ReferenceTriangle.of(0, 0, 1, 0, 1, 1))
    assert sheared.apply(Point.of(4, 1)) == Point.of(3, 1)
    assert sheared.apply(Point.of(1, 1)) == Point.of(0, 1)


def test_canonicalizing_map_sends_reference_to_unit_triangle():
    r = ReferenceTriangle.of(3, -1, 5, 2, "1/2", 4)
    m = canonicalizing_map(r)
    assert m.apply(r.v0) == Point.of(0, 0)
    assert m.apply(r.v1) == Point.of(1, 0)
    assert m.apply(r.v2) == Point.of(0, 1)


def test_apply_map_and_inverse_round_trip():
    assert apply_map(AffineMap.identity(), Point.of(3, 5)) == Point.of(3, 5)
    m = AffineMap(Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(5), Fraction(7), Fraction(-2))
    q = Point.of("7/3", -2)
    assert m.inverse().apply(m.apply(q)) == q
    assert m.compose(m.inverse()) == AffineMap.identity()


def test_degenerate_maps_and_references_are_rejected():
    with pytest.raises(DegenerateTriangleError):
        AffineMap(Fraction(1), Fraction(2), Fraction(2), Fraction(4))
    with pytest.raises(DegenerateTriangleError):
        ReferenceTriangle.of(0, 0, 1, 1, 2, 2)
    with pytest.raises(DegenerateTriangleError):
        ReferenceTriangle.of(0, 0, 0, 1, 1, 0)


def test_validate_homothet_examples():
    anchor, scale = validate_homothet(UNIT, Point.of(2, 3), Point.of(5, 3), Point.of(2, 6))
    assert anchor == Point.of(2, 3)
    assert scale == 3

    with pytest.raises(NotHomotheticError):
        validate_homothet(UNIT, Point.of(2, 3), Point.of(5, 3), Point.of(2, 7))
    with pytest.raises(NonPositiveScaleError):
        validate_homothet(UNIT, Point.of(0, 0), Point.of(-1, 0), Point.of(0, -1))


def test_validate_homothet_reports_triangle_id():
    with pytest.raises(NotHomotheticError) as info:
        validate_homothet(UNIT, Point.of(0, 0), Point.of(1, 0), Point.of(1, 1), triangle_id=42)
    assert info.value.triangle_id == 42
    assert "42" in str(info.value)


def test_validate_homothet_uses_vertical_edge_when_needed():
    r = ReferenceTriangle.of(0, 0, 0, 1, -1, 0)
    anchor, scale = validate_homothet(r, Point.of(1, 1), Point.of(1, 3), Point.of(-1, 1))
    assert (anchor, scale) == (Point.of(1, 1), 2)
    with pytest.raises(NotHomotheticError):
        validate_homothet(r, Point.of(1, 1), Point.of(1, 3), Point.of(-2, 1))


def test_contains_point_matches_canonical_predicate_for_unit_family():
    family = HomotheticFamily()
    t = family.canonical(1, Point.of(0, 0), 4)
    v0, v1, v2 = family.vertices(t)
    for x in range(-1, 6):
        for y in range(-1, 6):
            q = Point.of(x, y)
            assert contains_point(v0, v1, v2, q) == point_in_canonical(t, q)
            assert contains_point(v2, v1, v0, q) == point_in_canonical(t, q)


def test_family_maps_anchor_and_vertices_back():
    family = HomotheticFamily(ReferenceTriangle.of(0, 0, 2, 1, 1, 3))
    assert not family.is_canonical
    t = family.from_vertices(5, Point.of(1, 1), Point.of(5, 3), Point.of(3, 7))
    assert t.s == 2
    assert family.anchor_of(t) == Point.of(1, 1)
    assert family.vertices(t) == (Point.of(1, 1), Point.of(5, 3), Point.of(3, 7))
    assert point_in_canonical(t, family.to_canonical(Point.of(3, 3)))


_small = st.integers(-6, 6)
_eighths = st.integers(-2, 10).map(lambda value: Fraction(value, 8))


@given(
    coords=st.tuples(_small, _small, _small, _small, _small, _small),
    anchor=st.tuples(_small, _small),
    scale=st.integers(1, 16).map(lambda value: Fraction(value, 4)),
    u=_eighths,
    w=_eighths,
)
@settings(max_examples=300, deadline=None)
def test_canonical_reduction_preserves_containment(coords, anchor, scale, u, w):
    x0, y0, x1, y1, x2, y2 = coords
    assume((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) > 0)
    reference = ReferenceTriangle.of(*coords)
    family = HomotheticFamily(reference)
    origin = Point.of(*anchor)
    v0, v1, v2 = (origin + (v - reference.v0).scaled(scale) for v in reference.vertices)
    # u, w 取 1/8 网格，经常正好落在边或顶点上
    q = v0 + (v1 - v0).scaled(u) + (v2 - v0).scaled(w)

    t = family.from_vertices(1, v0, v1, v2)
    assert t == family.canonical(1, origin, scale)
    assert family.vertices(t) == (v0, v1, v2)
    assert contains_point(v0, v1, v2, q) == point_in_canonical(t, family.to_canonical(q))
    assert contains_point(v0, v1, v2, q) == (u >= 0 and w >= 0 and u + w <= 1)
