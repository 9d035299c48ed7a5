from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from shadowlab.geometry import (
    GeometryError,
    canonical_union,
    cross2,
    direction_key,
    format_rational,
    line_key,
    parse_rational,
    point_on_segment,
    primitive_direction,
    seg2_intersection,
    segnd_intersection,
    unions_equal,
)

from _oracles import oracle_seg2_intersection

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=4
)
points2 = st.tuples(rationals, rationals)


def test_parse_rational():
    assert parse_rational("3") == 3
    assert parse_rational("-7/2") == F(-7, 2)
    assert parse_rational("4/6") == F(2, 3)
    for bad in ("", "1/0", "x", "1.5", "1 /2"):
        with pytest.raises(GeometryError):
            parse_rational(bad)


def test_format_rational_round_trip():
    for v in (F(0), F(5), F(-3, 7), F(10, 4)):
        assert parse_rational(format_rational(v)) == v
    assert format_rational(F(10, 4)) == "5/2"


def test_cross2_orientation():
    o, a, b = (0, 0), (1, 0), (0, 1)
    assert cross2(o, a, b) > 0
    assert cross2(o, b, a) < 0
    assert cross2(o, a, (2, 0)) == 0


def test_primitive_direction():
    assert primitive_direction((4, -6)) == (2, -3)
    assert primitive_direction((-4, 6)) == (2, -3)
    assert primitive_direction((0, 0, -5)) == (0, 0, 1)
    with pytest.raises(GeometryError):
        primitive_direction((0, 0))
    with pytest.raises(GeometryError):
        primitive_direction((F(1, 2), 1))


def test_line_key_collinear_invariance():
    a, b = (F(0), F(0)), (F(2), F(1))
    c = (F(4), F(2))
    assert line_key(a, b) == line_key(b, c) == line_key(a, c)
    assert line_key(a, b) != line_key((0, 1), (2, 2))


def test_point_on_segment():
    assert point_on_segment((F(1, 2), F(1, 2), F(1, 2)), (0, 0, 0), (1, 1, 1))
    assert not point_on_segment((2, 2, 2), (0, 0, 0), (1, 1, 1))
    assert not point_on_segment((F(1, 2), 0, 0), (0, 0, 0), (1, 1, 1))
    assert point_on_segment((3, 3), (3, 3), (3, 3))


def test_seg2_intersection_cases():
    # crossing
    kind, p = seg2_intersection((0, 0), (2, 2), (0, 2), (2, 0))
    assert kind == "point" and p == (1, 1)
    # touching at an endpoint
    kind, p = seg2_intersection((0, 0), (1, 0), (1, 0), (1, 5))
    assert kind == "point" and p == (1, 0)
    # collinear overlap, returned ordered along the line
    got = seg2_intersection((0, 0), (3, 0), (1, 0), (5, 0))
    assert got == ("overlap", (1, 0), (3, 0))
    # parallel distinct lines
    assert seg2_intersection((0, 0), (1, 0), (0, 1), (1, 1)) == ("none",)
    with pytest.raises(GeometryError):
        seg2_intersection((0, 0), (0, 0), (1, 1), (2, 2))


@given(a=points2, b=points2, c=points2, d=points2)
@settings(max_examples=300, deadline=None)
def test_seg2_intersection_matches_oracle(a, b, c, d):
    if a == b or c == d:
        with pytest.raises(GeometryError):
            seg2_intersection(a, b, c, d)
        return
    got = seg2_intersection(a, b, c, d)
    kind, payload = oracle_seg2_intersection(a, b, c, d)
    if kind == "empty":
        assert got == ("none",)
    elif kind == "point":
        assert got[0] == "point"
        assert tuple(got[1]) == payload
    else:
        assert got[0] == "overlap"
        assert {tuple(got[1]), tuple(got[2])} == {payload[0], payload[1]}


def test_segnd_intersection_3d():
    kind, p = segnd_intersection((0, 0, 0), (2, 2, 0), (0, 2, 0), (2, 0, 0))
    assert kind == "point" and p == (1, 1, 0)
    # skew lines whose 2D projections cross
    assert segnd_intersection((0, 0, 0), (2, 2, 0), (0, 2, 1), (2, 0, 1)) == ("none",)
    got = segnd_intersection((0, 0, 0), (2, 2, 2), (1, 1, 1), (3, 3, 3))
    assert got == ("overlap", (1, 1, 1), (2, 2, 2))


@given(data=st.data())
@settings(max_examples=200, deadline=None)
def test_segnd_matches_planar_on_embedded_segments(data):
    pts = [data.draw(points2) for _ in range(4)]
    a, b, c, d = [(x, y, F(0)) for x, y in pts]
    if a == b or c == d:
        return
    got3 = segnd_intersection(a, b, c, d)
    got2 = seg2_intersection(pts[0], pts[1], pts[2], pts[3])
    assert got3[0] == got2[0]
    if got3[0] == "point":
        assert got3[1][:2] == tuple(got2[1])


def test_canonical_union_merges_overlaps():
    segs = [((0, 0), (2, 0)), ((1, 0), (3, 0)), ((0, 1), (1, 1))]
    merged, leftovers = canonical_union(segs)
    assert ((0, 0), (3, 0)) in merged
    assert ((0, 1), (1, 1)) in merged
    assert len(merged) == 2 and leftovers == ()


def test_canonical_union_drops_covered_points():
    segs = [((0, 0), (2, 0))]
    merged, leftovers = canonical_union(segs, isolated=[(1, 0), (5, 5), (5, 5)])
    assert merged == (((0, 0), (2, 0)),)
    assert leftovers == ((5, 5),)


def test_unions_equal_sees_through_subdivision():
    one = [((0, 0), (4, 0))]
    two = [((0, 0), (1, 0)), ((1, 0), (4, 0))]
    assert unions_equal(one, (), two, ())
    assert not unions_equal(one, (), two, [(0, 1)])


def test_direction_key_clears_denominators():
    assert direction_key((F(1, 3), F(0)), (F(2, 3), F(1, 2))) == (2, 3)
