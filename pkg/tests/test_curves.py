from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from shadowlab.curves import (
    PolyChain,
    SegmentSet,
    format_curve,
    load_curve,
    local_axis,
    parse_curve,
    project,
    save_curve,
    shadow_axes,
)
from shadowlab.errors import CurveFormatError, NotSimpleError, ValidationError


def test_rejects_malformed_chains():
    with pytest.raises(CurveFormatError):
        PolyChain(((0, 0),), closed=False)
    with pytest.raises(CurveFormatError):
        PolyChain(((0,), (1,)), closed=False)
    with pytest.raises(CurveFormatError):
        PolyChain(((0, 0), (1, 1), (2,)), closed=False)
    with pytest.raises(CurveFormatError):
        PolyChain(((0, 0), (1, 0)), closed=True)
    with pytest.raises(ValidationError):
        PolyChain(((0, 0), (0, 0), (1, 1)), closed=False)
    with pytest.raises(ValidationError):
        PolyChain(((0, 0), (1, 0), (1, 1), (0, 0)), closed=True)


def test_rejects_self_intersection():
    # bowtie: segments cross in the middle
    with pytest.raises(NotSimpleError):
        PolyChain(((0, 0), (2, 2), (2, 0), (0, 2)), closed=True)
    # open chain revisiting an earlier segment
    with pytest.raises(NotSimpleError):
        PolyChain(((0, 0), (4, 0), (2, 0), (2, 3)), closed=False)
    # validate=False defers the check
    chain = PolyChain(((0, 0), (2, 2), (2, 0), (0, 2)), closed=True, validate=False)
    with pytest.raises(NotSimpleError):
        chain.validate_simple()


def test_closing_the_six_vertex_chain_stays_simple(six_chain):
    # closure is geometrically fine; what breaks is the shadow triple
    # (see test_arrangement for the classification side)
    closed = PolyChain(six_chain.vertices, closed=True)
    assert closed.segment_count == six_chain.segment_count + 1


def test_point_at_parameterization():
    chain = PolyChain(((0, 0), (2, 0), (2, 2)), closed=False)
    assert chain.param_span == 2
    assert chain.point_at(F(0)) == (0, 0)
    assert chain.point_at(F(1, 2)) == (1, 0)
    assert chain.point_at(F(3, 2)) == (2, 1)
    assert chain.point_at(F(2)) == (2, 2)
    with pytest.raises(ValidationError):
        chain.point_at(F(5, 2))
    ring = PolyChain(((0, 0), (1, 0), (1, 1), (0, 1)), closed=True)
    assert ring.point_at(F(4)) == ring.point_at(F(0))
    assert ring.point_at(F(-1, 2)) == ring.point_at(F(7, 2))


def test_project_drops_axis_and_segments(six_chain):
    shadow = project(six_chain, 3)
    assert shadow.dim == 2
    assert all(len(p) == 2 for seg in shadow.segments for p in seg)
    # a chain parallel to the axis collapses to one isolated point
    rod = project(PolyChain(((0, 0, 0), (0, 0, 5)), closed=False), 3)
    assert rod.segments == () and rod.isolated == ((0, 0),)
    with pytest.raises(ValidationError):
        project(six_chain, 4)


def test_project_collapses_perpendicular_segments():
    # middle segment is parallel to axis 3: its shadow is a point interior
    # to the other shadows, so only two segments survive
    chain = PolyChain(((0, 0, 0), (2, 0, 0), (2, 0, 3), (4, 0, 3)), closed=False)
    shadow = project(chain, 3)
    assert len(shadow.segments) == 2
    assert shadow.isolated == ()


def test_axis_helpers():
    assert shadow_axes(3, 2) == (1, 3)
    assert local_axis(3, 2, 3) == 2
    assert local_axis(3, 3, 1) == 1
    with pytest.raises(ValidationError):
        local_axis(3, 2, 2)


def test_segmentset_validation():
    with pytest.raises(ValidationError):
        SegmentSet(dim=2, segments=(((0, 0), (0, 0)),))
    with pytest.raises(ValidationError):
        SegmentSet(dim=2, segments=(((0, 0, 0), (1, 1, 1)),))
    empty = SegmentSet(dim=2, segments=(), isolated=((1, 2),))
    assert len(empty) == 0


def test_text_round_trip(six_chain, tmp_path):
    text = format_curve(six_chain)
    assert text.splitlines()[0] == "open"
    again = parse_curve(text)
    assert again == six_chain
    path = tmp_path / "six.curve"
    save_curve(six_chain, path)
    assert load_curve(path) == six_chain


def test_parse_curve_errors():
    with pytest.raises(CurveFormatError):
        parse_curve("ring\n0 0\n1 0\n0 1\n")
    with pytest.raises(CurveFormatError):
        parse_curve("open\n0 0\n1\n")
    with pytest.raises(CurveFormatError):
        parse_curve("open\n")
    # rationals survive the round trip
    chain = PolyChain(((F(1, 3), 0), (1, F(5, 2))), closed=False)
    assert parse_curve(format_curve(chain)) == chain


def test_json_round_trip(tree_witness):
    doc = tree_witness.to_json()
    assert doc["closed"] is True
    assert PolyChain.from_json(doc) == tree_witness


@st.composite
def lattice_walks(draw):
    length = draw(st.integers(min_value=1, max_value=12))
    pos = (0, 0, 0)
    verts = [pos]
    for _ in range(length):
        step = draw(st.sampled_from([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]))
        pos = tuple(a + b for a, b in zip(pos, step))
        verts.append(pos)
    return verts


@given(walk=lattice_walks())
@settings(max_examples=150, deadline=None)
def test_validation_accepts_exactly_the_simple_walks(walk):
    # brute-force simplicity: a unit-step walk is simple iff no vertex
    # repeats and no segment is retraced
    distinct = len(set(walk)) == len(walk)
    try:
        PolyChain(walk, closed=False)
        ok = True
    except ValidationError:
        ok = False
    assert ok == distinct
