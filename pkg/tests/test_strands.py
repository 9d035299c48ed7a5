from fractions import Fraction as F

import pytest

from shadowlab.curves import PolyChain
from shadowlab.errors import DegenerateAxisError, ValidationError
from shadowlab.strands import (
    extremes,
    interiors_disjoint,
    lift_strand,
    projected_strand_pointset,
    shadow_chain,
    strand_pointset,
    strands,
    verify_strand_laws,
)
from shadowlab.theorem_lab import sample_liftable_instances

SQUARE = PolyChain(((0, 0), (1, 0), (1, 1), (0, 1)), closed=True)


def test_extremes(six_chain):
    seg = PolyChain(((0, 0, 0), (1, 2, 3)), closed=False)
    assert extremes(seg, 2) == (0, 2)
    assert extremes(six_chain, 2) == (0, 3)
    flat = PolyChain(((5, 0, 0), (5, 1, 0), (5, 1, 1)), closed=False)
    assert extremes(flat, 1) == (5, 5)
    with pytest.raises(ValidationError):
        extremes(seg, 4)


def test_single_segment_is_its_own_strand():
    seg = PolyChain(((0, 0), (1, 1)), closed=False)
    ss = strands(seg, 1)
    assert len(ss) == 1
    assert ss[0].endpoints() == ((0, 0), (1, 1))
    assert ss[0].min_first is True


def test_zigzag_strand_split():
    zig = PolyChain(((0, 0), (2, 1), (0, 2)), closed=False)
    ss = strands(zig, 1)
    assert len(ss) == 2
    assert ss[0].endpoints() == ((0, 0), (2, 1))
    assert ss[1].endpoints() == ((2, 1), (0, 2))
    assert ss[0].min_first and not ss[1].min_first
    assert len(strands(zig, 2)) == 1
    # the two x1-strands share exactly the turning vertex
    assert set(ss[0].endpoints()) & set(ss[1].endpoints()) == {(2, 1)}
    assert interiors_disjoint(ss[0], ss[1])


def test_square_has_two_strands_each_axis():
    for axis in (1, 2):
        ss = strands(SQUARE, axis)
        assert len(ss) == 2
        for s in ss:
            lo, hi = extremes(SQUARE, axis)
            ends = {p[axis - 1] for p in s.endpoints()}
            assert ends == {lo, hi}


def test_degenerate_axis_raises():
    flat = PolyChain(((5, 0, 0), (5, 1, 0), (5, 1, 1)), closed=False)
    with pytest.raises(DegenerateAxisError):
        strands(flat, 1)


def test_strand_interiors_strictly_between(six_chain):
    for axis in (1, 2, 3):
        lo, hi = extremes(six_chain, axis)
        for s in strands(six_chain, axis):
            a, b = s.endpoints()
            assert {a[axis - 1], b[axis - 1]} == {lo, hi}
            interior = s.subchain().vertices[1:-1]
            assert all(lo < v[axis - 1] < hi for v in interior)


def test_obs2_disjoint_interiors(six_chain, tree_witness):
    for chain in (six_chain, tree_witness, SQUARE):
        for axis in range(1, chain.dim + 1):
            try:
                ss = strands(chain, axis)
            except DegenerateAxisError:
                continue
            for i in range(len(ss)):
                for j in range(i + 1, len(ss)):
                    assert interiors_disjoint(ss[i], ss[j])


def test_law_report_on_planar_paths():
    lshape = PolyChain(((0, 0), (1, 0), (1, 1)), closed=False)
    rep = verify_strand_laws(lshape)
    assert rep.all_ok
    assert rep.witnesses == ()
    assert len(strands(lshape, 1)) == 1
    assert len(strands(lshape, 2)) == 1
    zig = PolyChain(((0, 0), (2, 1), (0, 2)), closed=False)
    assert verify_strand_laws(zig).lemma5_ok


def test_law_report_on_lattice_chain(six_chain, tree_witness):
    assert verify_strand_laws(six_chain).all_ok
    assert verify_strand_laws(tree_witness).all_ok


def test_shadow_chain(six_chain, tree_witness):
    # six-vertex shadows are simple closed curves: chains come back closed
    for ax in (1, 2, 3):
        shadow = shadow_chain(six_chain, ax)
        assert shadow is not None and shadow.closed
    # tree-shaped shadows are not simple curves at all
    assert all(shadow_chain(tree_witness, ax) is None for ax in (1, 2, 3))
    gamma = PolyChain(((0, 0, 0), (2, 1, 0), (0, 2, 1)), closed=False)
    shadow = shadow_chain(gamma, 3)
    assert shadow is not None
    assert shadow.vertices == ((0, 0), (2, 1), (0, 2))


def test_lift_single_skew_segment():
    gamma = PolyChain(((0, 0, 0), (1, 2, 3)), closed=False)
    shadow = shadow_chain(gamma, 3)
    sigma = strands(shadow, 1)[0]
    lifted = lift_strand(gamma, 3, sigma)
    assert lifted.endpoints() == ((0, 0, 0), (1, 2, 3))


def test_lift_pinned_example():
    gamma = PolyChain(((0, 0, 0), (2, 1, 0), (0, 2, 1)), closed=False)
    sigma = strands(shadow_chain(gamma, 3), 1)[0]
    assert sigma.endpoints() == ((0, 0), (2, 1))
    lifted = lift_strand(gamma, 3, sigma)
    assert lifted.endpoints() == ((0, 0, 0), (2, 1, 0))
    assert lifted.axis == 1
    assert projected_strand_pointset(lifted, 3) == strand_pointset(sigma)


def test_lift_reprojects_on_sampled_instances():
    count = 0
    for chain, proj_axis in sample_liftable_instances(25, grid_max=3, max_length=12, seed=5):
        shadow = shadow_chain(chain, proj_axis)
        for axis in (1, 2):
            try:
                shadow_strands = strands(shadow, axis)
            except DegenerateAxisError:
                continue
            for sigma in shadow_strands:
                lifted = lift_strand(chain, proj_axis, sigma)
                assert projected_strand_pointset(lifted, proj_axis) == strand_pointset(sigma)
                count += 1
    assert count >= 25


def test_lift_rejects_cycle_shadow(six_chain):
    fake = strands(SQUARE, 1)[0]
    with pytest.raises(ValidationError):
        lift_strand(six_chain, 3, fake)


def test_strand_json(six_chain):
    s = strands(six_chain, 2)[0]
    doc = s.to_json()
    assert set(doc) == {"axis", "u", "v", "minFirst", "endpoints"}
    assert doc["axis"] == 2
    assert isinstance(doc["u"], str) and isinstance(doc["v"], str)
