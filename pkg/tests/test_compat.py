import random

import pytest

from shadowlab.compat import (
    ShadowBitmap,
    back_project,
    find_disconnection_example,
    format_bitmap,
    is_path_bitmap,
    largest_compatible,
    load_bitmap,
    parse_bitmap,
    plane_for_axis,
    reachable,
    save_bitmap,
)
from shadowlab.errors import BudgetError, ValidationError
from shadowlab.sphere import VoxelSet, shadow_voxels


def _bitmaps_of(v: VoxelSet, n: int) -> tuple:
    out = []
    for ax in (1, 2, 3):
        cells = shadow_voxels(v, ax).cells
        out.append(ShadowBitmap(n, n, frozenset(cells), plane_for_axis(ax)))
    return tuple(out)


# - bitmaps -------------------------------------------------------------------


def test_bitmap_validation():
    with pytest.raises(ValidationError):
        ShadowBitmap(0, 2, frozenset(), (2, 3))
    with pytest.raises(ValidationError):
        ShadowBitmap(2, 2, frozenset(), (3, 2))
    with pytest.raises(ValidationError):
        ShadowBitmap(2, 2, frozenset({(2, 0)}), (2, 3))
    with pytest.raises(ValidationError):
        ShadowBitmap(2, 2, frozenset({(0,)}), (2, 3))
    assert len(ShadowBitmap(2, 2, frozenset({(0, 0)}), (2, 3))) == 1


def test_plane_for_axis():
    assert plane_for_axis(1) == (2, 3)
    assert plane_for_axis(2) == (1, 3)
    assert plane_for_axis(3) == (1, 2)
    with pytest.raises(ValidationError):
        plane_for_axis(4)


def test_bitmap_text_round_trip(tmp_path):
    b = parse_bitmap("2 2\n10\n01\n", (1, 2))
    assert b.cells == {(0, 0), (1, 1)}  # row y holds second-coordinate y
    assert format_bitmap(b) == "2 2\n10\n01\n"
    path = tmp_path / "shadow.bitmap"
    save_bitmap(b, path)
    again = load_bitmap(path, (1, 2))
    assert again == b


def test_parse_bitmap_rejects_malformed():
    for text in ("", "2\n10\n01\n", "a b\n10\n01\n", "2 2\n10\n",
                 "2 2\n101\n01\n", "2 2\n10\n0x\n"):
        with pytest.raises(ValidationError):
            parse_bitmap(text, (1, 2))


# - reconstruction --------------------------------------------------------------


def test_back_project_diagonal():
    diag = frozenset({(0, 0), (1, 1)})
    s1 = ShadowBitmap(2, 2, diag, (2, 3))
    s2 = ShadowBitmap(2, 2, diag, (1, 3))
    s3 = ShadowBitmap(2, 2, diag, (1, 2))
    v = back_project(s1, s2, s3)
    assert v.sorted_cells() == [(0, 0, 0), (1, 1, 1)]
    res = largest_compatible(s1, s2, s3)
    assert res.per_shadow_exact == (True, True, True)
    assert res.largest is not None
    assert res.component_count == 2  # diagonal cells share no face


def test_back_project_validates_triples():
    s1 = ShadowBitmap(2, 2, frozenset(), (2, 3))
    s2 = ShadowBitmap(2, 2, frozenset(), (1, 3))
    s3 = ShadowBitmap(2, 2, frozenset(), (1, 2))
    with pytest.raises(ValidationError):
        back_project(s2, s1, s3)  # planes out of order
    with pytest.raises(ValidationError):
        back_project(s1, s2, ShadowBitmap(3, 2, frozenset(), (1, 2)))


def test_largest_compatible_detects_impossible():
    one = frozenset({(0, 0)})
    s1 = ShadowBitmap(2, 2, one, (2, 3))
    s2 = ShadowBitmap(2, 2, one, (1, 3))
    s3 = ShadowBitmap(2, 2, frozenset({(0, 0), (1, 1)}), (1, 2))
    res = largest_compatible(s1, s2, s3)
    assert res.largest is None
    assert res.per_shadow_exact == (True, True, False)
    assert res.component_count == 1
    doc = res.to_json()
    assert doc["largest"] is None and doc["perShadowExact"] == [True, True, False]


def test_largest_dominates_every_matching_solid():
    rng = random.Random(3)
    for _ in range(30):
        cells = frozenset(
            (rng.randrange(3), rng.randrange(3), rng.randrange(3))
            for _ in range(rng.randrange(3, 14))
        )
        v = VoxelSet(dim=3, resolution=1, cells=cells)
        res = largest_compatible(*_bitmaps_of(v, 3))
        assert res.largest is not None
        assert cells <= res.largest.cells
        for ax in (1, 2, 3):
            assert shadow_voxels(res.largest, ax).cells == shadow_voxels(v, ax).cells


def _thin(v: VoxelSet, seed: int) -> VoxelSet:
    # drop random cells while all three shadows survive unchanged
    rng = random.Random(seed)
    want = [shadow_voxels(v, ax).cells for ax in (1, 2, 3)]
    cells = set(v.cells)
    for c in sorted(cells, key=lambda _: rng.random()):
        smaller = frozenset(cells - {c})
        if not smaller:
            continue
        w = VoxelSet(dim=3, resolution=1, cells=smaller)
        if all(shadow_voxels(w, ax).cells == want[ax - 1] for ax in (1, 2, 3)):
            cells.discard(c)
    return VoxelSet(dim=3, resolution=1, cells=frozenset(cells))


def test_matching_solids_closed_under_union():
    rng = random.Random(8)
    for trial in range(20):
        cells = frozenset(
            (rng.randrange(3), rng.randrange(3), rng.randrange(3))
            for _ in range(rng.randrange(4, 16))
        )
        v = VoxelSet(dim=3, resolution=1, cells=cells)
        want = [shadow_voxels(v, ax).cells for ax in (1, 2, 3)]
        a = _thin(v, 2 * trial)
        b = _thin(v, 2 * trial + 1)
        union = VoxelSet(dim=3, resolution=1, cells=a.cells | b.cells)
        for ax in (1, 2, 3):
            assert shadow_voxels(union, ax).cells == want[ax - 1]


# - connectivity ----------------------------------------------------------------


def test_reachable():
    rod = VoxelSet(dim=3, resolution=1,
                   cells=frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0)}))
    assert reachable(rod, (0, 0, 0), (2, 0, 0))
    assert reachable(rod, (0, 0, 0), (0, 0, 0))
    split = VoxelSet(dim=3, resolution=1,
                     cells=frozenset({(0, 0, 0), (2, 0, 0)}))
    assert not reachable(split, (0, 0, 0), (2, 0, 0))
    with pytest.raises(ValidationError):
        reachable(rod, (0, 0, 0), (5, 5, 5))


def test_is_path_bitmap():
    assert not is_path_bitmap(frozenset())
    assert not is_path_bitmap({(0, 0)})
    assert is_path_bitmap({(0, 0), (1, 1)})  # king moves allow diagonals
    assert is_path_bitmap({(0, 0), (1, 0), (2, 0), (1, 1)})
    assert not is_path_bitmap({(0, 0), (2, 2)})
    # the X pentomino: every stroke strands two of the four tips
    assert not is_path_bitmap({(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)})


def test_disconnection_example_within_2x2():
    triple = find_disconnection_example(2)
    assert triple is not None
    s1, s2, s3 = triple
    # frozen: the first triple in enumeration order that splits
    assert sorted(s1.cells) == [(0, 0), (0, 1)]
    assert sorted(s2.cells) == [(0, 1), (1, 0)]
    assert sorted(s3.cells) == [(0, 0), (1, 0)]
    assert all(is_path_bitmap(s.cells) for s in triple)
    res = largest_compatible(*triple)
    assert res.largest is not None
    assert res.largest.sorted_cells() == [(0, 0, 1), (1, 0, 0)]
    assert res.component_count == 2
    assert not reachable(res.largest, (0, 0, 1), (1, 0, 0))


def test_disconnection_search_edges():
    assert find_disconnection_example(1) is None
    with pytest.raises(ValidationError):
        find_disconnection_example(0)
    with pytest.raises(BudgetError):
        find_disconnection_example(2, budget=3)
