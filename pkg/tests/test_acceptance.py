"""Acceptance suite: one test per contract criterion, at the stated scales.

Each test prints one "criterion N: PASS" line on success; a failed
assertion marks the criterion failed. The heavy searches run once in
module-scoped fixtures and are shared with the determinism criterion.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from shadowlab.arrangement import classify, is_convex_cycle, shadow_complex
from shadowlab.compat import (
    find_disconnection_example,
    is_path_bitmap,
    largest_compatible,
)
from shadowlab.errors import DegenerateAxisError
from shadowlab.sphere import (
    RetractionEvaluator,
    SphereModel,
    VoxelSet,
    betti,
    build_sphere,
    shadow_voxels,
    slice_voxels,
    supercover_polygon,
    verify_retraction,
)
from shadowlab.strands import (
    lift_strand,
    projected_strand_pointset,
    shadow_chain,
    strand_pointset,
    strands,
)
from shadowlab.lattice import canonical_chain_form
from shadowlab.theorem_lab import (
    SearchConfig,
    enumerate_min_vertex_paths,
    find_tree_shadow_cycle,
    min_branch_point_census,
    sample_liftable_instances,
    sample_planar_path_laws,
    search_convex_shadow_paths,
    search_path_shadow_cycles,
)

from conftest import SIX_VERTEX


def _canon(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _report(n: int, detail: str) -> None:
    print(f"criterion {n}: PASS - {detail}")


# - shared heavy runs ----------------------------------------------------------


@pytest.fixture(scope="module")
def cycle_run():
    cfg = SearchConfig(
        mode="PathShadowCycles", grid_max=3, max_length=20,
        sample_count=100_000, seed=42,
    )
    return cfg, search_path_shadow_cycles(cfg)


@pytest.fixture(scope="module")
def planar_run():
    kw = dict(grid_max=3, max_length=12, seed=11)
    return kw, sample_planar_path_laws(10_000, **kw)


@pytest.fixture(scope="module")
def convex_run():
    cfg = SearchConfig(
        mode="ConvexShadowPaths", grid_max=3, max_length=8,
        sample_count=10_000, seed=7,
    )
    return cfg, search_convex_shadow_paths(cfg)


@pytest.fixture(scope="module")
def sphere16(tree_witness):
    model = SphereModel(1, tree_witness)
    return model, build_sphere(model, 16)


# - criteria -------------------------------------------------------------------


def test_criterion_01_six_vertex_shadows_all_cycle(six_chain):
    t0 = time.monotonic()
    kinds = [classify(shadow_complex(six_chain, ax)).classification for ax in (1, 2, 3)]
    elapsed = time.monotonic() - t0
    assert kinds == ["Cycle", "Cycle", "Cycle"]
    assert elapsed < 1.0
    _report(1, f"three Cycle shadows in {elapsed:.3f}s")


def test_criterion_02_minimality_of_six_vertices(six_chain):
    t0 = time.monotonic()
    for n in (3, 4, 5):
        rep = enumerate_min_vertex_paths(
            n, SearchConfig(mode="MinVertexPaths", grid_max=2)
        )
        assert rep.witnesses == (), f"n={n} must have no witnesses"
    six = enumerate_min_vertex_paths(
        6, SearchConfig(mode="MinVertexPaths", grid_max=3)
    )
    assert six.witnesses, "n=6 must produce witnesses"
    forms = {w.vertices for w in six.witnesses}
    assert canonical_chain_form(SIX_VERTEX, closed=False) in forms
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    _report(2, f"n<=5 empty, n=6 has {len(six.witnesses)} witnesses incl."
               f" the six-vertex example, {elapsed:.0f}s")


def test_criterion_03_no_all_path_shadow_cycles(cycle_run):
    cfg, rep = cycle_run
    assert rep.instances_checked == 100_000
    assert rep.counterexamples == ()
    assert "Path,Path,Path" not in rep.histogram
    _report(3, "100000 cycles: no all-path triple, two-strand law holds")


def test_criterion_04_strand_laws_and_lift(planar_run):
    kw, out = planar_run
    assert out["instancesChecked"] == 10_000
    assert out["violations"] == []
    lifted = 0
    for chain, proj_axis in sample_liftable_instances(
        100, grid_max=3, max_length=12, seed=5
    ):
        shadow = shadow_chain(chain, proj_axis)
        for axis in (1, 2):
            try:
                shadow_strands = strands(shadow, axis)
            except DegenerateAxisError:
                continue
            for sigma in shadow_strands:
                back = projected_strand_pointset(
                    lift_strand(chain, proj_axis, sigma), proj_axis
                )
                assert back == strand_pointset(sigma)
                lifted += 1
    assert lifted >= 100
    _report(4, f"10000 paths: zero law violations; {lifted} exact strand lifts")


def test_criterion_05_tree_shadow_cycle_and_census(tree_witness):
    witness = find_tree_shadow_cycle(
        SearchConfig(mode="TreeShadowCycles", grid_max=4, max_length=24, seed=0)
    )
    assert witness is not None
    total = 0
    for ax in (1, 2, 3):
        rep = classify(shadow_complex(witness, ax))
        assert rep.classification == "Tree"
        assert rep.branch_point_count >= 2
        total += rep.branch_point_count
    assert total >= 3
    census = min_branch_point_census(
        SearchConfig(mode="BranchCensus", grid_max=4, max_length=24,
                     sample_count=5000, seed=1)
    )
    assert census.counterexamples == ()  # forbidden (Path, <=1, <=1) absent
    hits = sum(census.histogram.values())
    _report(5, f"witness with {total} branch points; census {hits} hits,"
               f" forbidden pattern absent")


def test_criterion_06_no_three_convex_shadows(convex_run, six_chain):
    cfg, rep = convex_run
    assert rep.instances_checked == 10_000
    assert rep.counterexamples == ()
    assert "3" not in rep.histogram
    convex = sum(
        1 for ax in (1, 2, 3) if is_convex_cycle(shadow_complex(six_chain, ax))
    )
    assert convex <= 2
    _report(6, f"10000 chains: no triple-convex; six-vertex example has {convex}")


def test_criterion_07_sphere_shadows_contractible(sphere16):
    t0 = time.monotonic()
    model, v = sphere16
    assert v.dim == 4
    for ax in (1, 2, 3, 4):
        assert betti(shadow_voxels(v, ax)) == (1, 0, 0)
    # height slices of each spatial shadow sit within one voxel of the
    # correspondingly scaled base shadow
    r = v.resolution
    worst = 0
    for ax in (1, 2, 3):
        i = ax - 1
        proj = [
            tuple(c for k, c in enumerate(vert) if k != i)
            for vert in model.base.vertices
        ]
        sh = shadow_voxels(v, ax)
        for level in range(-r, r + 1):
            sl = slice_voxels(sh, 3, level)
            s = Fraction(r - abs(level), r)
            copy = (
                {(0, 0)}
                if s == 0
                else supercover_polygon(
                    [tuple(s * c for c in p) for p in proj], closed=True
                )
            )
            diff = set(sl.cells) ^ copy
            worst = max(worst, len(diff))
            for c in diff:
                assert any(
                    (c[0] + dx, c[1] + dy) in copy
                    for dx in (-1, 0, 1)
                    for dy in (-1, 0, 1)
                ), f"axis {ax} level {level}: cell {c} strays beyond one voxel"
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0
    _report(7, f"r=16: {len(v)} cells, four contractible shadows,"
               f" slice deviation <= 1 voxel (worst symdiff {worst}), {elapsed:.0f}s")


def test_criterion_08_retraction_verified(sphere16):
    model, _ = sphere16
    for ax in (1, 2, 3, 4):
        rep = verify_retraction(
            RetractionEvaluator(model, ax), 1000, seed=0, tol=Fraction(1, 16)
        )
        assert rep.endpoint_failures == 0
        assert rep.branch_failures == 0
        assert rep.containment_failures == 0
    _report(8, "4 axes x 1000 samples: endpoints and branch exact,"
               " containment within 1/16")


def test_criterion_09_betti_matches_oracle():
    from _oracles import oracle_betti, random_blob, ring_cells_2d, shell_cells_3d

    def vox(cells, dim):
        return VoxelSet(dim=dim, resolution=1, cells=frozenset(cells))

    assert betti(vox({(0, 0)}, 2)) == (1, 0)
    assert betti(vox({(0, 0, 0)}, 3)) == (1, 0, 0)
    assert betti(vox(ring_cells_2d(3), 2)) == (1, 1)
    assert betti(vox(shell_cells_3d(3), 3)) == (1, 0, 1)
    rng = random.Random(123)
    checked = 0
    for dim, span in ((2, 15), (3, 7)):
        for _ in range(25):
            cells = random_blob(rng, dim, 200, span=span)
            assert len(cells) <= 200
            v = vox(cells, dim)
            want = oracle_betti(v.sorted_cells(), dim)
            assert betti(v) == want[:dim]
            assert want[dim] == 0
            checked += 1
    assert checked == 50
    _report(9, "pinned shapes plus 50 random sets agree with the oracle")


def test_criterion_10_disconnection_and_union_closure():
    triple = find_disconnection_example(5)
    assert triple is not None
    assert all(is_path_bitmap(s.cells) for s in triple)
    res = largest_compatible(*triple)
    assert res.largest is not None
    assert res.component_count >= 2

    def thin(v, seed):
        rng = random.Random(seed)
        want = [shadow_voxels(v, ax).cells for ax in (1, 2, 3)]
        cells = set(v.cells)
        for c in sorted(cells, key=lambda _: rng.random()):
            smaller = frozenset(cells - {c})
            if not smaller:
                continue
            w = VoxelSet(dim=3, resolution=1, cells=smaller)
            if all(
                shadow_voxels(w, ax).cells == want[ax - 1] for ax in (1, 2, 3)
            ):
                cells.discard(c)
        return frozenset(cells)

    rng = random.Random(99)
    for trial in range(1000):
        base = frozenset(
            (rng.randrange(3), rng.randrange(3), rng.randrange(3))
            for _ in range(rng.randrange(4, 16))
        )
        v = VoxelSet(dim=3, resolution=1, cells=base)
        want = [shadow_voxels(v, ax).cells for ax in (1, 2, 3)]
        union = VoxelSet(
            dim=3, resolution=1, cells=thin(v, 2 * trial) | thin(v, 2 * trial + 1)
        )
        for ax in (1, 2, 3):
            assert shadow_voxels(union, ax).cells == want[ax - 1]
    _report(10, f"disconnected triple within 5x5 ({res.component_count}"
                f" components); union closure on 1000 pairs")


def test_criterion_11_reports_byte_identical_across_jobs(
    cycle_run, planar_run, convex_run
):
    cfg, rep = cycle_run
    for jobs in (2, 3):
        again = search_path_shadow_cycles(
            SearchConfig(mode=cfg.mode, grid_max=cfg.grid_max,
                         max_length=cfg.max_length, sample_count=cfg.sample_count,
                         seed=cfg.seed, jobs=jobs)
        )
        assert _canon(again.to_json()) == _canon(rep.to_json())
    kw, out = planar_run
    again = sample_planar_path_laws(10_000, jobs=2, **kw)
    assert _canon(again) == _canon(out)
    cfg, rep = convex_run
    again = search_convex_shadow_paths(
        SearchConfig(mode=cfg.mode, grid_max=cfg.grid_max,
                     max_length=cfg.max_length, sample_count=cfg.sample_count,
                     seed=cfg.seed, jobs=2)
    )
    assert _canon(again.to_json()) == _canon(rep.to_json())
    _report(11, "cycle, strand-law and convex reports byte-identical"
                " for jobs in {1,2,3}")
