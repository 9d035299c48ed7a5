"""Evidence harnesses: exhaustive enumeration and seeded randomized search.

All searches are desk-scale and lattice- or rational-restricted; they can
confirm the curve-shadow theorems on finitely many instances and hunt for
witnesses, never prove anything. Sampled modes draw every instance from its
own RNG, seeded as "<seed>:<index>", and merge results in index order, so a
report depends only on the configuration, never on worker count or
scheduling. Node budgets cap the explored space; exceeding one raises
BudgetError rather than silently truncating.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import classify, is_convex_cycle, shadow_complex
from .curves import PolyChain
from .errors import BudgetError, NotSimpleError, ValidationError
from .lattice import (
    UNIT_STEPS_3D,
    DeltaCanon,
    ShadowProfile,
    canonical_chain_form,
    chain3_extends_simple,
    classify_unit_shadow,
    close_cycle_ok,
    drop_coord,
    icross2,
    idot,
    iprimitive,
    strand_count,
)

MODES = (
    "PathShadowCycles",
    "MinVertexPaths",
    "TreeShadowCycles",
    "ConvexShadowPaths",
    "BranchCensus",
)

DEFAULT_BUDGET = 2_000_000_000


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    grid_max: int = 3
    max_length: int = 16
    sample_count: int = 0
    seed: int = 0
    jobs: int = 1
    budget: Optional[int] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.grid_max < 1:
            raise ValidationError("gridMax must be at least 1")
        if self.max_length < 1:
            raise ValidationError("maxLength must be positive")
        if self.sample_count < 0 or self.jobs < 1:
            raise ValidationError("sampleCount must be >= 0 and jobs >= 1")


@dataclass
class SearchReport:
    mode: str
    instances_checked: int
    counterexamples: tuple
    witnesses: tuple
    histogram: dict
    elapsed: float

    def to_json(self) -> dict:
        # elapsed is exposed on the object but kept out of the canonical
        # JSON: reports must be byte-identical across reruns.
        return {
            "mode": self.mode,
            "instancesChecked": self.instances_checked,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "witnesses": [w.to_json() for w in self.witnesses],
            "histogram": dict(self.histogram),
        }


class _Budget:
    __slots__ = ("nodes", "cap")

    def __init__(self, cap: int):
        self.nodes = 0
        self.cap = cap

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.cap:
            raise BudgetError(
                f"search budget exhausted after {self.nodes} nodes (cap {self.cap})"
            )


def resolve_budget(cfg: SearchConfig) -> int:
    if cfg.budget is not None:
        return cfg.budget
    env = os.environ.get("SHADOWLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _instance_rng(seed: int, index: int, tag: str = "") -> random.Random:
    return random.Random(f"{seed}:{tag}{index}")


# - random generators ----------------------------------------------------------


def random_unit_cycle(rng: random.Random, grid_max: int, max_length: int, budget: _Budget) -> list:
    """One random simple closed unit-step walk in {0..grid_max}^3.

    Picks an even target length, then grows a self-avoiding walk with a
    feasibility prune (Manhattan distance home must stay reachable with the
    right parity) and closes it. Restarts, shrinking the target as a last
    resort, until a cycle appears; a length-4 square always exists, so this
    terminates.
    """
    G = grid_max
    lengths = [L for L in range(4, max_length + 1) if L % 2 == 0]
    target = rng.choice(lengths)
    while True:
        for _attempt in range(50):
            start = (rng.randrange(G + 1), rng.randrange(G + 1), rng.randrange(G + 1))
            verts = [start]
            used = {start}
            cap = 40 * target
            expansions = 0

            def grow() -> bool:
                nonlocal expansions
                cur = verts[-1]
                if len(verts) == target:
                    return (
                        sum(abs(a - b) for a, b in zip(cur, start)) == 1
                        and close_cycle_ok(verts)
                    )
                # Steps that remain after moving to a candidate; the walk
                # must then end one step from the start, so the candidate's
                # distance home needs d <= r + 1 with r + 1 - d even.
                r = target - len(verts) - 1
                cands = []
                for s in UNIT_STEPS_3D:
                    w = (cur[0] + s[0], cur[1] + s[1], cur[2] + s[2])
                    if not all(0 <= c <= G for c in w):
                        continue
                    if w in used:
                        continue
                    d = sum(abs(a - b) for a, b in zip(w, start))
                    if d > r + 1 or (r + 1 - d) % 2 != 0:
                        continue
                    cands.append(w)
                rng.shuffle(cands)
                for w in cands:
                    expansions += 1
                    budget.tick()
                    if expansions > cap:
                        return False
                    verts.append(w)
                    used.add(w)
                    if grow():
                        return True
                    verts.pop()
                    used.remove(w)
                return False

            if grow():
                return verts
        if target > 4:
            target -= 2


def random_unit_path(rng: random.Random, grid_max: int, max_length: int, dim: int, budget: _Budget) -> list:
    """One random self-avoiding unit-step open walk with >= 2 edges."""
    G = grid_max
    steps = []
    for k in range(dim):
        for sgn in (1, -1):
            s = [0] * dim
            s[k] = sgn
            steps.append(tuple(s))
    while True:
        target = rng.randrange(2, max_length + 1)
        start = tuple(rng.randrange(G + 1) for _ in range(dim))
        verts = [start]
        used = {start}
        while len(verts) <= target:
            budget.tick()
            cands = []
            for s in steps:
                w = tuple(a + b for a, b in zip(verts[-1], s))
                if all(0 <= c <= G for c in w) and w not in used:
                    cands.append(w)
            if not cands:
                break
            w = rng.choice(cands)
            verts.append(w)
            used.add(w)
        if len(verts) >= 3:
            return verts


def random_rational_chain(rng: random.Random, grid_max: int, max_vertices: int, budget: _Budget) -> PolyChain:
    """One random simple open chain with small rational vertices."""
    n = rng.randrange(4, max(5, max_vertices + 1))
    while True:
        budget.tick()
        verts = []
        for _ in range(n):
            coords = []
            for _axis in range(3):
                den = rng.randrange(1, 5)
                num = rng.randrange(0, grid_max * den + 1)
                coords.append(Fraction(num, den))
            verts.append(tuple(coords))
        if any(verts[k] == verts[k + 1] for k in range(n - 1)):
            continue
        try:
            return PolyChain(verts, closed=False)
        except NotSimpleError:
            continue


# - mode: PathShadowCycles -----------------------------------------------------


def _shadow_triple(verts: list, closed: bool):
    return tuple(classify_unit_shadow(verts, closed, ax) for ax in (1, 2, 3))


def _check_two_path_strand_law(verts: list, shadows) -> Optional[str]:
    """Criterion from the two-path lemma on one sampled cycle.

    When the axis-2 and axis-3 shadows are paths and the cycle is not flat
    along axis 1, the axis-3 shadow must contain at least two strands in the
    x1 direction. Returns a violation label or None.
    """
    s2, s3 = shadows[1], shadows[2]
    if s2.classification != "Path" or s3.classification != "Path":
        return None
    if min(v[0] for v in verts) == max(v[0] for v in verts):
        return None  # flat cycle, lemma hypothesis not met
    pts = s3.chain_points()
    if strand_count(pts, closed=False, axis0=0) < 2:
        return "two-path-lemma"
    return None


# - sharded sampling ------------------------------------------------------------
#
# Sampled searches draw every instance from its own RNG keyed by (seed,
# index) and give it its own budget, so the result of an index never depends
# on which worker ran it or on what ran before it. Reports therefore come
# out byte-identical for any worker count.


def _psc_instance(params: tuple, index: int):
    seed, grid_max, max_length, cap = params
    budget = _Budget(cap)
    rng = _instance_rng(seed, index)
    verts = random_unit_cycle(rng, grid_max, max_length, budget)
    shadows = _shadow_triple(verts, True)
    key = ",".join(s.classification for s in shadows)
    bad = all(s.classification == "Path" for s in shadows)
    law = _check_two_path_strand_law(verts, shadows)
    flagged = None
    if bad or law:
        chain = PolyChain(verts, closed=True)  # exact revalidation
        reps = [
            classify(shadow_complex(chain, ax)).classification for ax in (1, 2, 3)
        ]
        if (bad and all(r == "Path" for r in reps)) or law:
            flagged = tuple(verts)
    return key, flagged


def _convex_instance(params: tuple, index: int):
    seed, grid_max, max_vertices, cap = params
    budget = _Budget(cap)
    rng = _instance_rng(seed, index, tag="convex:")
    chain = random_rational_chain(rng, grid_max, max_vertices, budget)
    convex = 0
    for ax in (1, 2, 3):
        if is_convex_cycle(shadow_complex(chain, ax)):
            convex += 1
    return str(convex), chain.vertices if convex == 3 else None


def _planar_instance(params: tuple, index: int):
    from .strands import extremes, strands as strands_of, verify_strand_laws

    seed, grid_max, max_length, cap = params
    budget = _Budget(cap)
    rng = _instance_rng(seed, index, tag="planar:")
    verts = random_unit_path(rng, grid_max, max_length, 2, budget)
    chain = PolyChain(verts, closed=False)
    report = verify_strand_laws(chain)
    counts = []
    for ax in (1, 2):
        lo, hi = extremes(chain, ax)
        counts.append(len(strands_of(chain, ax)) if lo != hi else 0)
    key = ",".join(str(c) for c in counts)
    violation = None
    if not report.all_ok:
        violation = {"chain": chain.to_json(), "report": report.to_json()}
    return key, violation


_INSTANCE_FNS = {
    "psc": _psc_instance,
    "convex": _convex_instance,
    "planar": _planar_instance,
}


def _shard_worker(packed: tuple) -> list:
    name, params, lo, hi = packed
    fn = _INSTANCE_FNS[name]
    return [fn(params, i) for i in range(lo, hi)]


def _run_indexed(name: str, params: tuple, count: int, jobs: int) -> list:
    fn = _INSTANCE_FNS[name]
    if jobs <= 1 or count < 2 * jobs:
        return [fn(params, i) for i in range(count)]
    import concurrent.futures

    step = -(-count // jobs)
    spans = [(lo, min(lo + step, count)) for lo in range(0, count, step)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_shard_worker, [(name, params, lo, hi) for lo, hi in spans])
        return [row for part in parts for row in part]


def search_path_shadow_cycles(cfg: SearchConfig) -> SearchReport:
    """Sample or enumerate simple lattice cycles and classify their shadows.

    Sampled mode draws cfg.sample_count independent cycles; exhaustive mode
    (sample_count == 0) enumerates all cycles up to length cfg.max_length
    modulo signed permutations, translation and traversal. Cycles whose three
    shadows all classify as Path would contradict the closed-curve shadow
    theorem; any found (none are expected) are validated through the exact
    rational pipeline and reported as counterexamples, as are violations of
    the two-path strand lemma.
    """
    if cfg.mode != "PathShadowCycles":
        raise ValidationError("config mode must be PathShadowCycles")
    t0 = time.monotonic()
    budget = _Budget(resolve_budget(cfg))
    histogram: dict = {}
    counterexamples = []

    def check_cycle(verts: list) -> None:
        shadows = _shadow_triple(verts, True)
        key = ",".join(s.classification for s in shadows)
        histogram[key] = histogram.get(key, 0) + 1
        bad = all(s.classification == "Path" for s in shadows)
        law = _check_two_path_strand_law(verts, shadows)
        if bad or law:
            chain = PolyChain(verts, closed=True)  # exact revalidation
            reps = [classify(shadow_complex(chain, ax)).classification for ax in (1, 2, 3)]
            if bad and all(r == "Path" for r in reps):
                counterexamples.append(chain)
            elif law:
                counterexamples.append(chain)

    if cfg.sample_count > 0:
        params = (cfg.seed, cfg.grid_max, cfg.max_length, resolve_budget(cfg))
        for key, flagged in _run_indexed("psc", params, cfg.sample_count, cfg.jobs):
            histogram[key] = histogram.get(key, 0) + 1
            if flagged is not None:
                counterexamples.append(PolyChain(flagged, closed=True))
        checked = cfg.sample_count
    else:
        seen: set = set()
        G = cfg.grid_max

        def enumerate_cycles() -> None:
            for sx in range(G + 1):
                for sy in range(G + 1):
                    for sz in range(G + 1):
                        walk((sx, sy, sz))

        def walk(start: tuple) -> None:
            verts = [start]
            used = {start}

            def grow() -> None:
                budget.tick()
                cur = verts[-1]
                if len(verts) >= 4 and len(verts) % 2 == 0:
                    if sum(abs(a - b) for a, b in zip(cur, start)) == 1:
                        form = canonical_chain_form(verts, closed=True)
                        if form not in seen:
                            seen.add(form)
                            check_cycle(list(verts))
                if len(verts) == cfg.max_length:
                    return
                for s in UNIT_STEPS_3D:
                    w = (cur[0] + s[0], cur[1] + s[1], cur[2] + s[2])
                    if not all(0 <= c <= G for c in w) or w in used:
                        continue
                    verts.append(w)
                    used.add(w)
                    grow()
                    verts.pop()
                    used.remove(w)

            grow()

        enumerate_cycles()
        checked = len(seen)

    return SearchReport(
        mode=cfg.mode,
        instances_checked=checked,
        counterexamples=tuple(counterexamples),
        witnesses=(),
        histogram=histogram,
        elapsed=time.monotonic() - t0,
    )


# - mode: MinVertexPaths -------------------------------------------------------


def _profile_label(prof: ShadowProfile) -> str:
    if not prof.segs:
        return "Point"
    if prof.is_cycle():
        return "Cycle"
    if prof.is_path():
        return "Path"
    raise AssertionError("non-fatal connected shadow must be Point, Path or Cycle")


def enumerate_min_vertex_paths(n: int, cfg: SearchConfig) -> SearchReport:
    """All n-vertex open chains in the box whose three shadows are cycles.

    Exhaustive search over corner chains (every interior vertex a genuine
    corner; a chain with a straight-through vertex is a reparameterized
    shorter chain) with integer vertices, up to signed permutation,
    translation and reversal. The DFS walks delta sequences that are
    lexicographically least in their symmetry orbit, keeps per-axis extents
    inside the box, maintains one incremental shadow profile per axis, and
    abandons any prefix whose shadow already contains a branch point or
    crossing. When one segment remains, only final vertices whose shadow
    segments sweep every dangling shadow endpoint are tried. Witnesses are
    returned translated to the origin corner, deduplicated under the full
    symmetry group, sorted.
    """
    if not 2 <= n <= 6:
        raise ValidationError("n must be between 2 and 6")
    t0 = time.monotonic()
    G = cfg.grid_max
    budget = _Budget(resolve_budget(cfg))
    histogram: dict = {}
    witnesses: dict = {}
    leaves = 0

    canon = DeltaCanon(3)
    profs = (ShadowProfile(), ShadowProfile(), ShadowProfile())
    verts = [(0, 0, 0)]
    mins = [0, 0, 0]
    maxs = [0, 0, 0]

    def rec() -> None:
        nonlocal leaves
        depth = len(verts)
        if depth == n:
            leaves += 1
            labels = [_profile_label(p) for p in profs]
            key = ",".join(labels)
            histogram[key] = histogram.get(key, 0) + 1
            if labels == ["Cycle", "Cycle", "Cycle"]:
                chain = PolyChain(verts, closed=False)  # exact revalidation
                for ax in (1, 2, 3):
                    if classify(shadow_complex(chain, ax)).classification != "Cycle":
                        raise AssertionError("profile and arrangement disagree")
                form = canonical_chain_form(verts, closed=False)
                if form not in witnesses:
                    witnesses[form] = PolyChain(form, closed=False)
            return
        last = verts[-1]
        closing = depth == n - 1
        if closing:
            # The final segment must run through every dangling shadow
            # endpoint, so those endpoints must sit on one ray from the
            # head; record (ray direction, farthest distance) per axis.
            rays = []
            for i in range(3):
                a = drop_coord(last, i)
                u = None
                uu = 0
                kmax = 0
                for p in profs[i].open_points():
                    w = (p[0] - a[0], p[1] - a[1])
                    if w == (0, 0):
                        continue
                    if u is None:
                        u = iprimitive(w)
                        uu = idot(u, u)
                    if icross2(u, w) != 0:
                        return
                    k = idot(w, u)
                    if k < 0:
                        return
                    if k > kmax:
                        kmax = k
                rays.append((a, u, kmax))
        for x in range(maxs[0] - G, mins[0] + G + 1):
            for y in range(maxs[1] - G, mins[1] + G + 1):
                for z in range(maxs[2] - G, mins[2] + G + 1):
                    budget.tick()
                    cand = (x, y, z)
                    if closing:
                        ok = True
                        for i in range(3):
                            a, u, kmax = rays[i]
                            if u is None:
                                continue
                            b = drop_coord(cand, i)
                            v = (b[0] - a[0], b[1] - a[1])
                            if icross2(u, v) != 0 or idot(v, u) < kmax:
                                ok = False
                                break
                        if not ok:
                            continue
                    if not chain3_extends_simple(verts, cand, corners_only=True):
                        continue
                    d = (x - last[0], y - last[1], z - last[2])
                    if canon.push(d) is None:
                        continue
                    tokens = []
                    ok = True
                    for i in range(3):
                        t = profs[i].try_add(drop_coord(last, i), drop_coord(cand, i))
                        if t is None:
                            ok = False
                            break
                        tokens.append(t)
                    if ok:
                        saved = (mins[:], maxs[:])
                        for k in range(3):
                            mins[k] = min(mins[k], cand[k])
                            maxs[k] = max(maxs[k], cand[k])
                        verts.append(cand)
                        rec()
                        verts.pop()
                        mins[:], maxs[:] = saved
                    for i in range(len(tokens) - 1, -1, -1):
                        profs[i].undo(tokens[i])
                    canon.pop()

    rec()
    ordered = [witnesses[k] for k in sorted(witnesses)]
    return SearchReport(
        mode="MinVertexPaths",
        instances_checked=leaves,
        counterexamples=(),
        witnesses=tuple(ordered),
        histogram=histogram,
        elapsed=time.monotonic() - t0,
    )


# - modes: TreeShadowCycles and BranchCensus -----------------------------------


class _RollbackDSU:
    """Union-find with undo, no path compression, for shadow cycle checks."""

    __slots__ = ("parent", "size", "trail")

    def __init__(self):
        self.parent: dict = {}
        self.size: dict = {}
        self.trail: list = []

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1
            self.trail.append(("add", x))

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.trail.append(("union", ra, rb))
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            op = self.trail.pop()
            if op[0] == "add":
                del self.parent[op[1]]
                del self.size[op[1]]
            else:
                _, ra, rb = op
                self.parent[rb] = rb
                self.size[ra] -= self.size[rb]


class _ShadowForest:
    """Cycle-free shadow bookkeeping for one projection axis."""

    __slots__ = ("axis0", "edges", "dsu", "marks")

    def __init__(self, axis0: int):
        self.axis0 = axis0
        self.edges: set = set()
        self.dsu = _RollbackDSU()
        self.marks: list = []

    def edge_of(self, u: tuple, v: tuple):
        p = drop_coord(u, self.axis0)
        q = drop_coord(v, self.axis0)
        if p == q:
            return None
        return (p, q) if p < q else (q, p)

    def would_close_cycle(self, u: tuple, v: tuple) -> bool:
        e = self.edge_of(u, v)
        if e is None or e in self.edges:
            return False
        p, q = e
        return (
            p in self.dsu.parent
            and q in self.dsu.parent
            and self.dsu.find(p) == self.dsu.find(q)
        )

    def push(self, u: tuple, v: tuple) -> None:
        mark = self.dsu.mark()
        e = self.edge_of(u, v)
        added = None
        if e is not None and e not in self.edges:
            p, q = e
            self.dsu.add(p)
            self.dsu.add(q)
            self.dsu.union(p, q)
            self.edges.add(e)
            added = e
        self.marks.append((mark, added))

    def pop(self) -> None:
        mark, added = self.marks.pop()
        if added is not None:
            self.edges.discard(added)
        self.dsu.rollback(mark)


def _cycle_free_cycle_attempt(
    rng: random.Random,
    grid_max: int,
    max_length: int,
    node_cap: int,
    budget: _Budget,
    accept,
):
    """One randomized DFS hunt for a simple cycle with cycle-free shadows.

    Moves that reuse existing shadow edges are strongly favored, since tree
    shadows require the walk to retrace its own projections. `accept` sees
    each closable candidate; the first one it takes is returned.
    """
    G = grid_max
    start = (rng.randrange(G + 1), rng.randrange(G + 1), rng.randrange(G + 1))
    verts = [start]
    used = {start}
    forests = (_ShadowForest(0), _ShadowForest(1), _ShadowForest(2))
    nodes = 0

    def grow():
        nonlocal nodes
        cur = verts[-1]
        L = len(verts)
        if L >= 4 and L % 2 == 0:
            if sum(abs(a - b) for a, b in zip(cur, start)) == 1:
                if not any(f.would_close_cycle(cur, start) for f in forests):
                    if close_cycle_ok(verts) and accept(verts):
                        return list(verts)
        if L >= max_length:
            return None
        scored = []
        for s in UNIT_STEPS_3D:
            w = (cur[0] + s[0], cur[1] + s[1], cur[2] + s[2])
            if not all(0 <= c <= G for c in w) or w in used:
                continue
            if any(f.would_close_cycle(cur, w) for f in forests):
                continue
            reused = sum(
                1
                for f in forests
                if (e := f.edge_of(cur, w)) is not None and e in f.edges
            )
            weight = 1.0 + 8.0 * reused
            scored.append((rng.random() ** (1.0 / weight), w))
        scored.sort(reverse=True)
        for _, w in scored:
            nodes += 1
            budget.tick()
            if nodes > node_cap:
                return None
            for f in forests:
                f.push(cur, w)
            verts.append(w)
            used.add(w)
            got = grow()
            if got is not None:
                return got
            used.remove(w)
            verts.pop()
            for f in forests:
                f.pop()
        return None

    return grow()


def find_tree_shadow_cycle(cfg: SearchConfig) -> Optional[PolyChain]:
    """Hunt for a simple lattice cycle whose three shadows are all trees
    with at least two branch points apiece.

    Seeded randomized restarts; any returned witness is revalidated through
    the exact pipeline. None means no witness within the restart budget,
    which is a legitimate outcome on small grids.
    """
    if cfg.mode != "TreeShadowCycles":
        raise ValidationError("config mode must be TreeShadowCycles")
    budget = _Budget(resolve_budget(cfg))
    restarts = cfg.sample_count if cfg.sample_count > 0 else 400

    def accept(verts: list) -> bool:
        shadows = _shadow_triple(verts, True)
        return all(s.classification == "Tree" and s.branch_count >= 2 for s in shadows)

    for t in range(restarts):
        rng = _instance_rng(cfg.seed, t, tag="restart:")
        got = _cycle_free_cycle_attempt(
            rng, cfg.grid_max, cfg.max_length, 4000, budget, accept
        )
        if got is not None:
            chain = PolyChain(got, closed=True)
            for ax in (1, 2, 3):
                rep = classify(shadow_complex(chain, ax))
                if rep.classification != "Tree" or rep.branch_point_count < 2:
                    raise AssertionError("fast path and arrangement disagree")
            return chain
    return None


def min_branch_point_census(cfg: SearchConfig) -> SearchReport:
    """Census of branch-point triples over cycles with cycle-free shadows.

    Each sample index runs one bounded randomized hunt; successes record the
    sorted triple of shadow branch-point counts. An instance matching the
    forbidden pattern (one shadow a plain path while both others have at
    most one branch point) would contradict the generalized theorem and is
    reported as a counterexample.
    """
    if cfg.mode != "BranchCensus":
        raise ValidationError("config mode must be BranchCensus")
    if cfg.sample_count <= 0:
        raise ValidationError("BranchCensus requires sampleCount > 0")
    t0 = time.monotonic()
    budget = _Budget(resolve_budget(cfg))
    histogram: dict = {}
    counterexamples = []

    def accept(verts: list) -> bool:
        return True

    for index in range(cfg.sample_count):
        rng = _instance_rng(cfg.seed, index, tag="census:")
        got = _cycle_free_cycle_attempt(
            rng, cfg.grid_max, cfg.max_length, 1500, budget, accept
        )
        if got is None:
            continue
        shadows = _shadow_triple(got, True)
        counts = sorted(s.branch_count for s in shadows)
        key = ",".join(str(c) for c in counts)
        histogram[key] = histogram.get(key, 0) + 1
        for i in range(3):
            if shadows[i].classification == "Path":
                others = [shadows[j].branch_count for j in range(3) if j != i]
                if all(c <= 1 for c in others):
                    counterexamples.append(PolyChain(got, closed=True))
                    break
    return SearchReport(
        mode="BranchCensus",
        instances_checked=cfg.sample_count,
        counterexamples=tuple(counterexamples),
        witnesses=(),
        histogram=histogram,
        elapsed=time.monotonic() - t0,
    )


# - mode: ConvexShadowPaths ----------------------------------------------------


def search_convex_shadow_paths(cfg: SearchConfig) -> SearchReport:
    """Sample random simple rational open chains; count convex cycle shadows.

    A chain whose three shadows are all convex cycles would contradict the
    convex-shadow theorem; the histogram records how many of the three
    shadows were convex cycles for each instance.
    """
    if cfg.mode != "ConvexShadowPaths":
        raise ValidationError("config mode must be ConvexShadowPaths")
    if cfg.sample_count <= 0:
        raise ValidationError("ConvexShadowPaths requires sampleCount > 0")
    t0 = time.monotonic()
    histogram: dict = {}
    counterexamples = []
    max_vertices = min(cfg.max_length, 8)
    params = (cfg.seed, cfg.grid_max, max_vertices, resolve_budget(cfg))
    for key, flagged in _run_indexed("convex", params, cfg.sample_count, cfg.jobs):
        histogram[key] = histogram.get(key, 0) + 1
        if flagged is not None:
            counterexamples.append(PolyChain(flagged, closed=False))
    return SearchReport(
        mode="ConvexShadowPaths",
        instances_checked=cfg.sample_count,
        counterexamples=tuple(counterexamples),
        witnesses=(),
        histogram=histogram,
        elapsed=time.monotonic() - t0,
    )


# - strand-law sampling (planar paths) ------------------------------------------


def sample_planar_path_laws(
    samples: int, grid_max: int, max_length: int, seed: int, jobs: int = 1
) -> dict:
    """Check the strand laws on random planar simple lattice paths.

    Draws unit-step self-avoiding open walks and runs the executable strand
    laws on each. Returns a JSON-ready summary; any violation lands in
    `violations` together with the chain, and the histogram counts the
    (x1-strands, x2-strands) pairs seen.
    """
    cap = int(os.environ.get("SHADOWLAB_BUDGET") or DEFAULT_BUDGET)
    histogram: dict = {}
    violations = []
    params = (seed, grid_max, max_length, cap)
    for key, violation in _run_indexed("planar", params, samples, jobs):
        histogram[key] = histogram.get(key, 0) + 1
        if violation is not None:
            violations.append(violation)
    return {
        "mode": "StrandLaws",
        "instancesChecked": samples,
        "violations": violations,
        "histogram": histogram,
    }


def sample_liftable_instances(
    count: int, grid_max: int, max_length: int, seed: int
):
    """Yield (chain, proj_axis) pairs whose shadow along proj_axis is a path.

    Used to exercise strand lifting on random spatial walks; the generator
    keeps drawing until `count` liftable instances have appeared.
    """
    budget = _Budget(DEFAULT_BUDGET)
    found = 0
    index = 0
    while found < count:
        rng = _instance_rng(seed, index, tag="lift:")
        index += 1
        verts = random_unit_path(rng, grid_max, max_length, 3, budget)
        shadows = _shadow_triple(verts, False)
        for ax in (1, 2, 3):
            if shadows[ax - 1].classification == "Path":
                yield PolyChain(verts, closed=False), ax
                found += 1
                break
