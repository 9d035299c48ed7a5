"""Exact planar arrangements of segment unions, and their topology.

A shadow is a finite union of closed segments in the plane. `build_complex`
turns that union into an embedded 1-complex: vertices are all segment
endpoints, all transversal crossing points and all endpoints of maximal
collinear overlaps; edges are the maximal subsegments between consecutive
vertices along each supporting line, deduplicated as point sets. Everything
is computed with rational arithmetic, so coincidences (three segments
through one point, partial overlaps) are resolved exactly rather than by
epsilon.

The intersection pass is the quadratic all-pairs one. Inputs here are small
(hundreds of segments at most) and exactness matters more than asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .curves import PolyChain, SegmentSet, project
from .errors import ValidationError
from .geometry import cross2, line_key, point_on_segment, seg2_intersection

CLASSIFICATIONS = ("Empty", "Point", "Path", "Cycle", "Tree", "Other")


@dataclass(frozen=True)
class OneComplex:
    """Embedded planar 1-complex: no edge interior contains a vertex."""

    vertices: tuple  # lexicographically sorted points
    edges: tuple  # sorted (i, j) index pairs with i < j
    isolated: tuple = ()  # sorted points, disjoint from all edges

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list:
        deg = [0] * len(self.vertices)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list:
        adj = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


@dataclass(frozen=True)
class TopologyReport:
    component_count: int
    vertex_count: int
    edge_count: int
    degree_histogram: dict
    branch_point_count: int
    has_cycle: bool
    classification: str

    def to_json(self) -> dict:
        return {
            "componentCount": self.component_count,
            "vertexCount": self.vertex_count,
            "edgeCount": self.edge_count,
            "degreeHistogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "branchPointCount": self.branch_point_count,
            "hasCycle": self.has_cycle,
            "classification": self.classification,
        }


def _line_param_axis(key) -> int:
    # key = (a, b, c); direction (a, b) with a > 0, or a == 0 and b > 0.
    return 0 if key[0] != 0 else 1


def build_complex(segs: SegmentSet) -> OneComplex:
    """Arrange a planar SegmentSet into an embedded 1-complex."""
    if segs.dim != 2:
        raise ValidationError("build_complex expects planar input")
    unique = []
    seen = set()
    for p, q in segs.segments:
        k = (p, q) if p <= q else (q, p)
        if k not in seen:
            seen.add(k)
            unique.append(k)

    lines: dict = {}
    for p, q in unique:
        key = line_key(p, q)
        ax = _line_param_axis(key)
        lo, hi = (p, q) if p[ax] <= q[ax] else (q, p)
        lines.setdefault(key, []).append((lo, hi))

    line_list = list(lines.items())
    events = {key: set() for key, _ in line_list}
    for key, items in line_list:
        ax = _line_param_axis(key)
        for lo, hi in items:
            events[key].add(lo[ax])
            events[key].add(hi[ax])

    # Transversal crossings between segments on different supporting lines.
    for a in range(len(line_list)):
        key_a, segs_a = line_list[a]
        ax_a = _line_param_axis(key_a)
        for b in range(a + 1, len(line_list)):
            key_b, segs_b = line_list[b]
            ax_b = _line_param_axis(key_b)
            for lo1, hi1 in segs_a:
                for lo2, hi2 in segs_b:
                    rel = seg2_intersection(lo1, hi1, lo2, hi2)
                    if rel[0] == "point":
                        p = rel[1]
                        events[key_a].add(p[ax_a])
                        events[key_b].add(p[ax_b])

    # Per line: merge covered intervals, subdivide them at event parameters.
    def point_at(key, items, param):
        a_dir, b_dir, _ = key
        ax = _line_param_axis(key)
        p0 = items[0][0]
        d = (a_dir, b_dir)
        t = Fraction(param - p0[ax]) / d[ax]
        return (p0[0] + t * d[0], p0[1] + t * d[1])

    vertex_index: dict = {}
    raw_edges = set()

    def vid(point) -> int:
        if point not in vertex_index:
            vertex_index[point] = len(vertex_index)
        return vertex_index[point]

    for key, items in line_list:
        ax = _line_param_axis(key)
        intervals = sorted((lo[ax], hi[ax]) for lo, hi in items)
        merged = []
        cur_lo, cur_hi = intervals[0]
        for lo, hi in intervals[1:]:
            if lo <= cur_hi:
                if hi > cur_hi:
                    cur_hi = hi
            else:
                merged.append((cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        merged.append((cur_lo, cur_hi))
        evs = sorted(events[key])
        for lo, hi in merged:
            inside = [t for t in evs if lo <= t <= hi]
            pts = [point_at(key, items, t) for t in inside]
            for p, q in zip(pts, pts[1:]):
                raw_edges.add((vid(p), vid(q)))

    # Isolated points survive only where no segment covers them.
    iso = []
    for p in segs.isolated:
        if not any(point_on_segment(p, lo, hi) for _, items in line_list for lo, hi in items):
            iso.append(p)

    # Canonical vertex order: lexicographic.
    points = sorted(vertex_index, key=lambda p: (p[0], p[1]))
    renum = {vertex_index[p]: i for i, p in enumerate(points)}
    edges = sorted(
        (min(renum[i], renum[j]), max(renum[i], renum[j])) for i, j in raw_edges
    )
    return OneComplex(tuple(points), tuple(edges), tuple(sorted(set(iso))))


def _vertex_components(cx: OneComplex) -> int:
    n = len(cx.vertices)
    if n == 0:
        return 0
    adj = cx.adjacency()
    seen = [False] * n
    comps = 0
    for start in range(n):
        if seen[start]:
            continue
        comps += 1
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return comps


def classify(cx: OneComplex) -> TopologyReport:
    """Classify a complex as Empty, Point, Path, Cycle, Tree or Other.

    Isolated points count as components of their own but never as vertices,
    so the cycle test (edges > vertices - components) is evaluated on the
    graph part alone.
    """
    degs = cx.degrees()
    hist: dict = {}
    for d in degs:
        hist[d] = hist.get(d, 0) + 1
    graph_comps = _vertex_components(cx)
    comps = graph_comps + len(cx.isolated)
    branch = sum(1 for d in degs if d >= 3)
    has_cycle = cx.edge_count > cx.vertex_count - graph_comps

    if comps == 0:
        cls = "Empty"
    elif cx.edge_count == 0 and cx.vertex_count == 0 and len(cx.isolated) == 1:
        cls = "Point"
    elif comps != 1:
        cls = "Other"
    elif has_cycle:
        cls = "Cycle" if all(d == 2 for d in degs) else "Other"
    elif branch >= 1:
        cls = "Tree"
    else:
        cls = "Path"

    return TopologyReport(
        component_count=comps,
        vertex_count=cx.vertex_count,
        edge_count=cx.edge_count,
        degree_histogram=hist,
        branch_point_count=branch,
        has_cycle=has_cycle,
        classification=cls,
    )


def shadow_complex(chain: PolyChain, axis: int) -> OneComplex:
    """Convenience composition: project then arrange."""
    return build_complex(project(chain, axis))


def extract_chain(cx: OneComplex) -> PolyChain:
    """Rebuild a PolyChain from a complex that classifies Path or Cycle.

    The traversal is canonical: paths start at the lexicographically smaller
    endpoint; cycles start at the smallest vertex and move toward its
    smaller neighbour. The complex is already embedded, so the result is
    constructed without re-running the quadratic simplicity check.
    """
    report = classify(cx)
    if report.classification not in ("Path", "Cycle"):
        raise ValidationError(
            f"cannot extract a chain from a {report.classification} complex"
        )
    adj = cx.adjacency()
    degs = cx.degrees()
    if report.classification == "Path":
        start = min(i for i, d in enumerate(degs) if d == 1)
        order = [start]
        prev = None
        cur = start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        verts = [cx.vertices[i] for i in order]
        return PolyChain(verts, closed=False, validate=False)
    start = 0  # vertices are sorted, so index 0 is the lex-min vertex
    first = min(adj[start])
    order = [start, first]
    prev, cur = start, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        order.append(cur)
    verts = [cx.vertices[i] for i in order]
    return PolyChain(verts, closed=True, validate=False)


def is_convex_cycle(cx: OneComplex) -> bool:
    """True iff the complex is a convex simple closed polygon.

    Convexity here allows collinear degree-2 vertices: the signed turn along
    the traversal must never change sign. A simple closed polygon whose turns
    all agree in sign is convex, so no separate hull test is needed.
    """
    report = classify(cx)
    if report.classification != "Cycle":
        return False
    chain = extract_chain(cx)
    verts = chain.vertices
    n = len(verts)
    sign = 0
    for k in range(n):
        o = verts[k]
        a = verts[(k + 1) % n]
        b = verts[(k + 2) % n]
        c = cross2(o, a, b)
        if c != 0:
            s = 1 if c > 0 else -1
            if sign == 0:
                sign = s
            elif s != sign:
                return False
    return True
