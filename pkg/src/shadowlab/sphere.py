"""Voxelized suspension spheres, their shadows, and retraction evidence.

The carrier is built inductively from a closed lattice curve whose three
shadows are trees. Suspension scales the previous stage linearly toward two
apex points while a new coordinate runs over [-1, 1]; repeating it d times
on the base curve yields a d-sphere whose every shadow should retract to
the origin. This module rasterizes those sets, projects and slices them,
measures Betti numbers of the results over GF(2), and evaluates the
retraction maps exactly in rational arithmetic.

Grid conventions, fixed once and used everywhere:

- The base curve is translated so a vertex sits at the origin, then scaled
  by its largest absolute coordinate, so every stage lives in [-1, 1]^n.
  Without the scaling step, consecutive suspension levels land further than
  one cell apart and the voxel set shatters.
- Resolution r means r lattice cells per unit, so cell k covers
  [k/r, (k+1)/r]. Suspension level k (the copy at height k/r) is rasterized
  into layer k: level planes coincide with lower cell faces.
- Each level copy is rasterized by exact closed-box supercover: every cell
  whose closed box meets a segment is kept. The single exception is a
  scale-zero copy, which is one point and becomes the one cell whose lower
  corner it is, so apexes stay single voxels.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .arrangement import OneComplex, classify, shadow_complex
from .curves import PolyChain
from .errors import BudgetError, EmptySliceError, ValidationError
from .geometry import format_rational

DEFAULT_CELL_CAP = 1_500_000

ZERO2 = (Fraction(0), Fraction(0))


# - voxel sets ------------------------------------------------------------------


@dataclass(frozen=True)
class VoxelSet:
    """Finite set of integer lattice cells at a fixed resolution.

    `offset` records where the model origin's cell ended up after any
    translation; freshly built sets use the zero offset.
    """

    dim: int
    resolution: int
    cells: frozenset
    offset: tuple = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("voxel dimension must be positive")
        if self.resolution < 1:
            raise ValidationError("resolution must be positive")
        if self.offset is None:
            object.__setattr__(self, "offset", (0,) * self.dim)
        if len(self.offset) != self.dim:
            raise ValidationError("offset dimension mismatch")
        for c in self.cells:
            if len(c) != self.dim:
                raise ValidationError("cell dimension mismatch")

    def __len__(self) -> int:
        return len(self.cells)

    def bounds(self):
        """(mins, maxs) per coordinate, or None when empty."""
        if not self.cells:
            return None
        mins = [None] * self.dim
        maxs = [None] * self.dim
        for c in self.cells:
            for i, v in enumerate(c):
                if mins[i] is None or v < mins[i]:
                    mins[i] = v
                if maxs[i] is None or v > maxs[i]:
                    maxs[i] = v
        return tuple(mins), tuple(maxs)

    def sorted_cells(self) -> list:
        return sorted(self.cells)


def format_voxels(v: VoxelSet) -> str:
    """Serialize as: "dim r", bounds line, then one cell per line."""
    b = v.bounds()
    if b is None:
        bounds_line = " ".join(["0"] * (2 * v.dim))
    else:
        bounds_line = " ".join(str(x) for x in b[0] + b[1])
    lines = [f"{v.dim} {v.resolution}", bounds_line]
    lines.extend(" ".join(str(x) for x in c) for c in v.sorted_cells())
    return "\n".join(lines) + "\n"


def parse_voxels(text: str) -> VoxelSet:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if len(lines) < 2:
        raise ValidationError("voxel file needs a header and a bounds line")
    try:
        dim, res = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValidationError(f"bad voxel header: {lines[0]!r}") from exc
    try:
        bounds = [int(t) for t in lines[1].split()]
        cells = [tuple(int(t) for t in ln.split()) for ln in lines[2:]]
    except ValueError as exc:
        raise ValidationError("voxel file contains a non-integer token") from exc
    if len(bounds) != 2 * dim:
        raise ValidationError("bounds line length does not match dimension")
    mins, maxs = bounds[:dim], bounds[dim:]
    for c in cells:
        if len(c) != dim:
            raise ValidationError(f"cell {c} does not match dimension {dim}")
        if any(not mins[i] <= c[i] <= maxs[i] for i in range(dim)):
            raise ValidationError(f"cell {c} outside declared bounds")
    return VoxelSet(dim=dim, resolution=res, cells=frozenset(cells))


def save_voxels(v: VoxelSet, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_voxels(v))


def load_voxels(path) -> VoxelSet:
    with open(path, "r", encoding="ascii") as fh:
        return parse_voxels(fh.read())


# - exact supercover rasterization ----------------------------------------------


def _touched(coord) -> tuple:
    # Cells (along one axis) whose closed unit box contains the coordinate.
    f = math.floor(coord)
    if coord == f:
        return (f - 1, f)
    return (f,)


def supercover_segment(p, q) -> set:
    """Every cell whose closed box meets segment [p, q], exactly.

    Works in any dimension with rational endpoints. Walks the parameter
    values where some coordinate crosses a grid plane and stamps the cells
    touched at each event and between consecutive events.
    """
    n = len(p)
    p = tuple(Fraction(c) for c in p)
    q = tuple(Fraction(c) for c in q)
    ts = {Fraction(0), Fraction(1)}
    for i in range(n):
        d = q[i] - p[i]
        if d == 0:
            continue
        lo, hi = (p[i], q[i]) if p[i] <= q[i] else (q[i], p[i])
        for m in range(math.ceil(lo), math.floor(hi) + 1):
            ts.add(Fraction(m - p[i], d))
    order = sorted(ts)
    cells: set = set()

    def stamp(t):
        x = tuple(p[i] + t * (q[i] - p[i]) for i in range(n))
        cells.update(product(*(_touched(c) for c in x)))

    for t in order:
        stamp(t)
    for a, b in zip(order, order[1:]):
        stamp((a + b) / 2)
    return cells


def supercover_polygon(vertices, closed: bool = True) -> set:
    """Union of segment supercovers along a polygonal chain."""
    verts = [tuple(Fraction(c) for c in v) for v in vertices]
    cells: set = set()
    pairs = list(zip(verts, verts[1:]))
    if closed and len(verts) > 1:
        pairs.append((verts[-1], verts[0]))
    for a, b in pairs:
        cells |= supercover_segment(a, b)
    return cells


# - sphere model ----------------------------------------------------------------


class SphereModel:
    """A d-sphere described by its base curve and suspension count.

    `base` is the input cycle translated so one vertex is the origin; the
    vertex is chosen to minimize the largest absolute coordinate, which
    keeps scaled suspension levels as close together as possible. The
    voxel builder works on this translated chain in its own grid, so
    neighbouring branches of the base sit at most a couple of cells apart
    at every suspension scale. `unit_vertices` divides the chain by its
    extent instead; the retraction evaluator works in that unit box, where
    tolerances are fractions of the whole shadow.
    """

    def __init__(self, d: int, base: PolyChain):
        if not isinstance(d, int) or d < 1:
            raise ValidationError("sphere index d must be a positive integer")
        if not base.closed:
            raise ValidationError("base curve must be a closed chain")
        for ax in (1, 2, 3):
            rep = classify(shadow_complex(base, ax))
            if rep.classification != "Tree":
                raise ValidationError(
                    f"base shadow along axis {ax} is {rep.classification}, not Tree"
                )
        best = None
        for v0 in base.vertices:
            extent = max(
                abs(w[i] - v0[i]) for w in base.vertices for i in range(3)
            )
            key = (extent, v0)
            if best is None or key < best:
                best = key
        extent, v0 = best[0], best[1]
        translated = [tuple(w[i] - v0[i] for i in range(3)) for w in base.vertices]
        self.d = d
        self.base = PolyChain(translated, closed=True)
        self.extent = extent
        self.unit_vertices = tuple(
            tuple(c / extent for c in w) for w in translated
        )
        self.unit_chain = PolyChain(self.unit_vertices, closed=True)

    def level(self, lam) -> tuple:
        """Vertices of the scaled copy at suspension height lam."""
        lam = Fraction(lam)
        if not -1 <= lam <= 1:
            raise ValidationError("level parameter must lie in [-1, 1]")
        s = 1 - abs(lam)
        return tuple(tuple(s * c for c in v) for v in self.unit_vertices)


def build_sphere(model: SphereModel, r: int) -> VoxelSet:
    """Voxelize the suspension of S_d over the height grid {k/r}.

    Layer k covers the heights between levels k and k + 1, so it holds
    every scaled copy of S_d with scale between (r - |k| - 1)/r and
    (r - |k|)/r, not just the copy at the level itself. Sampling the scale
    only at the levels leaves sub-cell gaps between consecutive copies
    that read as spurious loops in the shadows; sweeping the whole scale
    interval closes them, and the sweep is exact because the cell pattern
    of a scaled copy only changes where some scaled vertex coordinate
    crosses a grid plane. The top level contributes the single apex cell;
    the bottom apex cell is already inside the lowest layer's sweep. The
    result for a model of index d lives in dimension d + 3. Raises when
    the built set is not face-connected.
    """
    if model.d not in (1, 2):
        raise ValidationError("voxel output supports d = 1 or d = 2 only")
    if not isinstance(r, int) or r < 8:
        raise ValidationError("resolution must be an integer >= 8")
    if r < 2 * model.extent:
        raise ValidationError(
            f"resolution {r} too small to track suspension levels of a"
            f" base with extent {model.extent}; need r >= {2 * model.extent}"
        )
    coords = sorted({abs(c) for v in model.base.vertices for c in v if c})
    memo: dict = {}

    def scale_samples(lo: Fraction, hi: Fraction) -> list:
        events = {lo, hi}
        for c in coords:
            for k in range(math.ceil(lo * c), math.floor(hi * c) + 1):
                events.add(Fraction(k) / c)
        order = sorted(events)
        for a, b in zip(order, order[1:]):
            events.add((a + b) / 2)
        return sorted(events)

    def band(q: int, lo: int, hi: int) -> frozenset:
        # Cells met by copies of S_q whose height coordinate scale lies in
        # [lo, hi]/r, in q + 2 coordinates. The base keeps its own grid, so
        # the spatial scale runs over [lo, hi]/r in [0, 1].
        key = (q, lo, hi)
        got = memo.get(key)
        if got is not None:
            return got
        acc: set = set()
        if q == 1:
            for s in scale_samples(Fraction(lo, r), Fraction(hi, r)):
                if s == 0:
                    acc.add((0, 0, 0))
                    continue
                poly = [tuple(s * c for c in v) for v in model.base.vertices]
                acc |= supercover_polygon(poly, closed=True)
        else:
            for j in range(-hi, hi):
                near = j if j >= 0 else -(j + 1)
                sub = band(q - 1, max(0, lo - near - 1), hi - near)
                acc.update(c + (j,) for c in sub)
        cells = frozenset(acc)
        memo[key] = cells
        return cells

    cells = set(band(model.d + 1, r, r))
    cells.add((0,) * (model.d + 2) + (r,))
    cells = frozenset(cells)
    out = VoxelSet(dim=model.d + 3, resolution=r, cells=cells)
    if _face_components(cells, out.dim) != 1:
        raise ValidationError(
            f"resolution {r} leaves suspension levels voxel-disconnected"
        )
    return out


def _face_components(cells, dim: int) -> int:
    remaining = set(cells)
    comps = 0
    while remaining:
        comps += 1
        seed = remaining.pop()
        queue = deque([seed])
        while queue:
            c = queue.popleft()
            for i in range(dim):
                for dv in (-1, 1):
                    nb = c[:i] + (c[i] + dv,) + c[i + 1 :]
                    if nb in remaining:
                        remaining.discard(nb)
                        queue.append(nb)
    return comps


def shadow_voxels(v: VoxelSet, axis: int) -> VoxelSet:
    """Coordinate-drop image of the cell set along 1-based axis."""
    if not 1 <= axis <= v.dim:
        raise ValidationError(f"axis must be in 1..{v.dim}")
    i = axis - 1
    cells = frozenset(c[:i] + c[i + 1 :] for c in v.cells)
    return VoxelSet(
        dim=v.dim - 1,
        resolution=v.resolution,
        cells=cells,
        offset=v.offset[:i] + v.offset[i + 1 :],
    )


def slice_voxels(v: VoxelSet, axis: int, value: int) -> VoxelSet:
    """Cells with the given coordinate value, that coordinate dropped.

    A value outside the set's bounds is a ValidationError; a value inside
    the bounds that hits nothing raises EmptySliceError instead.
    """
    if not 1 <= axis <= v.dim:
        raise ValidationError(f"axis must be in 1..{v.dim}")
    b = v.bounds()
    if b is None:
        raise ValidationError("cannot slice an empty voxel set")
    i = axis - 1
    if not b[0][i] <= value <= b[1][i]:
        raise ValidationError(
            f"slice value {value} outside bounds [{b[0][i]}, {b[1][i]}]"
        )
    cells = frozenset(c[:i] + c[i + 1 :] for c in v.cells if c[i] == value)
    if not cells:
        raise EmptySliceError(f"no cells at coordinate {value} on axis {axis}")
    return VoxelSet(
        dim=v.dim - 1,
        resolution=v.resolution,
        cells=cells,
        offset=v.offset[:i] + v.offset[i + 1 :],
    )


# - cubical homology over GF(2) -------------------------------------------------
#
# Cells are encoded with doubled coordinates: the top cell at lattice point
# c becomes 2c + 1 componentwise, and a tuple with q odd entries is a
# q-dimensional face. Flipping an odd entry by one steps to a facet.


def _closure(cells, dim: int) -> set:
    closed: set = set()
    for c in cells:
        base = tuple(2 * x for x in c)
        for off in product((0, 1, 2), repeat=dim):
            closed.add(tuple(b + o for b, o in zip(base, off)))
    return closed


def _cell_dim(cell) -> int:
    return sum(1 for x in cell if x % 2)


def _faces(cell):
    for k, x in enumerate(cell):
        if x % 2:
            yield cell[:k] + (x - 1,) + cell[k + 1 :]
            yield cell[:k] + (x + 1,) + cell[k + 1 :]


def _cofaces(cell, present):
    for k, x in enumerate(cell):
        if x % 2 == 0:
            for w in (x - 1, x + 1):
                cof = cell[:k] + (w,) + cell[k + 1 :]
                if cof in present:
                    yield cof


def _collapse(present: set) -> None:
    # Remove free face / unique coface pairs until none remain. Elementary
    # collapses preserve the homotopy type and typically shrink the complex
    # by two orders of magnitude before the rank computation.
    queue = deque(present)
    while queue:
        x = queue.popleft()
        if x not in present:
            continue
        cofs = []
        for cof in _cofaces(x, present):
            cofs.append(cof)
            if len(cofs) > 1:
                break
        if len(cofs) != 1:
            continue
        c = cofs[0]
        present.discard(x)
        present.discard(c)
        for nb in _faces(x):
            if nb in present:
                queue.append(nb)
        for nb in _faces(c):
            if nb in present:
                queue.append(nb)


def _gf2_rank(columns) -> int:
    rank = 0
    pivots: dict = {}
    for col in columns:
        cur = col
        while cur:
            h = cur.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = cur
                rank += 1
                break
            cur ^= p
    return rank


def betti(v: VoxelSet, max_cells: int = DEFAULT_CELL_CAP) -> tuple:
    """Betti numbers (b0, b1) or (b0, b1, b2) of the cubical complex.

    The complex is the cell set plus all faces; ranks of the GF(2)
    boundary maps give b_k = null(d_k) - rank(d_{k+1}). Complexes larger
    than max_cells after closure are refused.
    """
    if v.dim not in (2, 3):
        raise ValidationError("betti supports dimensions 2 and 3")
    if not v.cells:
        return (0, 0) if v.dim == 2 else (0, 0, 0)
    present = _closure(v.cells, v.dim)
    if len(present) > max_cells:
        raise BudgetError(
            f"cubical complex has {len(present)} cells, cap is {max_cells}"
        )
    _collapse(present)
    by_dim: dict = {q: [] for q in range(v.dim + 1)}
    for cell in present:
        by_dim[_cell_dim(cell)].append(cell)
    counts = {q: len(by_dim[q]) for q in by_dim}
    ranks = {}
    for q in range(1, v.dim + 1):
        if not by_dim[q]:
            ranks[q] = 0
            continue
        index = {cell: i for i, cell in enumerate(by_dim[q - 1])}
        cols = []
        for cell in by_dim[q]:
            mask = 0
            for f in _faces(cell):
                mask ^= 1 << index[f]
            cols.append(mask)
        ranks[q] = _gf2_rank(cols)
    b0 = counts[0] - ranks[1]
    b1 = counts[1] - ranks[1] - ranks[2]
    if v.dim == 2:
        return (b0, b1)
    b2 = counts[2] - ranks[2] - ranks[3]
    return (b0, b1, b2)


# - retraction maps -------------------------------------------------------------


def _d1(a, b) -> Fraction:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _project_to_segment(p, a, b):
    # Closest point on [a, b] to p, with squared distance; all rational.
    ex, ey = b[0] - a[0], b[1] - a[1]
    wx, wy = p[0] - a[0], p[1] - a[1]
    den = ex * ex + ey * ey
    t = (wx * ex + wy * ey) / den
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    q = (a[0] + t * ex, a[1] + t * ey)
    dx, dy = p[0] - q[0], p[1] - q[1]
    return q, dx * dx + dy * dy


class _TreeFlow:
    """Geodesic flow toward the origin on a planar tree of segments.

    Paths are parametrized by cumulative L1 length, which keeps every
    intermediate point rational; the geodesic itself does not depend on the
    choice of length. The origin must lie on the tree and becomes the root.
    """

    def __init__(self, cx: OneComplex):
        points = list(cx.vertices)
        edges = list(cx.edges)
        if ZERO2 in points:
            root = points.index(ZERO2)
        else:
            root = None
            for k, (i, j) in enumerate(edges):
                a, b = points[i], points[j]
                _, d2 = _project_to_segment(ZERO2, a, b)
                if d2 == 0:
                    points.append(ZERO2)
                    root = len(points) - 1
                    edges[k] = (i, root)
                    edges.append((root, j))
                    break
            if root is None:
                raise ValidationError("origin does not lie on the shadow tree")
        self.points = points
        self.edges = [(min(i, j), max(i, j)) for i, j in edges]
        adj = [[] for _ in points]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        self.root = root
        parent = [None] * len(points)
        dist = [None] * len(points)
        dist[root] = Fraction(0)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] is None:
                    dist[w] = dist[u] + _d1(points[u], points[w])
                    parent[w] = u
                    queue.append(w)
        if any(d is None for d in dist):
            raise ValidationError("shadow tree is not connected")
        self.parent = parent
        self.dist = dist
        self._vertex_index = {p: i for i, p in enumerate(points)}

    def locate(self, p, tol=Fraction(0)):
        """('v', idx) or ('e', edge_idx) for p on the tree, else None.

        With a positive tolerance, a point within tol of the tree is
        snapped to its closest edge point first; the snapped point is
        returned as the third element.
        """
        p = (Fraction(p[0]), Fraction(p[1]))
        idx = self._vertex_index.get(p)
        if idx is not None:
            return ("v", idx, p)
        best = None
        for k, (i, j) in enumerate(self.edges):
            q, d2 = _project_to_segment(p, self.points[i], self.points[j])
            if d2 == 0:
                return ("e", k, p)
            if best is None or d2 < best[0]:
                best = (d2, k, q)
        if tol > 0 and best is not None and best[0] <= tol * tol:
            q = best[2]
            idx = self._vertex_index.get(q)
            if idx is not None:
                return ("v", idx, q)
            return ("e", best[1], q)
        return None

    def _path_from_root(self, loc) -> list:
        # [(point, cumdist from root)], ending at the located point.
        kind, k, p = loc
        if kind == "v":
            side = k
        else:
            i, j = self.edges[k]
            di = self.dist[i] + _d1(p, self.points[i])
            dj = self.dist[j] + _d1(p, self.points[j])
            side = i if di <= dj else j
        nodes = []
        u = side
        while u is not None:
            nodes.append(u)
            u = self.parent[u]
        nodes.reverse()
        path = [(self.points[u], self.dist[u]) for u in nodes]
        if kind == "e" and p != self.points[side]:
            path.append((p, self.dist[side] + _d1(p, self.points[side])))
        return path

    def flow(self, p, lam: Fraction):
        """Point a fraction lam of the way from p to the root, along the tree."""
        loc = self.locate(p)
        if loc is None:
            raise ValidationError(f"point {p} is not on the shadow tree")
        if lam == 0:
            return loc[2]
        path = self._path_from_root(loc)
        total = path[-1][1]
        target = (1 - lam) * total
        if target == 0:
            return self.points[self.root]
        prev_pt, prev_c = path[0]
        for pt, c in path[1:]:
            if target <= c:
                t = (target - prev_c) / (c - prev_c)
                return (
                    prev_pt[0] + t * (pt[0] - prev_pt[0]),
                    prev_pt[1] + t * (pt[1] - prev_pt[1]),
                )
            prev_pt, prev_c = pt, c
        return path[-1][0]

    def dist2_scaled(self, p, cap: Fraction) -> Fraction:
        """Squared distance from p to the tree scaled by cap."""
        if cap == 0:
            return p[0] * p[0] + p[1] * p[1]
        best = None
        for i, j in self.edges:
            a = tuple(cap * c for c in self.points[i])
            b = tuple(cap * c for c in self.points[j])
            _, d2 = _project_to_segment(p, a, b)
            if best is None or d2 < best:
                best = d2
        return best

    def sample_pair(self, rng: random.Random):
        """Two nearby exact points on the same edge."""
        i, j = self.edges[rng.randrange(len(self.edges))]
        a, b = self.points[i], self.points[j]
        t = Fraction(rng.randrange(0, 65), 64)
        t2 = t - Fraction(1, 256) if t > Fraction(1, 2) else t + Fraction(1, 256)

        def at(s):
            return (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))

        return at(t), at(t2)


def _sample_sphere_pair(model: SphereModel, q: int, rng: random.Random):
    # Two nearby exact points on the q-fold construction over the base.
    if q == 1:
        verts = model.unit_vertices
        k = rng.randrange(len(verts))
        a, b = verts[k], verts[(k + 1) % len(verts)]
        t = Fraction(rng.randrange(0, 65), 64)
        t2 = t - Fraction(1, 256) if t > Fraction(1, 2) else t + Fraction(1, 256)

        def at(s):
            return tuple(a[i] + s * (b[i] - a[i]) for i in range(3))

        return at(t), at(t2)
    lam = Fraction(rng.randrange(-32, 33), 32)
    s = 1 - abs(lam)
    inner, inner2 = _sample_sphere_pair(model, q - 1, rng)
    return (
        tuple(s * c for c in inner) + (lam,),
        tuple(s * c for c in inner2) + (lam,),
    )


class RetractionEvaluator:
    """Exact evaluator for the retraction of one shadow of S_d.

    Axis 1..d+1 shadows decompose into suspension slices and recurse down
    to geodesic tree flow on the base shadow; the last axis sees the cone
    over S_{d-1} and retracts by linear scaling. All arithmetic is
    rational, so the endpoint identities are exact, not approximate.
    """

    def __init__(self, model: SphereModel, axis: int, d: Optional[int] = None):
        if d is None:
            d = model.d + 1
        if not 1 <= axis <= d + 2:
            raise ValidationError(f"axis must be in 1..{d + 2} for d={d}")
        self.model = model
        self.d = d
        self.axis = axis
        self.tol = Fraction(1, 16)
        self._flow = None
        self._sub = None
        if d == 1:
            cx = shadow_complex(model.unit_chain, axis)
            rep = classify(cx)
            if rep.classification != "Tree":
                raise ValidationError("base shadow must classify as Tree")
            self._flow = _TreeFlow(cx)
        elif axis != d + 2:
            self._sub = RetractionEvaluator(model, axis, d - 1)

    # domain dimension of points this evaluator accepts
    @property
    def point_dim(self) -> int:
        return self.d + 1

    def contains(self, x, tol=Fraction(0), cap=Fraction(1)) -> bool:
        """Whether x lies on the shadow, testing slice-wise within tol.

        Suspension coordinates are peeled exactly; the in-slice test at the
        bottom allows a Euclidean deviation of tol. The cone branch solves
        for an exact scaled-copy membership instead.
        """
        x = tuple(Fraction(c) for c in x)
        if len(x) != self.point_dim:
            raise ValidationError(
                f"expected a point of dimension {self.point_dim}"
            )
        if self.d == 1:
            return self._flow.dist2_scaled(x, cap) <= tol * tol
        if self.axis == self.d + 2:
            return _on_cone(self.model, x, cap)
        t = x[-1]
        if abs(t) > cap:
            return False
        return self._sub.contains(x[:-1], tol, cap - abs(t))

    def eval(self, x, lam) -> tuple:
        """F(x, lam); validates the domain and the parameter range."""
        x = tuple(Fraction(c) for c in x)
        lam = Fraction(lam)
        if not 0 <= lam <= 1:
            raise ValidationError("retraction parameter must lie in [0, 1]")
        if not self.contains(x, self.tol):
            raise ValidationError("point is outside the shadow")
        return self._eval(x, lam)

    def _eval(self, x, lam: Fraction) -> tuple:
        if self.d == 1:
            return self._flow.flow(x, lam)
        if self.axis == self.d + 2:
            return tuple((1 - lam) * c for c in x)
        if lam < Fraction(1, 2):
            return self._fprime(x, 2 * lam)
        y = self._fprime(x, Fraction(1))
        s = 2 - 2 * lam
        return tuple(s * c for c in y)

    def _fprime(self, x, mu: Fraction) -> tuple:
        # Slice-preserving stage: flow within the suspension level of x.
        t = x[-1]
        if abs(t) == 1:
            return x
        s = 1 - abs(t)
        inner = tuple(c / s for c in x[:-1])
        y = self._sub._eval(inner, mu)
        return tuple(s * c for c in y) + (t,)

    def sample_pair(self, rng: random.Random):
        """Two nearby exact domain points, for continuity probing."""
        if self.d == 1:
            return self._flow.sample_pair(rng)
        if self.axis == self.d + 2:
            s = Fraction(rng.randrange(0, 33), 32)
            inner, inner2 = _sample_sphere_pair(self.model, self.d - 1, rng)
            return (
                tuple(s * c for c in inner),
                tuple(s * c for c in inner2),
            )
        t = Fraction(rng.randrange(-32, 33), 32)
        s = 1 - abs(t)
        inner, inner2 = self._sub.sample_pair(rng)
        return (
            tuple(s * c for c in inner) + (t,),
            tuple(s * c for c in inner2) + (t,),
        )


def _on_cone(model: SphereModel, x, cap: Fraction) -> bool:
    # Membership in the union of all copies of S_{d-1} scaled by s <= cap.
    # Peeling a suspension coordinate turns the scale bound from cap into
    # cap - |coordinate|, so only the base case needs solving.
    while len(x) > 3:
        cap = cap - abs(x[-1])
        if cap < 0:
            return False
        x = x[:-1]
    verts = model.unit_vertices
    m = len(verts)
    for k in range(m):
        a, b = verts[k], verts[(k + 1) % m]
        if _on_scaled_segment(x, a, b, cap):
            return True
    return False


def _on_scaled_segment(x, a, b, cap: Fraction) -> bool:
    # Does s*a + u*(b - a) = x admit 0 <= u <= s <= cap?
    e = tuple(b[i] - a[i] for i in range(3))
    for p in range(3):
        for q in range(p + 1, 3):
            den = a[p] * e[q] - a[q] * e[p]
            if den == 0:
                continue
            s = (x[p] * e[q] - x[q] * e[p]) / den
            u = (a[p] * x[q] - a[q] * x[p]) / den
            r = 3 - p - q
            if s * a[r] + u * e[r] != x[r]:
                return False
            return 0 <= u <= s <= cap
    # a and e parallel: the whole scaled family lies on one line.
    w = a if any(a) else e
    if not any(w):
        return all(c == 0 for c in x)
    wi = next(i for i in range(3) if w[i])
    for i in range(3):
        if x[i] * w[wi] != x[wi] * w[i]:
            return False
    xi = x[wi] / w[wi]
    alpha = a[wi] / w[wi]
    beta = e[wi] / w[wi]
    # Need s*alpha + u*beta = xi with 0 <= u <= s <= cap.
    if beta == 0:
        if alpha == 0:
            return xi == 0
        s = xi / alpha
        return 0 <= s <= cap
    lo, hi = sorted((Fraction(0), beta))
    # Reachable xi for fixed s is s*[alpha + lo, alpha + hi].
    lo, hi = alpha + lo, alpha + hi
    span_lo = min(Fraction(0), cap * lo)
    span_hi = max(Fraction(0), cap * hi)
    return span_lo <= xi <= span_hi


def eval_retraction(ev: RetractionEvaluator, x, lam) -> tuple:
    """Evaluate the retraction map at (x, lam)."""
    return ev.eval(x, lam)


@dataclass(frozen=True)
class RetractionReport:
    samples: int
    endpoint_failures: int
    branch_failures: int
    containment_failures: int
    stretch_estimate: float
    witnesses: tuple = ()

    @property
    def all_ok(self) -> bool:
        return (
            self.endpoint_failures == 0
            and self.branch_failures == 0
            and self.containment_failures == 0
        )

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "endpointFailures": self.endpoint_failures,
            "branchFailures": self.branch_failures,
            "containmentFailures": self.containment_failures,
            "stretchEstimate": self.stretch_estimate,
            "witnesses": list(self.witnesses),
            "allOk": self.all_ok,
        }


def verify_retraction(
    ev: RetractionEvaluator,
    samples: int,
    seed: int = 0,
    tol=Fraction(1, 16),
) -> RetractionReport:
    """Sample (x, lam) and check the deformation-retraction obligations.

    Per sample: F(x, 0) = x and F(x, 1) = 0 must hold exactly; on piecewise
    evaluators both halves of the parameter split must agree at 1/2
    exactly; F(x, lam) must lie within tol of the shadow; and the output
    displacement between two nearby inputs is accumulated into a stretch
    estimate, reported but not judged.
    """
    tol = Fraction(tol)
    zero = (Fraction(0),) * ev.point_dim
    endpoint = branch = containment = 0
    witnesses = []
    stretch = 0.0
    piecewise = ev.d >= 2 and ev.axis != ev.d + 2

    def note(kind, idx, x, lam):
        if len(witnesses) < 5:
            witnesses.append(
                {
                    "kind": kind,
                    "index": idx,
                    "x": [format_rational(c) for c in x],
                    "lambda": format_rational(lam),
                }
            )

    for idx in range(samples):
        rng = random.Random(f"{seed}:retract{idx}")
        x, x2 = ev.sample_pair(rng)
        lam = Fraction(rng.randrange(0, 65), 64)
        if ev._eval(x, Fraction(0)) != x or ev._eval(x, Fraction(1)) != zero:
            endpoint += 1
            note("endpoint", idx, x, lam)
        if piecewise:
            half = Fraction(1, 2)
            low = ev._fprime(x, 2 * half)
            high = tuple((2 - 2 * half) * c for c in ev._fprime(x, Fraction(1)))
            if low != high or ev._eval(x, half) != high:
                branch += 1
                note("branch", idx, x, half)
        y = ev._eval(x, lam)
        if not ev.contains(y, tol):
            containment += 1
            note("containment", idx, x, lam)
        delta = max(abs(p - q) for p, q in zip(x, x2))
        if delta > 0:
            y2 = ev._eval(x2, lam)
            move = max(abs(p - q) for p, q in zip(y, y2))
            ratio = float(move / delta)
            if ratio > stretch:
                stretch = ratio
    return RetractionReport(
        samples=samples,
        endpoint_failures=endpoint,
        branch_failures=branch,
        containment_failures=containment,
        stretch_estimate=stretch,
        witnesses=tuple(witnesses),
    )
