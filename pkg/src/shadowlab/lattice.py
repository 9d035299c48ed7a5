"""Integer-only primitives for lattice curve searches.

Everything here exists to keep the search loops in pure machine-int
arithmetic. The generic pipeline (curves + arrangement) stays the source of
truth; the fast paths below agree with it on classification, branch counts,
connectivity and cycle detection, and the test suite pins that agreement.
Vertex and edge counts may differ, because the generic arrangement merges
collinear runs while the unit-edge graph keeps every lattice point.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import Iterable, Optional

# - small integer vector helpers ---------------------------------------------


def ivsub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def idot(a: tuple, b: tuple) -> int:
    return sum(x * y for x, y in zip(a, b))


def icross2(a: tuple, b: tuple) -> int:
    return a[0] * b[1] - a[1] * b[0]


def icross3(a: tuple, b: tuple) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def iprimitive(d: tuple) -> tuple:
    g = 0
    for x in d:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in d)


def drop_coord(p: tuple, i: int) -> tuple:
    return p[:i] + p[i + 1 :]


# - 3D segment relations (exact, ints) ---------------------------------------


def seg3_disjoint(p: tuple, q: tuple, a: tuple, b: tuple) -> bool:
    """Whether closed segments [p,q] and [a,b] in Z^3 share no point."""
    d1 = ivsub(q, p)
    d2 = ivsub(b, a)
    w = ivsub(a, p)
    n = icross3(d1, d2)
    if n != (0, 0, 0):
        # Skew unless coplanar.
        if idot(n, w) != 0:
            return True
        # Coplanar, non-parallel: one candidate crossing point.
        for k in range(3):
            if n[k] != 0:
                u1 = drop_coord(d1, k)
                u2 = drop_coord(d2, k)
                ww = drop_coord(w, k)
                den = icross2(u1, u2)
                s_num = icross2(ww, u2)
                t_num = icross2(ww, u1)
                if den < 0:
                    den, s_num, t_num = -den, -s_num, -t_num
                return not (0 <= s_num <= den and 0 <= t_num <= den)
        raise AssertionError("unreachable")
    # Parallel.
    if icross3(d1, w) != (0, 0, 0):
        return True
    # Collinear: compare 1D spans along d1.
    L = idot(d1, d1)
    if L == 0:
        # p == q degenerate: point-on-segment test against [a,b].
        if icross3(d2, w) != (0, 0, 0):
            return True
        t = idot(ivsub(p, a), d2)
        return not (0 <= t <= idot(d2, d2))
    ta = idot(w, d1)
    tb = idot(ivsub(b, p), d1)
    lo, hi = (ta, tb) if ta <= tb else (tb, ta)
    return hi < 0 or lo > L


def chain3_extends_simple(verts: list, new: tuple, corners_only: bool) -> bool:
    """Whether appending `new` keeps the open 3D chain simple.

    `verts` is assumed simple already. With corners_only, a collinear
    continuation at the junction vertex is also rejected, so every interior
    vertex of an accepted chain is a genuine corner.
    """
    last = verts[-1]
    if new == last:
        return False
    if len(verts) >= 2:
        u = ivsub(verts[-2], last)
        w = ivsub(new, last)
        if icross3(u, w) == (0, 0, 0):
            if idot(u, w) > 0:
                return False  # doubles back over the previous segment
            if corners_only:
                return False  # straight continuation, not a corner
    for k in range(len(verts) - 2):
        if not seg3_disjoint(verts[k], verts[k + 1], last, new):
            return False
    return True


def close_cycle_ok(verts: list) -> bool:
    """Whether the closing segment last->first keeps a unit cycle simple.

    Assumes the open part is simple and all steps are unit steps, so the
    closing edge only needs checking against non-adjacent edges and the two
    junction vertices cannot double back (unit edges of distinct endpoints).
    """
    n = len(verts)
    if n < 4:
        return False
    for k in range(1, n - 2):
        if not seg3_disjoint(verts[k], verts[k + 1], verts[-1], verts[0]):
            return False
    return True


# - unit-step shadow classification ------------------------------------------

UNIT_STEPS_3D = (
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (0, 0, 1),
    (0, 0, -1),
)


class UnitShadow:
    """Classification of the shadow of a unit-step lattice chain.

    Mirrors the arrangement classifier on unit-edge graphs: unit grid edges
    only meet at lattice points, so the projected walk's distinct unit edges
    are already a 1-complex.
    """

    __slots__ = ("classification", "branch_count", "has_cycle", "components", "adj")

    def __init__(self, classification, branch_count, has_cycle, components, adj):
        self.classification = classification
        self.branch_count = branch_count
        self.has_cycle = has_cycle
        self.components = components
        self.adj = adj

    def chain_points(self) -> Optional[list]:
        """Ordered points when the shadow is a Path or Cycle, else None."""
        if self.classification not in ("Path", "Cycle"):
            return None
        adj = self.adj
        if self.classification == "Path":
            start = min(p for p, nb in adj.items() if len(nb) == 1)
        else:
            start = min(adj)
        pts = [start]
        prev = None
        cur = start
        while True:
            nxt = None
            for nb in sorted(adj[cur]):
                if nb != prev:
                    nxt = nb
                    break
            if nxt is None:
                return pts  # path end
            if nxt == start:
                return pts  # cycle closed
            pts.append(nxt)
            prev, cur = cur, nxt


def classify_unit_shadow(verts: list, closed: bool, axis: int) -> UnitShadow:
    """Classify the shadow along `axis` (1-based) of a unit-step chain."""
    i = axis - 1
    n = len(verts)
    pts = [drop_coord(v, i) for v in verts]
    edges = set()
    m = n if closed else n - 1
    for k in range(m):
        p = pts[k]
        q = pts[(k + 1) % n]
        if p != q:
            edges.add((p, q) if p < q else (q, p))
    if not edges:
        return UnitShadow("Point", 0, False, 1, {})
    adj: dict = {}
    for p, q in edges:
        adj.setdefault(p, set()).add(q)
        adj.setdefault(q, set()).add(p)
    seen = set()
    comps = 0
    for root in adj:
        if root in seen:
            continue
        comps += 1
        stack = [root]
        seen.add(root)
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    V = len(adj)
    E = len(edges)
    branch = sum(1 for nb in adj.values() if len(nb) >= 3)
    has_cycle = E > V - comps
    if comps != 1:
        cls = "Other"
    elif has_cycle:
        cls = "Cycle" if all(len(nb) == 2 for nb in adj.values()) else "Other"
    elif branch >= 1:
        cls = "Tree"
    else:
        cls = "Path"
    return UnitShadow(cls, branch, has_cycle, comps, adj)


def strand_count(points: list, closed: bool, axis0: int) -> int:
    """Number of strands along coordinate axis0 of an integer chain.

    Counts alternations between visits to the minimum and maximum values in
    the vertex sequence (cyclically for closed chains). Piecewise-linear
    curves attain extremes at vertices, so vertex values suffice. Returns 0
    on a degenerate axis.
    """
    vals = [p[axis0] for p in points]
    lo = min(vals)
    hi = max(vals)
    if lo == hi:
        return 0
    letters = []
    for v in vals:
        if v == lo:
            c = 0
        elif v == hi:
            c = 1
        else:
            continue
        if not letters or letters[-1] != c:
            letters.append(c)
    if len(letters) < 2:
        return 0
    if not closed:
        return len(letters) - 1
    k = len(letters)
    return sum(1 for idx in range(k) if letters[idx] != letters[(idx + 1) % k])


# - signed axis permutations and canonical forms ------------------------------

_SIGNED_PERMS: dict = {}


def signed_perms(dim: int) -> tuple:
    """All 2^dim * dim! signed permutations as (perm, signs) pairs."""
    if dim not in _SIGNED_PERMS:
        out = []
        for perm in permutations(range(dim)):
            for mask in range(1 << dim):
                signs = tuple(-1 if mask >> k & 1 else 1 for k in range(dim))
                out.append((perm, signs))
        _SIGNED_PERMS[dim] = tuple(out)
    return _SIGNED_PERMS[dim]


def apply_signed_perm(v: tuple, perm: tuple, signs: tuple) -> tuple:
    return tuple(signs[k] * v[perm[k]] for k in range(len(v)))


def _translated_to_origin(seq: list) -> tuple:
    dim = len(seq[0])
    mins = [min(v[k] for v in seq) for k in range(dim)]
    return tuple(tuple(v[k] - mins[k] for k in range(dim)) for v in seq)


def canonical_chain_form(verts: Iterable, closed: bool) -> tuple:
    """Least vertex sequence over signed permutations x translation x
    traversal changes (reversal, and rotation for closed chains)."""
    base = [tuple(v) for v in verts]
    dim = len(base[0])
    seqs = [base, base[::-1]]
    if closed:
        n = len(base)
        seqs = []
        for rot in range(n):
            r = base[rot:] + base[:rot]
            seqs.append(r)
            seqs.append(r[::-1])
    best = None
    for seq in seqs:
        for perm, signs in signed_perms(dim):
            cand = _translated_to_origin(
                [apply_signed_perm(v, perm, signs) for v in seq]
            )
            if best is None or cand < best:
                best = cand
    return best


class DeltaCanon:
    """Prefix test for lexicographic minimality of a delta sequence.

    Tracks which signed permutations still tie with the identity on the
    prefix built so far. push(d) returns None when some permutation maps the
    extended prefix strictly below it (the prefix can never start a canonical
    sequence), otherwise an undo token for pop().
    """

    __slots__ = ("dim", "active", "_trail")

    def __init__(self, dim: int):
        self.dim = dim
        self.active = [
            (perm, signs)
            for perm, signs in signed_perms(dim)
            if (perm, signs) != (tuple(range(dim)), (1,) * dim)
        ]
        self._trail: list = []

    def push(self, d: tuple):
        survivors = []
        for perm, signs in self.active:
            img = apply_signed_perm(d, perm, signs)
            if img < d:
                return None
            if img == d:
                survivors.append((perm, signs))
        token = self.active
        self._trail.append(token)
        self.active = survivors
        return token

    def pop(self) -> None:
        self.active = self._trail.pop()


# - incremental planar shadow profile -----------------------------------------


def _dirs_over(x: tuple, p: tuple, q: tuple, e: tuple) -> frozenset:
    """Outward primitive directions of segment (p,q) at a point x on it."""
    if x == p:
        return frozenset((e,))
    if x == q:
        return frozenset(((-e[0], -e[1]),))
    return frozenset((e, (-e[0], -e[1])))


class ShadowProfile:
    """Branch bookkeeping for a growing union of integer 2D segments.

    Tracks, at every segment endpoint, the set of distinct primitive outward
    directions of the union. For a union of straight segments, points of
    degree >= 3 and transversal interior crossings are the only ways a shadow
    stops being locally an arc, and both are permanent once present, so
    try_add refuses them outright. Intended for segments produced by
    projecting a connected chain; connectivity of the union is then automatic
    and is not tracked here.
    """

    __slots__ = ("dirs", "segs")

    def __init__(self):
        self.dirs: dict = {}
        self.segs: list = []

    def clone(self) -> "ShadowProfile":
        other = ShadowProfile.__new__(ShadowProfile)
        other.dirs = dict(self.dirs)
        other.segs = list(self.segs)
        return other

    def try_add(self, p: tuple, q: tuple):
        """Add segment (p, q); returns an undo token, or None when the union
        can no longer be a simple closed or open curve. p == q is a no-op."""
        if p == q:
            return (False, [])
        d = (q[0] - p[0], q[1] - p[1])
        e = iprimitive(d)
        updates: dict = {p: {e}, q: {(-e[0], -e[1])}}

        def touch(x, dirset):
            updates.setdefault(x, set()).update(dirset)

        for a, b, et in self.segs:
            dt = (b[0] - a[0], b[1] - a[1])
            w = (a[0] - p[0], a[1] - p[1])
            denom = icross2(d, dt)
            if denom == 0:
                if icross2(d, w) != 0:
                    continue  # parallel, different lines
                # Same line: 1D overlap along d.
                L = idot(d, d)
                la = idot(w, d)
                lb = idot((b[0] - p[0], b[1] - p[1]), d)
                if la > lb:
                    la, lb = lb, la
                lo = max(0, la)
                hi = min(L, lb)
                if lo > hi:
                    continue
                for lam in (lo, hi) if lo != hi else (lo,):
                    if lam == 0:
                        x = p
                    elif lam == L:
                        x = q
                    elif lam == la or lam == lb:
                        x = a if idot(w, d) == lam else b
                    else:
                        raise AssertionError("overlap endpoint not a segment endpoint")
                    touch(x, _dirs_over(x, p, q, e))
                    touch(x, _dirs_over(x, a, b, et))
                continue
            o_a = icross2(d, w)
            o_b = icross2(d, (b[0] - p[0], b[1] - p[1]))
            o_p = icross2(dt, (p[0] - a[0], p[1] - a[1]))
            o_q = icross2(dt, (q[0] - a[0], q[1] - a[1]))
            if (o_a > 0 and o_b > 0) or (o_a < 0 and o_b < 0):
                continue
            if (o_p > 0 and o_q > 0) or (o_p < 0 and o_q < 0):
                continue
            if o_a != 0 and o_b != 0 and o_p != 0 and o_q != 0:
                return None  # transversal interior crossing
            # Endpoint touches; every touch point is a segment endpoint.
            Lt = idot(dt, dt)
            Ls = idot(d, d)
            if o_a == 0:
                lam = idot(w, d)
                if 0 <= lam <= Ls:
                    touch(a, _dirs_over(a, p, q, e))
                    touch(a, frozenset((et,)))
            if o_b == 0:
                lam = idot((b[0] - p[0], b[1] - p[1]), d)
                if 0 <= lam <= Ls:
                    touch(b, _dirs_over(b, p, q, e))
                    touch(b, frozenset(((-et[0], -et[1]),)))
            if o_p == 0:
                lam = idot((p[0] - a[0], p[1] - a[1]), dt)
                if 0 <= lam <= Lt:
                    touch(p, _dirs_over(p, a, b, et))
            if o_q == 0:
                lam = idot((q[0] - a[0], q[1] - a[1]), dt)
                if 0 <= lam <= Lt:
                    touch(q, _dirs_over(q, a, b, et))

        newvals = []
        for x, add in updates.items():
            old = self.dirs.get(x, frozenset())
            new = old | add
            if len(new) >= 3:
                return None
            if new != old:
                newvals.append((x, old, new))
        dirty = []
        for x, old, new in newvals:
            dirty.append((x, old))
            self.dirs[x] = new
        self.segs.append((p, q, e))
        return (True, dirty)

    def undo(self, token) -> None:
        seg_added, dirty = token
        if seg_added:
            self.segs.pop()
        for x, old in dirty:
            if old:
                self.dirs[x] = old
            else:
                del self.dirs[x]

    def open_points(self) -> list:
        """Points where the union currently ends (degree 1)."""
        return [x for x, v in self.dirs.items() if len(v) == 1]

    def is_cycle(self) -> bool:
        """Whether the union of a connected chain's shadow is a simple
        closed curve: some material, and degree exactly 2 everywhere."""
        return bool(self.segs) and all(len(v) == 2 for v in self.dirs.values())

    def is_path(self) -> bool:
        """Simple open curve: exactly two degree-1 points, the rest 2."""
        if not self.segs:
            return False
        ends = 0
        for v in self.dirs.values():
            if len(v) == 1:
                ends += 1
            elif len(v) != 2:
                return False
        return ends == 2
