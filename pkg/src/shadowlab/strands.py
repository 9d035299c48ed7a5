"""Strand decomposition of simple curves and strand lifting.

For a chain whose coordinate i ranges over [lo, hi] with lo < hi, an
x_i-strand is a minimal subpath with one endpoint at value lo, the other at
value hi, and every interior point strictly between. Strands are computed
from the plateau structure of the piecewise-linear coordinate function:
between two consecutive plateaus of opposite extreme values lies exactly one
strand, running from the last parameter of the first plateau to the first
parameter of the second. That tie-break keeps strands minimal when the curve
dwells at an extreme value.

Parameters live in [0, m] for open chains and on the circle [0, m) for
closed ones, m being the segment count. A strand stores its parameter
interval (u, v), traversed forward and possibly wrapping on closed hosts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arrangement import OneComplex, classify, extract_chain, shadow_complex
from .curves import PolyChain, local_axis, shadow_axes
from .errors import DegenerateAxisError, ValidationError
from .geometry import canonical_union


def extremes(chain: PolyChain, axis: int) -> tuple:
    """Smallest and largest value of coordinate `axis` (1-based) on the chain."""
    if not 1 <= axis <= chain.dim:
        raise ValidationError(f"axis {axis} out of range 1..{chain.dim}")
    vals = [v[axis - 1] for v in chain.vertices]
    return (min(vals), max(vals))


def _plateaus(chain: PolyChain, axis0: int, value) -> list:
    """Maximal parameter intervals where coordinate axis0 equals value.

    Returns (start, end) pairs. On closed chains both lie in [0, m) and a
    wrapping plateau is encoded by start > end; at most one interval wraps.
    """
    verts = chain.vertices
    n = len(verts)
    m = chain.param_span
    raw = []
    for k in range(m):
        f0 = verts[k][axis0]
        f1 = verts[(k + 1) % n][axis0]
        if f0 == value and f1 == value:
            raw.append((Fraction(k), Fraction(k + 1)))
        elif f0 == value:
            raw.append((Fraction(k), Fraction(k)))
        elif f1 == value:
            raw.append((Fraction(k + 1), Fraction(k + 1)))
        elif (f0 < value < f1) or (f1 < value < f0):
            t = Fraction(k) + Fraction(value - f0) / (f1 - f0)
            raw.append((t, t))
    raw.sort()
    merged = []
    for s, e in raw:
        if merged and s <= merged[-1][1]:
            if e > merged[-1][1]:
                merged[-1] = (merged[-1][0], e)
        else:
            merged.append((s, e))
    if not chain.closed:
        return merged
    # Stitch the seam: parameter m is the same point as parameter 0. A hit
    # at m always comes with a hit at 0 (both test vertex 0), so any plateau
    # touching the seam appears as a leading and a trailing piece.
    if len(merged) >= 2 and merged[0][0] == 0 and merged[-1][1] == m:
        first = merged.pop(0)
        last = merged.pop()
        merged.append((last[0] % m, first[1]))  # wraps when start > end
    return merged


@dataclass(frozen=True)
class Strand:
    """A single strand: host chain, 1-based axis, parameter interval."""

    host: PolyChain
    axis: int
    u: Fraction
    v: Fraction
    min_first: bool

    def endpoints(self) -> tuple:
        return (self.host.point_at(self.u), self.host.point_at(self.v))

    def _linear_interval(self) -> tuple:
        """(u, v') with v' > u; on closed hosts the wrap is unfolded."""
        u, v = self.u, self.v
        if self.host.closed and v <= u:
            v += self.host.param_span
        return (u, v)

    def subchain(self) -> PolyChain:
        """Materialize the strand as an open chain."""
        chain = self.host
        u, v = self._linear_interval()
        pts = [chain.point_at(u)]
        k = math.floor(u) + 1
        while k < v:
            pts.append(chain.point_at(Fraction(k)))
            k += 1
        pts.append(chain.point_at(v))
        out = [pts[0]]
        for p in pts[1:]:
            if p != out[-1]:
                out.append(p)
        return PolyChain(out, closed=False, validate=False)

    def segments(self) -> list:
        return list(self.subchain().segments())

    def to_json(self) -> dict:
        from .geometry import format_rational

        return {
            "axis": self.axis,
            "u": format_rational(self.u),
            "v": format_rational(self.v),
            "minFirst": self.min_first,
            "endpoints": [
                [format_rational(x) for x in p] for p in self.endpoints()
            ],
        }


def strands(chain: PolyChain, axis: int) -> tuple:
    """All x_axis-strands of the chain, in traversal order.

    Raises DegenerateAxisError when the chain lies in a hyperplane where
    coordinate `axis` is constant, because extremes coincide there and the
    notion is empty.
    """
    lo, hi = extremes(chain, axis)
    if lo == hi:
        raise DegenerateAxisError(
            f"coordinate {axis} is constant on the chain; no strands exist"
        )
    i = axis - 1
    plats = [(s, e, True) for s, e in _plateaus(chain, i, lo)]
    plats += [(s, e, False) for s, e in _plateaus(chain, i, hi)]
    plats.sort(key=lambda p: p[0])
    out = []
    if not chain.closed:
        for (s1, e1, is_min1), (s2, e2, is_min2) in zip(plats, plats[1:]):
            if is_min1 != is_min2:
                out.append(Strand(chain, axis, e1, s2, min_first=is_min1))
    else:
        k = len(plats)
        for idx in range(k):
            s1, e1, is_min1 = plats[idx]
            s2, e2, is_min2 = plats[(idx + 1) % k]
            if is_min1 != is_min2:
                m = chain.param_span
                out.append(Strand(chain, axis, e1 % m, s2 % m, min_first=is_min1))
    return tuple(out)


def _intervals_overlap_open(a1, b1, a2, b2) -> bool:
    return a1 < b2 and a2 < b1


def interiors_disjoint(s1: Strand, s2: Strand) -> bool:
    """Whether two strands of the same host have disjoint open interiors."""
    if s1.host is not s2.host and s1.host != s2.host:
        raise ValidationError("strands live on different hosts")
    u1, v1 = s1._linear_interval()
    u2, v2 = s2._linear_interval()
    if not s1.host.closed:
        return not _intervals_overlap_open(u1, v1, u2, v2)
    m = s1.host.param_span
    for shift in (-m, 0, m):
        if _intervals_overlap_open(u1, v1, u2 + shift, v2 + shift):
            return False
    return True


# - shadows as chains --------------------------------------------------------


def shadow_chain(chain: PolyChain, proj_axis: int) -> Optional[PolyChain]:
    """The shadow along proj_axis as a chain, when it is a simple curve."""
    cx = shadow_complex(chain, proj_axis)
    report = classify(cx)
    if report.classification not in ("Path", "Cycle"):
        return None
    return extract_chain(cx)


def _projected_point(p: tuple, i: int) -> tuple:
    return p[:i] + p[i + 1 :]


def _preimage_intervals(chain: PolyChain, proj_axis: int, target: tuple) -> list:
    """Parameter intervals (s, e) where the chain projects onto `target`.

    Linear parameters in [0, m]; degenerate hits are (t, t). Closed chains
    are scanned segment by segment without seam merging, which is all the
    lifting construction needs.
    """
    i = proj_axis - 1
    verts = chain.vertices
    n = len(verts)
    out = []
    for k in range(chain.param_span):
        a = verts[k]
        b = verts[(k + 1) % n]
        pa = _projected_point(a, i)
        pb = _projected_point(b, i)
        if pa == pb:
            if pa == tuple(target):
                out.append((Fraction(k), Fraction(k + 1)))
            continue
        t = None
        ok = True
        for c in range(len(pa)):
            d = pb[c] - pa[c]
            if d != 0:
                tc = Fraction(target[c] - pa[c]) / d
                if t is None:
                    t = tc
                elif tc != t:
                    ok = False
                    break
            elif pa[c] != target[c]:
                ok = False
                break
        if ok and t is not None and 0 <= t <= 1:
            out.append((Fraction(k) + t, Fraction(k) + t))
    return out


def lift_strand(chain: PolyChain, proj_axis: int, sigma: Strand) -> Strand:
    """Lift a strand of a path-shaped shadow back onto the chain.

    `sigma` must be a strand of shadow_chain(chain, proj_axis), which in turn
    must classify as Path. The construction walks the chain between
    preimages of the shadow endpoints, takes the last parameter projecting
    onto sigma's near endpoint and the first later parameter projecting onto
    the far endpoint. The piece in between is returned as a strand of the
    chain along the original axis of sigma; its projection equals sigma as a
    point set.
    """
    shadow = shadow_chain(chain, proj_axis)
    if shadow is None or shadow.closed:
        raise ValidationError("the shadow along proj_axis is not a path")
    if sigma.host != shadow:
        raise ValidationError("sigma is not a strand of the extracted shadow chain")
    axis_i = shadow_axes(chain.dim, proj_axis)[sigma.axis - 1]

    a2 = shadow.vertices[0]
    b2 = shadow.vertices[-1]
    # Order sigma's endpoints along the shadow path: u is nearer vertices[0].
    c2, d2 = shadow.point_at(sigma.u), shadow.point_at(sigma.v)

    pre_a = _preimage_intervals(chain, proj_axis, a2)
    pre_b = _preimage_intervals(chain, proj_axis, b2)
    if not pre_a or not pre_b:
        raise ValidationError("shadow endpoints have no preimage; inconsistent input")
    t_a = pre_a[0][0]
    t_b = pre_b[0][0]

    m = chain.param_span
    sols_c = _preimage_intervals(chain, proj_axis, c2)
    sols_d = _preimage_intervals(chain, proj_axis, d2)

    def offsets(sols, start, length):
        """Solution parameters clipped to the arc, as offsets from its start."""
        outs = []
        for s, e in sols:
            for shift in (0, m) if chain.closed else (0,):
                lo = max(s + shift - start, Fraction(0))
                hi = min(e + shift - start, length)
                if lo <= hi:
                    outs.append((lo, hi))
        return sorted(outs)

    if chain.closed:
        length = (t_b - t_a) % m
        if length == 0:
            raise ValidationError("degenerate arc between endpoint preimages")
        fwd = True
    else:
        fwd = t_a <= t_b
        length = abs(t_b - t_a)

    if chain.closed or fwd:
        start = t_a
        off_c = offsets(sols_c, start, length)
        off_d = offsets(sols_d, start, length)
        if not off_c or not off_d:
            raise ValidationError("strand endpoints missing from the arc projection")
        o_c = off_c[-1][1]  # last parameter hitting c2
        later_d = [lo for lo, hi in off_d if lo >= o_c]
        if not later_d:
            raise ValidationError("no far endpoint beyond the near endpoint")
        o_d = min(later_d)
        u_par = (t_a + o_c) % m if chain.closed else t_a + o_c
        v_par = (t_a + o_d) % m if chain.closed else t_a + o_d
    else:
        # Open chain traversed backward: mirror the same construction.
        start = t_b
        off_c = offsets(sols_c, start, length)
        off_d = offsets(sols_d, start, length)
        if not off_c or not off_d:
            raise ValidationError("strand endpoints missing from the arc projection")
        # Walking from t_a down to t_b means offsets run from `length` to 0.
        o_c = min(lo for lo, hi in off_c)
        earlier_d = [hi for lo, hi in off_d if hi <= o_c]
        if not earlier_d:
            raise ValidationError("no far endpoint beyond the near endpoint")
        o_d = max(earlier_d)
        u_par = start + o_d
        v_par = start + o_c

    if not chain.closed and u_par > v_par:
        u_par, v_par = v_par, u_par
    lo_i, hi_i = extremes(chain, axis_i)
    val_u = chain.point_at(u_par)[axis_i - 1]
    lifted = Strand(chain, axis_i, u_par, v_par, min_first=(val_u == lo_i))
    _assert_is_strand(lifted, lo_i, hi_i)
    return lifted


def _assert_is_strand(s: Strand, lo, hi) -> None:
    """Defensive check that a constructed interval really is a strand."""
    chain = s.host
    i = s.axis - 1
    u, v = s._linear_interval()
    f_u = chain.point_at(u)[i]
    f_v = chain.point_at(v)[i]
    if {f_u, f_v} != {lo, hi}:
        raise ValidationError("lift produced a non-strand: endpoint values wrong")
    k = math.floor(u) + 1
    while k < v:
        val = chain.point_at(Fraction(k))[i]
        if not (lo < val < hi):
            raise ValidationError("lift produced a non-strand: interior touches an extreme")
        k += 1


# - law verification ---------------------------------------------------------


@dataclass(frozen=True)
class LawReport:
    obs1_ok: bool
    obs2_ok: bool
    lemma4_ok: bool
    lemma5_ok: bool
    witnesses: tuple

    @property
    def all_ok(self) -> bool:
        return self.obs1_ok and self.obs2_ok and self.lemma4_ok and self.lemma5_ok

    def to_json(self) -> dict:
        return {
            "obs1Ok": self.obs1_ok,
            "obs2Ok": self.obs2_ok,
            "lemma4Ok": self.lemma4_ok,
            "lemma5Ok": self.lemma5_ok,
            "witnesses": list(self.witnesses),
        }


def strand_pointset(s: Strand):
    """Canonical point-set form of a strand, for exact set comparison."""
    return canonical_union(s.segments())


def projected_strand_pointset(s: Strand, proj_axis: int):
    """Canonical form of a strand's shadow along proj_axis."""
    i = proj_axis - 1
    segs = []
    iso = []
    for p, q in s.segments():
        pp = _projected_point(p, i)
        qq = _projected_point(q, i)
        if pp == qq:
            iso.append(pp)
        else:
            segs.append((pp, qq))
    return canonical_union(segs, iso)


def _nondegenerate_axes(chain: PolyChain) -> list:
    return [
        ax
        for ax in range(1, chain.dim + 1)
        if extremes(chain, ax)[0] != extremes(chain, ax)[1]
    ]


def _check_planar_path_laws(chain: PolyChain, witnesses: list, tag: str) -> tuple:
    """Lemma checks for a planar open chain; returns (lemma4_ok, lemma5_ok)."""
    per_axis = {}
    for ax in (1, 2):
        lo, hi = extremes(chain, ax)
        per_axis[ax] = strands(chain, ax) if lo != hi else ()
    l4 = True
    for s1 in per_axis[1]:
        for s2 in per_axis[2]:
            a1, b1 = s1._linear_interval()
            a2, b2 = s2._linear_interval()
            if b1 < a2 or b2 < a1:  # closed intervals must meet
                l4 = False
                witnesses.append(
                    {"law": "lemma4", "where": tag, "s1": s1.to_json(), "s2": s2.to_json()}
                )
    l5 = not (len(per_axis[1]) >= 2 and len(per_axis[2]) >= 2)
    if not l5:
        witnesses.append(
            {
                "law": "lemma5",
                "where": tag,
                "x1Strands": len(per_axis[1]),
                "x2Strands": len(per_axis[2]),
            }
        )
    return l4, l5


def verify_strand_laws(chain: PolyChain) -> LawReport:
    """Executable form of the strand laws on one chain.

    obs2 is checked on the chain itself for every nondegenerate axis. obs1
    is checked whenever a shadow is a simple curve (ambient dimension 3 and
    up). The planar-path lemmas apply to the chain when it is a planar open
    chain, and to every path-classified shadow otherwise; inapplicable laws
    hold vacuously.
    """
    witnesses: list = []
    axes = _nondegenerate_axes(chain)

    obs2_ok = True
    for ax in axes:
        ss = strands(chain, ax)
        for x in range(len(ss)):
            for y in range(x + 1, len(ss)):
                if not interiors_disjoint(ss[x], ss[y]):
                    obs2_ok = False
                    witnesses.append(
                        {"law": "obs2", "axis": ax, "s1": ss[x].to_json(), "s2": ss[y].to_json()}
                    )

    obs1_ok = True
    lemma4_ok = True
    lemma5_ok = True

    if chain.dim == 2 and not chain.closed:
        lemma4_ok, lemma5_ok = _check_planar_path_laws(chain, witnesses, "chain")
    elif chain.dim >= 3:
        for j in range(1, chain.dim + 1):
            sc = shadow_chain(chain, j)
            if sc is None:
                continue
            for i in axes:
                if i == j:
                    continue
                loc = local_axis(chain.dim, j, i)
                lo, hi = extremes(sc, loc)
                if lo == hi:
                    continue
                shadow_strands = strands(sc, loc)
                shadow_sets = [strand_pointset(t) for t in shadow_strands]
                for s in strands(chain, i):
                    pset = projected_strand_pointset(s, j)
                    if pset not in shadow_sets:
                        obs1_ok = False
                        witnesses.append(
                            {"law": "obs1", "projAxis": j, "axis": i, "strand": s.to_json()}
                        )
            if chain.dim == 3 and not sc.closed:
                l4, l5 = _check_planar_path_laws(sc, witnesses, f"shadow{j}")
                lemma4_ok = lemma4_ok and l4
                lemma5_ok = lemma5_ok and l5

    return LawReport(
        obs1_ok=obs1_ok,
        obs2_ok=obs2_ok,
        lemma4_ok=lemma4_ok,
        lemma5_ok=lemma5_ok,
        witnesses=tuple(witnesses),
    )
