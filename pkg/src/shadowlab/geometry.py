"""Exact rational primitives shared by the geometric modules.

Everything here operates on tuples of ints or Fractions and never touches
floating point. Rational segments have rational intersections, so the whole
pipeline stays closed under the operations below. Predicates avoid division
entirely; with int inputs they run in pure int arithmetic, which keeps the
hot search paths cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class GeometryError(ValueError):
    """A geometric operation was asked about malformed input."""


def parse_rational(token: str) -> Fraction:
    """Parse 'p' or 'p/q' into a Fraction. Whitespace is not tolerated."""
    # int() forgives surrounding whitespace; the file formats must not.
    if token != token.strip() or any(ch.isspace() for ch in token):
        raise GeometryError(f"bad rational literal {token!r}")
    try:
        if "/" in token:
            num, den = token.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise GeometryError(f"bad rational literal {token!r}") from exc
    return value


def format_rational(value) -> str:
    """Render a scalar as 'p' or 'p/q' with the canonical reduced form."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(k, a):
    return tuple(k * x for x in a)


def is_zero(v) -> bool:
    return all(x == 0 for x in v)


def cross2(o, a, b):
    """Signed area of the parallelogram (a-o, b-o); >0 means left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def primitive_direction(d: Sequence) -> tuple:
    """Reduce an integer vector to its canonical primitive form.

    The result has gcd 1 and its first nonzero entry positive, so opposite
    directions map to the same key only after explicit negation by the caller.
    """
    ints = []
    for x in d:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise GeometryError("primitive_direction needs integer entries")
            ints.append(x.numerator)
        else:
            ints.append(int(x))
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise GeometryError("zero direction has no primitive form")
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def signed_primitive(d: Sequence) -> tuple:
    """Like primitive_direction but keeps the orientation of d."""
    g = 0
    for x in d:
        g = math.gcd(g, abs(int(x)))
    if g == 0:
        raise GeometryError("zero direction has no primitive form")
    return tuple(int(x) // g for x in d)


def direction_key(p, q) -> tuple:
    """Primitive integer direction of the line through rational points p, q."""
    d = vsub(q, p)
    lcm = 1
    for x in d:
        if isinstance(x, Fraction):
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return primitive_direction(tuple(x * lcm for x in d))


def line_key(p, q) -> tuple:
    """Canonical key of the supporting line of segment pq in the plane.

    Key is (a, b, c) with (a, b) the primitive direction and c = b*x - a*y,
    which is constant along the line.
    """
    a, b = direction_key(p, q)
    c = b * p[0] - a * p[1]
    return (a, b, c)


def point_on_segment(p, a, b) -> bool:
    """Exact closed containment test, any dimension."""
    d = vsub(b, a)
    if is_zero(d):
        return tuple(p) == tuple(a)
    t = None
    for k in range(len(d)):
        if d[k] != 0:
            t = Fraction(p[k] - a[k]) / Fraction(d[k])
            break
    if t < 0 or t > 1:
        return False
    return all(a[k] + t * d[k] == p[k] for k in range(len(d)))


def seg2_intersection(a, b, c, d):
    """Intersect the closed planar segments ab and cd exactly.

    Returns one of:
      ("none",)
      ("point", p)
      ("overlap", p, q)   with p != q, collinear overlap ordered along the line
    Zero-length input segments are rejected.
    """
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    if (r[0] == 0 and r[1] == 0) or (s[0] == 0 and s[1] == 0):
        raise GeometryError("zero-length segment")
    denom = r[0] * s[1] - r[1] * s[0]
    acx = c[0] - a[0]
    acy = c[1] - a[1]
    if denom != 0:
        t_num = acx * s[1] - acy * s[0]
        u_num = acx * r[1] - acy * r[0]
        if denom < 0:
            denom, t_num, u_num = -denom, -t_num, -u_num
        if 0 <= t_num <= denom and 0 <= u_num <= denom:
            t = Fraction(t_num, denom)
            return ("point", (a[0] + t * r[0], a[1] + t * r[1]))
        return ("none",)
    # Parallel lines: either disjoint or collinear.
    if acx * r[1] - acy * r[0] != 0:
        return ("none",)
    axis = 0 if r[0] != 0 else 1
    p1, q1 = (a, b) if a[axis] <= b[axis] else (b, a)
    p2, q2 = (c, d) if c[axis] <= d[axis] else (d, c)
    lo = p1 if p1[axis] >= p2[axis] else p2
    hi = q1 if q1[axis] <= q2[axis] else q2
    if lo[axis] > hi[axis]:
        return ("none",)
    if lo[axis] == hi[axis]:
        return ("point", tuple(lo))
    return ("overlap", tuple(lo), tuple(hi))


def segnd_intersection(a, b, c, d):
    """Intersect two closed segments in dimension >= 2, exactly.

    Same result shape as seg2_intersection. Used by simplicity validation in
    ambient space; the planar case routes through seg2_intersection.
    """
    n = len(a)
    if n == 2:
        return seg2_intersection(a, b, c, d)
    r = vsub(b, a)
    s = vsub(d, c)
    if is_zero(r) or is_zero(s):
        raise GeometryError("zero-length segment")
    pivot = None
    for i in range(n):
        for j in range(i + 1, n):
            denom = r[i] * s[j] - r[j] * s[i]
            if denom != 0:
                pivot = (i, j, denom)
                break
        if pivot:
            break
    ac = vsub(c, a)
    if pivot is None:
        # Parallel. Collinear iff c-a is parallel to r as well.
        for i in range(n):
            for j in range(i + 1, n):
                if ac[i] * r[j] - ac[j] * r[i] != 0:
                    return ("none",)
        axis = next(k for k in range(n) if r[k] != 0)
        p1, q1 = (a, b) if a[axis] <= b[axis] else (b, a)
        p2, q2 = (c, d) if c[axis] <= d[axis] else (d, c)
        lo = p1 if p1[axis] >= p2[axis] else p2
        hi = q1 if q1[axis] <= q2[axis] else q2
        if lo[axis] > hi[axis]:
            return ("none",)
        if lo[axis] == hi[axis]:
            return ("point", tuple(lo))
        return ("overlap", tuple(lo), tuple(hi))
    i, j, denom = pivot
    # Solve a + t r = c + u s on coordinates (i, j) by Cramer's rule.
    t_num = ac[i] * s[j] - ac[j] * s[i]
    u_num = ac[i] * r[j] - ac[j] * r[i]
    if denom < 0:
        denom, t_num, u_num = -denom, -t_num, -u_num
    if not (0 <= t_num <= denom and 0 <= u_num <= denom):
        return ("none",)
    # The remaining coordinates must agree as well.
    for k in range(n):
        if k == i or k == j:
            continue
        if a[k] * denom + t_num * r[k] != c[k] * denom + u_num * s[k]:
            return ("none",)
    t = Fraction(t_num, denom)
    return ("point", tuple(a[k] + t * r[k] for k in range(n)))


def canonical_union(segments: Iterable, isolated: Iterable = ()):
    """Canonical form of a finite union of closed planar segments and points.

    Two unions are equal as point sets iff their canonical forms are equal.
    The form is (maximal_segments, leftover_points); maximal segments are the
    merged per-line intervals, each ordered lexicographically, and leftover
    points are the isolated inputs not covered by any segment.
    """
    by_line: dict = {}
    for p, q in segments:
        p = tuple(p)
        q = tuple(q)
        if p == q:
            raise GeometryError("zero-length segment in union")
        key = line_key(p, q)
        axis = 0 if key[0] != 0 else 1
        lo, hi = (p, q) if p[axis] <= q[axis] else (q, p)
        by_line.setdefault(key, []).append((lo, hi, axis))
    maximal = []
    for key, items in by_line.items():
        axis = items[0][2]
        items.sort(key=lambda it: (it[0][axis], it[1][axis]))
        cur_lo, cur_hi, _ = items[0]
        for lo, hi, _ in items[1:]:
            if lo[axis] <= cur_hi[axis]:
                if hi[axis] > cur_hi[axis]:
                    cur_hi = hi
            else:
                maximal.append((cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        maximal.append((cur_lo, cur_hi))
    maximal = [tuple(sorted(seg)) for seg in maximal]
    maximal.sort()
    leftovers = []
    for pt in isolated:
        pt = tuple(pt)
        if not any(point_on_segment(pt, p, q) for p, q in maximal):
            leftovers.append(pt)
    leftovers = sorted(set(leftovers))
    return (tuple(maximal), tuple(leftovers))


def unions_equal(segs1, iso1, segs2, iso2) -> bool:
    """Point-set equality of two finite unions of segments and points."""
    return canonical_union(segs1, iso1) == canonical_union(segs2, iso2)
