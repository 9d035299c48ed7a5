"""Polygonal chains with exact rational vertices, and their axis shadows.

A chain is open (an arc) or closed (a loop). Chains are simple: segments are
pairwise disjoint except for shared endpoints of consecutive segments. The
projection along axis i drops the i-th coordinate of every vertex; the result
is kept as a set of segments rather than a chain because projections of
simple chains routinely self-overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import CurveFormatError, NotSimpleError, ValidationError
from .geometry import (
    dot,
    format_rational,
    parse_rational,
    segnd_intersection,
    vsub,
)


def _as_fraction_point(raw: Sequence) -> tuple:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in raw)


class PolyChain:
    """An open or closed simple polygonal chain in R^n, n >= 2."""

    __slots__ = ("vertices", "closed", "_int_cache")

    def __init__(self, vertices: Sequence[Sequence], closed: bool, validate: bool = True):
        verts = tuple(_as_fraction_point(v) for v in vertices)
        if len(verts) < 2:
            raise CurveFormatError("a chain needs at least 2 vertices")
        dim = len(verts[0])
        if dim < 2:
            raise CurveFormatError("chain dimension must be at least 2")
        if any(len(v) != dim for v in verts):
            raise CurveFormatError("inconsistent vertex arity")
        if closed and len(verts) < 3:
            raise CurveFormatError("a closed chain needs at least 3 vertices")
        for a, b in zip(verts, verts[1:]):
            if a == b:
                raise ValidationError("consecutive vertices must be distinct")
        if closed and verts[0] == verts[-1]:
            raise ValidationError(
                "closed chains do not repeat the first vertex; drop the final point"
            )
        self.vertices = verts
        self.closed = closed
        self._int_cache = None
        if validate:
            self.validate_simple()

    # - basic accessors -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def segment_count(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def segments(self) -> Iterator[tuple]:
        n = len(self.vertices)
        for k in range(self.segment_count):
            yield self.vertices[k], self.vertices[(k + 1) % n]

    def segment(self, k: int) -> tuple:
        n = len(self.vertices)
        return self.vertices[k % n], self.vertices[(k + 1) % n]

    def __eq__(self, other):
        return (
            isinstance(other, PolyChain)
            and self.closed == other.closed
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.closed, self.vertices))

    def __repr__(self):
        kind = "closed" if self.closed else "open"
        return f"PolyChain({kind}, {len(self.vertices)} vertices, dim {self.dim})"

    # - parameterization ------------------------------------------------
    #
    # Parameter t lives in [0, m] for open chains and in the circle [0, m)
    # for closed ones, where m is the segment count; t = k + f is the point
    # a fraction f along segment k.

    @property
    def param_span(self) -> int:
        return self.segment_count

    def point_at(self, t: Fraction) -> tuple:
        m = self.param_span
        t = Fraction(t)
        if self.closed:
            t = t % m
        else:
            if t < 0 or t > m:
                raise ValidationError(f"parameter {t} outside [0, {m}]")
        k = math.floor(t)
        if k == m:  # open chain endpoint
            return self.vertices[-1]
        f = t - k
        a, b = self.segment(k)
        if f == 0:
            return a
        return tuple(ax + f * (bx - ax) for ax, bx in zip(a, b))

    # - integer-scaled view ----------------------------------------------

    def int_scaled(self) -> tuple:
        """Return (scale, vertices) with all coordinates scaled to ints.

        Predicates on the scaled copy are exact for the original chain, and
        int arithmetic is markedly faster than Fraction arithmetic.
        """
        if self._int_cache is None:
            scale = 1
            for v in self.vertices:
                for x in v:
                    scale = scale * x.denominator // math.gcd(scale, x.denominator)
            ints = tuple(
                tuple(int(x * scale) for x in v) for v in self.vertices
            )
            self._int_cache = (scale, ints)
        return self._int_cache

    # - validation --------------------------------------------------------

    def validate_simple(self) -> None:
        """Check simplicity exactly; raises NotSimpleError on failure.

        All segment pairs are examined. Consecutive segments may share only
        their common vertex (a collinear reversal counts as an overlap);
        every other pair must be fully disjoint. Quadratic in the segment
        count, which is fine at the sizes this package works with.
        """
        _, verts = self.int_scaled()
        n = len(verts)
        m = self.segment_count
        segs = [(verts[k], verts[(k + 1) % n]) for k in range(m)]
        for i in range(m):
            a, b = segs[i]
            for j in range(i + 1, m):
                c, d = segs[j]
                adjacent = j == i + 1 or (self.closed and i == 0 and j == m - 1)
                if adjacent:
                    shared = b if j == i + 1 else a
                    other_i = a if j == i + 1 else b
                    other_j = d if j == i + 1 else c
                    u = vsub(other_i, shared)
                    w = vsub(other_j, shared)
                    # Collinear and pointing the same way means the two
                    # segments double back over each other.
                    colinear = all(
                        u[p] * w[q] - u[q] * w[p] == 0
                        for p in range(len(u))
                        for q in range(p + 1, len(u))
                    )
                    if colinear and dot(u, w) > 0:
                        raise NotSimpleError(
                            f"segments {i} and {j} overlap at a reversal"
                        )
                else:
                    rel = segnd_intersection(a, b, c, d)
                    if rel[0] != "none":
                        raise NotSimpleError(
                            f"segments {i} and {j} intersect ({rel[0]})"
                        )

    # - serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "closed": self.closed,
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj: dict, validate: bool = True) -> "PolyChain":
        try:
            verts = [[parse_rational(str(x)) for x in v] for v in obj["vertices"]]
            closed = bool(obj["closed"])
        except (KeyError, TypeError) as exc:
            raise CurveFormatError(f"bad chain object: {exc}") from exc
        return cls(verts, closed, validate=validate)


@dataclass(frozen=True)
class SegmentSet:
    """A finite union of closed segments (plus isolated points) in R^dim.

    Segments are stored with distinct endpoints; degenerate pieces appear in
    `isolated` instead. A projection that collapses an entire chain to one
    point is represented by an empty segment list and that single point.
    """

    dim: int
    segments: tuple
    isolated: tuple = ()

    def __post_init__(self):
        for p, q in self.segments:
            if len(p) != self.dim or len(q) != self.dim:
                raise ValidationError("segment arity does not match dim")
            if p == q:
                raise ValidationError("zero-length segment in SegmentSet")
        for p in self.isolated:
            if len(p) != self.dim:
                raise ValidationError("point arity does not match dim")

    def __len__(self):
        return len(self.segments)


def project(chain: PolyChain, axis: int) -> SegmentSet:
    """Shadow of a chain along coordinate axis `axis` (1-based).

    Drops that coordinate from every vertex. Zero-length projected segments
    are omitted; if every segment collapses, the single surviving point is
    reported as isolated.
    """
    n = chain.dim
    if n < 3:
        raise ValidationError("projection needs ambient dimension >= 3")
    if not 1 <= axis <= n:
        raise ValidationError(f"axis {axis} out of range 1..{n}")
    i = axis - 1
    segs = []
    for a, b in chain.segments():
        pa = a[:i] + a[i + 1 :]
        pb = b[:i] + b[i + 1 :]
        if pa != pb:
            segs.append((pa, pb))
    if segs:
        return SegmentSet(n - 1, tuple(segs))
    v = chain.vertices[0]
    return SegmentSet(n - 1, (), (v[:i] + v[i + 1 :],))


def project_segments(segs: SegmentSet, axis: int) -> SegmentSet:
    """Project a SegmentSet one dimension down; used for iterated shadows."""
    if segs.dim < 2:
        raise ValidationError("cannot project below dimension 1")
    if not 1 <= axis <= segs.dim:
        raise ValidationError(f"axis {axis} out of range 1..{segs.dim}")
    i = axis - 1
    out = []
    iso = []
    for p, q in segs.segments:
        pp = p[:i] + p[i + 1 :]
        qq = q[:i] + q[i + 1 :]
        if pp == qq:
            iso.append(pp)
        else:
            out.append((pp, qq))
    for p in segs.isolated:
        iso.append(p[:i] + p[i + 1 :])
    return SegmentSet(segs.dim - 1, tuple(out), tuple(sorted(set(iso))))


def shadow_axes(n: int, axis: int) -> tuple:
    """Original axis labels that survive projection along `axis`."""
    return tuple(k for k in range(1, n + 1) if k != axis)


def local_axis(n: int, proj_axis: int, original_axis: int) -> int:
    """Position (1-based) of an original axis inside the shadow coordinates."""
    axes = shadow_axes(n, proj_axis)
    if original_axis not in axes:
        raise ValidationError(
            f"axis {original_axis} does not survive projection along {proj_axis}"
        )
    return axes.index(original_axis) + 1


# - curve files ------------------------------------------------------------
#
# Line 1:   open | closed
# Then one vertex per line, whitespace-separated rationals ("p" or "p/q").
# '#' starts a comment; blank lines are skipped. Vertex arity must agree.


def parse_curve(text: str, validate: bool = True) -> PolyChain:
    rows = []
    kind = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            if line not in ("open", "closed"):
                raise CurveFormatError(
                    f"line {lineno}: expected 'open' or 'closed', got {line!r}"
                )
            kind = line
            continue
        try:
            rows.append(tuple(parse_rational(tok) for tok in line.split()))
        except ValueError as exc:
            raise CurveFormatError(f"line {lineno}: {exc}") from exc
    if kind is None:
        raise CurveFormatError("empty curve file")
    if len(rows) < 2:
        raise CurveFormatError("fewer than 2 vertices")
    arity = len(rows[0])
    for idx, row in enumerate(rows):
        if len(row) != arity:
            raise CurveFormatError(f"vertex {idx} has arity {len(row)}, expected {arity}")
    return PolyChain(rows, closed=(kind == "closed"), validate=validate)


def format_curve(chain: PolyChain) -> str:
    lines = ["closed" if chain.closed else "open"]
    for v in chain.vertices:
        lines.append(" ".join(format_rational(x) for x in v))
    return "\n".join(lines) + "\n"


def load_curve(path, validate: bool = True) -> PolyChain:
    from pathlib import Path

    return parse_curve(Path(path).read_text(), validate=validate)


def save_curve(chain: PolyChain, path) -> None:
    from pathlib import Path

    Path(path).write_text(format_curve(chain))
