"""Deterministic SVG rendering of planar 1-complexes.

Layout happens in exact rational arithmetic: the complex's bounding box
plus a margin becomes the viewBox, the y axis is flipped so the picture
matches mathematical orientation, and every edge becomes one line
element. Branch points (degree three or more) get contrasting circle
markers, isolated vertices get dots so degenerate shadows stay visible.
Numbers are printed with a fixed shortest-decimal rule, which keeps the
byte output identical run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import OneComplex
from .errors import ValidationError

STROKE = "#30506a"
MARKER = "#c03b2a"


@dataclass(frozen=True)
class RenderSpec:
    """How to draw one complex: target file, scale and decoration."""

    target: Optional[str] = None
    format: str = "SVG"
    stroke_scale: Fraction = Fraction(24)
    margin: Fraction = Fraction(1, 2)
    labels: bool = False

    def __post_init__(self):
        object.__setattr__(self, "stroke_scale", Fraction(self.stroke_scale))
        object.__setattr__(self, "margin", Fraction(self.margin))
        if self.format != "SVG":
            raise ValidationError("only SVG output is supported")
        if self.stroke_scale <= 0 or self.margin < 0:
            raise ValidationError("strokeScale must be positive, margin nonnegative")


def _num(x: Fraction) -> str:
    # Shortest decimal that round-trips the float; deterministic across runs.
    f = float(x)
    if f == int(f):
        return str(int(f))
    return repr(f)


def render_shadow(cx: OneComplex, spec: RenderSpec) -> str:
    """The complex as an SVG document string, optionally written to disk."""
    pts = list(cx.vertices) + list(cx.isolated)
    scale = spec.stroke_scale
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x0, x1 = min(xs) - spec.margin, max(xs) + spec.margin
        y0, y1 = min(ys) - spec.margin, max(ys) + spec.margin
    else:
        x0 = y0 = -spec.margin
        x1 = y1 = spec.margin
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def sx(x: Fraction) -> str:
        return _num((x - x0) * scale)

    def sy(y: Fraction) -> str:
        return _num((y1 - y) * scale)

    stroke_w = _num(max(scale / 12, Fraction(1)))
    dot_r = _num(max(scale / 8, Fraction(1)))
    mark_r = _num(max(scale / 5, Fraction(2)))
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_num(width)} {_num(height)}" '
        f'width="{_num(width)}" height="{_num(height)}">'
    ]
    out.append(
        f'<g stroke="{STROKE}" stroke-width="{stroke_w}" '
        'stroke-linecap="round" fill="none">'
    )
    for i, j in cx.edges:
        a, b = cx.vertices[i], cx.vertices[j]
        out.append(
            f'<line x1="{sx(a[0])}" y1="{sy(a[1])}" '
            f'x2="{sx(b[0])}" y2="{sy(b[1])}"/>'
        )
    out.append("</g>")
    for p in cx.isolated:
        out.append(
            f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="{dot_r}" fill="{STROKE}"/>'
        )
    deg = cx.degrees()
    labels = []
    for i, p in enumerate(cx.vertices):
        if deg[i] >= 3:
            out.append(
                f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="{mark_r}" '
                f'fill="{MARKER}"/>'
            )
            if spec.labels:
                labels.append(p)
    if spec.labels:
        font = _num(max(scale / 3, Fraction(6)))
        for p in labels:
            out.append(
                f'<text x="{sx(p[0] + Fraction(1, 4))}" y="{sy(p[1])}" '
                f'font-size="{font}" fill="{MARKER}">({p[0]},{p[1]})</text>'
            )
    out.append("</svg>")
    doc = "\n".join(out) + "\n"
    if spec.target is not None:
        with open(spec.target, "w", encoding="ascii") as fh:
            fh.write(doc)
    return doc
