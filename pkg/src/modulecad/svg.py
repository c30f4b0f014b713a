"""Deterministic SVG 1.1 rendering of a drawing or a viewport-culled subset.

Drawing space is y-up; SVG is y-down. A single scale(1 -1) on the root
group does the flip, and text nodes carry a local counter-flip so glyphs
render upright. Output is byte-stable for equal inputs: golden-file tests
depend on the exact dash arrays, number formatting and node order (all
ascending element id).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .drawing import Drawing
from .element import Element
from .errors import InvalidGeometry
from .geometry import Arc, BBox, Circle, Line, Polyline, Text, Viewport

DASH_PATTERNS = {"dash": "8 4", "dash_dot": "12 3 2 3"}

DEFAULT_VIEW = BBox(0.0, 0.0, 100.0, 100.0)


@dataclass(frozen=True)
class RenderOptions:
    viewport: Optional[Viewport] = None
    stroke_width: float = 0.5
    background: Optional[tuple[int, int, int]] = None
    margin: float = 10.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.stroke_width) and self.stroke_width > 0):
            raise InvalidGeometry(f"stroke_width must be > 0, got {self.stroke_width!r}")
        if not (math.isfinite(self.margin) and self.margin >= 0):
            raise InvalidGeometry(f"margin must be >= 0, got {self.margin!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


def _rgb(color: tuple[int, int, int]) -> str:
    return "#{:02X}{:02X}{:02X}".format(*color)


def _shape_node(e: Element) -> str:
    p = e.primitive
    stroke = f' stroke="{_rgb(e.style.color)}"'
    dash = DASH_PATTERNS.get(e.style.linetype)
    if dash is not None:
        stroke += f' stroke-dasharray="{dash}"'
    if isinstance(p, Line):
        pts = f"{_fmt(p.a.x)},{_fmt(p.a.y)} {_fmt(p.b.x)},{_fmt(p.b.y)}"
        return f'<polyline points="{pts}"{stroke}/>'
    if isinstance(p, Polyline):
        pts = " ".join(f"{_fmt(v.x)},{_fmt(v.y)}" for v in p.vertices)
        return f'<polyline points="{pts}"{stroke}/>'
    if isinstance(p, Circle):
        return (f'<circle cx="{_fmt(p.center.x)}" cy="{_fmt(p.center.y)}" '
                f'r="{_fmt(p.radius)}"{stroke}/>')
    if isinstance(p, Arc):
        sweep = p.sweep()
        start = p.point_at(p.start_angle)
        if sweep >= 2.0 * math.pi:
            # a full turn needs two path arcs; one collapses to a point
            mid = p.point_at(p.start_angle + math.pi)
            d = (f"M {_fmt(start.x)} {_fmt(start.y)} "
                 f"A {_fmt(p.radius)} {_fmt(p.radius)} 0 0 1 {_fmt(mid.x)} {_fmt(mid.y)} "
                 f"A {_fmt(p.radius)} {_fmt(p.radius)} 0 0 1 {_fmt(start.x)} {_fmt(start.y)}")
        else:
            end = p.point_at(p.start_angle + sweep)
            large = "1" if sweep > math.pi else "0"
            d = (f"M {_fmt(start.x)} {_fmt(start.y)} "
                 f"A {_fmt(p.radius)} {_fmt(p.radius)} 0 {large} 1 {_fmt(end.x)} {_fmt(end.y)}")
        return f'<path d="{d}"{stroke}/>'
    if isinstance(p, Text):
        return (f'<text x="{_fmt(p.anchor.x)}" y="{_fmt(-p.anchor.y)}" '
                f'transform="scale(1 -1)" font-family="sans-serif" '
                f'font-size="{_fmt(p.height)}" fill="{_rgb(e.style.color)}" '
                f'stroke="none">{escape(p.content)}</text>')
    raise TypeError(f"not a primitive: {p!r}")


def export_svg(d: Drawing, opts: RenderOptions = RenderOptions()) -> str:
    """Render to a standalone SVG document string."""
    if opts.viewport is not None:
        ids = d.visible_elements(opts.viewport)
    else:
        ids = d.all_element_ids()
    elements = [d.element(i) for i in ids]

    view: Optional[BBox] = None
    for e in elements:
        view = e.bbox if view is None else view.union(e.bbox)
    view = (view.inflated(opts.margin) if view is not None else DEFAULT_VIEW)
    # flip to SVG's y-down space for the viewBox
    vb = (view.min_x, -view.max_y, view.width, view.height)

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
         f'viewBox="{_fmt(vb[0])} {_fmt(vb[1])} {_fmt(vb[2])} {_fmt(vb[3])}">'),
    ]
    if opts.background is not None:
        lines.append(f'<rect x="{_fmt(vb[0])}" y="{_fmt(vb[1])}" '
                     f'width="{_fmt(vb[2])}" height="{_fmt(vb[3])}" '
                     f'fill="{_rgb(opts.background)}" stroke="none"/>')
    lines.append(f'<g transform="scale(1 -1)" fill="none" '
                 f'stroke-width="{_fmt(opts.stroke_width)}" '
                 f'stroke-linecap="round">')
    lines.extend(_shape_node(e) for e in elements)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
