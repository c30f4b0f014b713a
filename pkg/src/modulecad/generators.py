"""Problem-oriented generators: pipeline runs, construction grids, lightning
protection sections and tabular documents.

Every generator is a pure function of its validated parameter record. The
returned elements carry sequential ids from 1 on layer 0; the owning
document re-stamps ids, layer and placement when the module is stored.
"""

from __future__ import annotations

from typing import Any

from .element import Element
from .errors import UnknownKind
from .geometry import Line, LineStyle, Point, Polyline, Primitive, Text, Circle, \
    offset_polyline
from .lightning import (MAX_SPACING_FACTOR, RodZone, double_rod_saddle,
                        protected_radius, single_rod_zone)
from .params import KINDS, schema, validate_params
from .units import convert_unit, format_number

SOLID = LineStyle("solid", (0, 0, 0))
DASH = LineStyle("dash", (0, 0, 0))
DASH_DOT = LineStyle("dash_dot", (0, 0, 0))

Shape = tuple[LineStyle, Primitive]

# Fixed layout of the lightning basic-data table (all values in meters).
LIGHTNING_TABLE_COLUMNS = ({"title": "Object", "width": 30.0},
                           {"title": "h, m", "width": 18.0},
                           {"title": "h0, m", "width": 18.0},
                           {"title": "r0, m", "width": 18.0},
                           {"title": "rx, m", "width": 18.0},
                           {"title": "L, m", "width": 18.0},
                           {"title": "hc, m", "width": 18.0})
LIGHTNING_TABLE_ROW_HEIGHT = 8.0


def _pack(shapes: list[Shape]) -> list[Element]:
    return [Element(i + 1, 0, style, prim)
            for i, (style, prim) in enumerate(shapes)]


def gen_pipeline(params: dict) -> list[Element]:
    """Both pipe walls offset from the centerline, plus the optional axis."""
    p = validate_params("pipeline", params)
    axis = [Point(x, y) for x, y in p["axis"]]
    half = p["diameter"] / 2.0
    shapes: list[Shape] = []
    for prim in offset_polyline(axis, half, "left", p["join"]):
        shapes.append((SOLID, prim))
    for prim in offset_polyline(axis, half, "right", p["join"]):
        shapes.append((SOLID, prim))
    if p["show_axis"]:
        shapes.append((DASH_DOT, Polyline(tuple(axis))))
    return _pack(shapes)


def _letter_label(index: int) -> str:
    # 0 -> A, 25 -> Z, 26 -> AA, spreadsheet style
    out = ""
    index += 1
    while index:
        index, r = divmod(index - 1, 26)
        out = chr(ord("A") + r) + out
    return out


def _positions(start: float, spacings: list[float]) -> list[float]:
    out = [start]
    for s in spacings:
        out.append(out[-1] + s)
    return out


def _centered_text(cx: float, cy: float, height: float, content: str) -> Text:
    width = 0.6 * height * len(content)
    return Text(Point(cx - width / 2.0, cy - height / 2.0), height, content)


def gen_grid(params: dict) -> list[Element]:
    """Construction axes with labeled bubbles and dimension chains.

    Vertical axes run at the cumulative x spacings (and symmetrically for
    horizontal), overhanging the grid body; each axis ends in a bubble whose
    label defaults to 1,2,... across and A,B,... up. A chain of dimension
    lines with 45-degree ticks echoes each spacing below/left of the bubbles.
    """
    p = validate_params("grid", params)
    ox, oy = p["origin"]
    xs = _positions(ox, p["x_spacings"])
    ys = _positions(oy, p["y_spacings"])
    x_labels = p.get("x_labels") or [str(i + 1) for i in range(len(xs))]
    y_labels = p.get("y_labels") or [_letter_label(i) for i in range(len(ys))]
    br = p["bubble_radius"]
    ov = p["overhang"]
    tick = br / 4.0

    y_lo, y_hi = oy - ov, ys[-1] + ov
    x_lo, x_hi = ox - ov, xs[-1] + ov
    shapes: list[Shape] = []
    for x in xs:
        shapes.append((DASH_DOT, Line(Point(x, y_lo), Point(x, y_hi))))
    for y in ys:
        shapes.append((DASH_DOT, Line(Point(x_lo, y), Point(x_hi, y))))

    for x, label in zip(xs, x_labels):
        cy = y_lo - br
        shapes.append((SOLID, Circle(Point(x, cy), br)))
        shapes.append((SOLID, _centered_text(x, cy, br, label)))
    for y, label in zip(ys, y_labels):
        cx = x_lo - br
        shapes.append((SOLID, Circle(Point(cx, y), br)))
        shapes.append((SOLID, _centered_text(cx, y, br, label)))

    if p["x_spacings"]:
        y_dim = y_lo - 2.0 * br - p["dim_offset"]
        for x in xs:
            shapes.append((SOLID, Line(Point(x - tick, y_dim - tick),
                                       Point(x + tick, y_dim + tick))))
        for a, b, spacing in zip(xs, xs[1:], p["x_spacings"]):
            shapes.append((SOLID, Line(Point(a, y_dim), Point(b, y_dim))))
            label = format_number(spacing)
            width = 0.6 * br * len(label)
            shapes.append((SOLID, Text(Point((a + b) / 2.0 - width / 2.0,
                                             y_dim + tick), br, label)))
    if p["y_spacings"]:
        x_dim = x_lo - 2.0 * br - p["dim_offset"]
        for y in ys:
            shapes.append((SOLID, Line(Point(x_dim - tick, y - tick),
                                       Point(x_dim + tick, y + tick))))
        for a, b, spacing in zip(ys, ys[1:], p["y_spacings"]):
            shapes.append((SOLID, Line(Point(x_dim, a), Point(x_dim, b))))
            shapes.append((SOLID, Text(Point(x_dim + tick, (a + b) / 2.0 - br / 2.0),
                                       br, format_number(spacing))))
    return _pack(shapes)


def _cell_content(cell: Any, column: dict) -> tuple[str, Any]:
    """Rendered text and comparable value of a table cell, in column units."""
    if isinstance(cell, str):
        return cell, cell
    if isinstance(cell, dict):
        value = convert_unit(cell["value"], cell["unit"], column["unit"])
        return format_number(value), value
    return format_number(cell), cell


def _row_passes(filt: dict | None, cells: list[tuple[str, Any]]) -> bool:
    if filt is None:
        return True
    _, value = cells[filt["column"]]
    target = filt["value"]
    if filt["op"] == "eq":
        if isinstance(value, str) != isinstance(target, str):
            return False
        return value == target
    if isinstance(value, str):
        return False
    return value > target if filt["op"] == "gt" else value < target


def _table_shapes(origin: tuple[float, float], columns: list[dict],
                  rows: list[list[tuple[str, Any]]], row_height: float) -> list[Shape]:
    x0, y0 = origin
    widths = [c["width"] for c in columns]
    total_w = sum(widths)
    row_count = 1 + len(rows)
    total_h = row_count * row_height
    shapes: list[Shape] = [(SOLID, Polyline((
        Point(x0, y0), Point(x0 + total_w, y0),
        Point(x0 + total_w, y0 - total_h), Point(x0, y0 - total_h),
        Point(x0, y0))))]
    cx = x0
    for w in widths[:-1]:
        cx += w
        shapes.append((SOLID, Line(Point(cx, y0), Point(cx, y0 - total_h))))
    for r in range(1, row_count):
        y = y0 - r * row_height
        shapes.append((SOLID, Line(Point(x0, y), Point(x0 + total_w, y))))

    text_height = 0.7 * row_height
    y_inset = (row_height - text_height) / 2.0
    all_rows = [[(c["title"], c["title"]) for c in columns]] + rows
    for r, row in enumerate(all_rows):
        cell_x = x0
        for (content, _), w in zip(row, widths):
            if content:
                shapes.append((SOLID, Text(
                    Point(cell_x + 1.0, y0 - (r + 1) * row_height + y_inset),
                    text_height, str(content))))
            cell_x += w
    return shapes


def gen_table(params: dict) -> list[Element]:
    """Bordered table growing downward from its origin.

    Data rows are filtered first, numeric cells are converted to their
    column's unit, and all cell text sits left-aligned with a 1 mm inset at
    0.7x the row height.
    """
    p = validate_params("table", params)
    columns = p["columns"]
    rendered = [[_cell_content(cell, col) for cell, col in zip(row, columns)]
                for row in p["rows"]]
    kept = [row for row in rendered if _row_passes(p.get("filter"), row)]
    return _pack(_table_shapes(tuple(p["origin"]), columns, kept, p["row_height"]))


def gen_lightning(params: dict) -> list[Element]:
    """Vertical section through rod protection zones, plus the data table.

    Each rod gets a mast and a triangular zone boundary; adjacent equal-height
    rods within joint-zone reach share one boundary polyline that dips to the
    saddle between them. A dashed reference line marks the protected
    elevation, and a table lists per-rod and per-pair figures in meters.
    """
    p = validate_params("lightning", params)
    rods = p["rods"]
    hx = p["hx"]
    sc = p["scale"]
    zones = [single_rod_zone(rod["h"]) for rod in rods]

    def joined(i: int) -> bool:
        a, b = rods[i], rods[i + 1]
        return (a["h"] == b["h"]
                and b["x"] - a["x"] <= MAX_SPACING_FACTOR * a["h"])

    shapes: list[Shape] = []
    for rod in rods:
        shapes.append((SOLID, Line(Point(rod["x"] * sc, 0.0),
                                   Point(rod["x"] * sc, rod["h"] * sc))))

    pairs: list[tuple[int, float, float]] = []  # (left index, mid x, saddle)
    i = 0
    while i < len(rods):
        boundary = [Point((rods[i]["x"] - zones[i].r0) * sc, 0.0),
                    Point(rods[i]["x"] * sc, zones[i].h0 * sc)]
        j = i
        while j + 1 < len(rods) and joined(j):
            spacing = rods[j + 1]["x"] - rods[j]["x"]
            saddle = double_rod_saddle(rods[j]["h"], spacing)
            mid = (rods[j]["x"] + rods[j + 1]["x"]) / 2.0
            pairs.append((j, mid, saddle))
            boundary.append(Point(mid * sc, saddle * sc))
            boundary.append(Point(rods[j + 1]["x"] * sc, zones[j + 1].h0 * sc))
            j += 1
        boundary.append(Point((rods[j]["x"] + zones[j].r0) * sc, 0.0))
        shapes.append((SOLID, Polyline(tuple(boundary))))
        i = j + 1

    x_min = min(rod["x"] - zone.r0 for rod, zone in zip(rods, zones))
    x_max = max(rod["x"] + zone.r0 for rod, zone in zip(rods, zones))
    shapes.append((DASH, Line(Point(x_min * sc, hx * sc), Point(x_max * sc, hx * sc))))

    def cell(value: Any) -> tuple[str, Any]:
        if isinstance(value, str):
            return (value, value)
        return (format_number(value), value)

    blank = ("", "")
    rows: list[list[tuple[str, Any]]] = []
    for k, (rod, zone) in enumerate(zip(rods, zones)):
        rx = protected_radius(rod["h"], hx)
        rows.append([cell(f"Rod {k + 1}"), cell(rod["h"]), cell(zone.h0),
                     cell(zone.r0), cell(rx), blank, blank])
    for k, _mid, saddle in pairs:
        spacing = rods[k + 1]["x"] - rods[k]["x"]
        rows.append([cell(f"Rods {k + 1}-{k + 2}"), blank, blank, blank, blank,
                     cell(spacing), cell(saddle)])
    table_origin = (x_min * sc, -2.0 * LIGHTNING_TABLE_ROW_HEIGHT)
    shapes.extend(_table_shapes(table_origin, list(LIGHTNING_TABLE_COLUMNS),
                                rows, LIGHTNING_TABLE_ROW_HEIGHT))
    return _pack(shapes)


_GENERATORS = {
    "pipeline": gen_pipeline,
    "grid": gen_grid,
    "lightning": gen_lightning,
    "table": gen_table,
}

assert set(_GENERATORS) == set(KINDS)


def generate(kind: str, params: dict) -> list[Element]:
    """Dispatch to the generator for ``kind``; validates params."""
    try:
        gen = _GENERATORS[kind]
    except KeyError:
        raise UnknownKind(f"unknown generator kind {kind!r}") from None
    return gen(params)


__all__ = [
    "generate", "gen_pipeline", "gen_grid", "gen_lightning", "gen_table",
    "single_rod_zone", "double_rod_saddle", "protected_radius", "RodZone",
    "schema", "validate_params", "KINDS", "format_number",
]
