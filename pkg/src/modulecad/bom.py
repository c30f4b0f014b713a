"""Bill-of-materials extraction and cross-module parameter access.

Modules that stand for physical equipment contribute rows (position
designation, name, unit, quantity); grids and tables contribute nothing.
Duplicate position designations across modules are a detectable drawing
error, not an exception, so they are reported as data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .drawing import Drawing, Module
from .errors import WrongKind
from .units import format_number

QTY_DECIMALS = "0.001"


@dataclass(frozen=True)
class SpecItem:
    position: str
    name: str
    unit: str
    qty: float


def _round_qty(value: float) -> float:
    # ties round away from zero, like a human takeoff sheet
    return float(Decimal(repr(value)).quantize(Decimal(QTY_DECIMALS),
                                               rounding=ROUND_HALF_UP))


def _axis_length(axis: list[list[float]]) -> float:
    return sum(math.hypot(b[0] - a[0], b[1] - a[1])
               for a, b in zip(axis, axis[1:]))


def spec_items(m: Module) -> list[SpecItem]:
    """Rows a single module contributes to the drawing's specification."""
    if m.kind == "pipeline":
        qty = _round_qty(_axis_length(m.params["axis"]) / 1000.0)
        name = f"Pipe DN{format_number(m.params['diameter'])}"
        return [SpecItem(m.params["position"], name, "m", qty)]
    if m.kind == "lightning":
        return [SpecItem(m.params["position"],
                         f"Lightning rod h={format_number(rod['h'])}m",
                         "pcs", 1.0)
                for rod in m.params["rods"]]
    return []


def collect_spec(d: Drawing) -> list[SpecItem]:
    """All module contributions, merged on (name, unit) and sorted.

    Quantities of merged rows are summed; the merged row keeps the
    lexicographically smallest position designation.
    """
    merged: dict[tuple[str, str], SpecItem] = {}
    for m in d.modules:
        for item in spec_items(m):
            key = (item.name, item.unit)
            prev = merged.get(key)
            if prev is None:
                merged[key] = item
            else:
                merged[key] = SpecItem(min(prev.position, item.position),
                                       item.name, item.unit,
                                       prev.qty + item.qty)
    return sorted(merged.values(), key=lambda it: (it.position, it.name))


def check_duplicate_positions(d: Drawing) -> list[str]:
    """Nonempty position designations used by more than one module, sorted."""
    counts: dict[str, int] = {}
    for m in d.modules:
        position = m.params.get("position", "")
        if position:
            counts[position] = counts.get(position, 0) + 1
    return sorted(p for p, n in counts.items() if n > 1)


def axes_positions(d: Drawing, module_id: int, direction: str) -> list[float]:
    """Grid axis coordinates along one direction, in drawing mm.

    Cumulative spacings from the grid origin, shifted by the module's
    placement translation; lets other modules reuse the grid as a base.
    """
    m = d.module(module_id)
    if m.kind != "grid":
        raise WrongKind(f"module {module_id} is a {m.kind}, not a grid")
    if direction not in ("x", "y"):
        raise WrongKind(f"direction must be 'x' or 'y', got {direction!r}")
    if direction == "x":
        start = m.params["origin"][0] + m.placement.tx
        spacings = m.params["x_spacings"]
    else:
        start = m.params["origin"][1] + m.placement.ty
        spacings = m.params["y_spacings"]
    out = [start]
    for s in spacings:
        out.append(out[-1] + s)
    return out
