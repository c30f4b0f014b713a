"""Measurement units and the numeric text format used on drawings."""

from __future__ import annotations

import math

from .errors import DimensionMismatch, UnknownUnit

# factor = how many base units one unit is worth (base has factor 1)
UNIT_TABLE: dict[str, dict[str, float]] = {
    "length": {"mm": 1.0, "cm": 10.0, "m": 1000.0},
    "mass": {"kg": 1.0, "t": 1000.0},
    "pressure": {"Pa": 1.0, "kPa": 1e3, "MPa": 1e6},
}

_DIMENSION_OF = {unit: dim for dim, units in UNIT_TABLE.items() for unit in units}


def dimension_of(unit: str) -> str:
    try:
        return _DIMENSION_OF[unit]
    except KeyError:
        raise UnknownUnit(f"unknown unit {unit!r}") from None


def convert_unit(value: float, from_unit: str, to_unit: str) -> float:
    """Convert a value between two units of the same dimension."""
    dim_from = dimension_of(from_unit)
    dim_to = dimension_of(to_unit)
    if dim_from != dim_to:
        raise DimensionMismatch(
            f"cannot convert {from_unit} ({dim_from}) to {to_unit} ({dim_to})")
    return value * UNIT_TABLE[dim_from][from_unit] / UNIT_TABLE[dim_to][to_unit]


def format_number(value: float) -> str:
    """Numeric text as it appears on a drawing.

    No exponent notation, trailing zeros stripped, "." as decimal separator.
    """
    if not math.isfinite(value):
        raise ValueError(f"cannot format non-finite number {value!r}")
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    text = f"{value:.12f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"
