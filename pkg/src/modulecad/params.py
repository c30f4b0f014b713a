"""Parameter schemas for the generator kinds, and validation to canonical form.

A parameter record travels as a plain JSON-shaped dict (the same shape in
document files, prototype libraries and the HTTP API). ``validate_params``
checks a record against its kind's schema and returns a canonical copy:
numbers become floats, defaults are filled in, keys follow schema order, so
serialization is byte-stable.

Field-level numeric bounds apply to each item for list-typed fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import InvalidParams, UnknownKind, UnsortedRods
from .lightning import single_rod_zone
from .units import dimension_of

FILTER_OPS = ("eq", "gt", "lt")


@dataclass(frozen=True)
class Field:
    name: str
    type: str
    required: bool = True
    default: Any = None
    minimum: Optional[float] = None
    exclusive_minimum: Optional[float] = None
    maximum: Optional[float] = None
    choices: Optional[tuple[str, ...]] = None
    unit: Optional[str] = None
    min_items: int = 0

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "type": self.type,
                               "required": self.required}
        for key in ("default", "minimum", "exclusive_minimum", "maximum", "unit"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.choices is not None:
            out["choices"] = list(self.choices)
        if self.min_items:
            out["min_items"] = self.min_items
        return out


@dataclass(frozen=True)
class ParamSchema:
    kind: str
    fields: tuple[Field, ...]

    def field_names(self) -> list[str]:
        return [f.name for f in self.fields]

    def to_json(self) -> dict:
        return {"kind": self.kind, "fields": [f.to_json() for f in self.fields]}


SCHEMAS: dict[str, ParamSchema] = {
    "pipeline": ParamSchema("pipeline", (
        Field("axis", "point_list", min_items=2, unit="mm"),
        Field("diameter", "number", exclusive_minimum=0.0, unit="mm"),
        Field("join", "enum", required=False, default="miter",
              choices=("miter", "arc")),
        Field("show_axis", "boolean", required=False, default=True),
        Field("position", "string", required=False, default=""),
    )),
    "grid": ParamSchema("grid", (
        Field("origin", "point", unit="mm"),
        Field("x_spacings", "number_list", exclusive_minimum=0.0, unit="mm"),
        Field("y_spacings", "number_list", exclusive_minimum=0.0, unit="mm"),
        Field("bubble_radius", "number", required=False, default=500.0,
              exclusive_minimum=0.0, unit="mm"),
        Field("x_labels", "string_list", required=False),
        Field("y_labels", "string_list", required=False),
        Field("overhang", "number", required=False, default=1000.0,
              minimum=0.0, unit="mm"),
        Field("dim_offset", "number", required=False, default=1000.0,
              exclusive_minimum=0.0, unit="mm"),
    )),
    "lightning": ParamSchema("lightning", (
        Field("rods", "rod_list", min_items=1, unit="m"),
        Field("hx", "number", required=False, default=0.0, minimum=0.0, unit="m"),
        Field("scale", "number", required=False, default=10.0,
              exclusive_minimum=0.0, unit="mm/m"),
        Field("position", "string", required=False, default=""),
    )),
    "table": ParamSchema("table", (
        Field("origin", "point", unit="mm"),
        Field("columns", "column_list", min_items=1),
        Field("rows", "row_list"),
        Field("row_height", "number", required=False, default=8.0,
              exclusive_minimum=0.0, unit="mm"),
        Field("filter", "filter", required=False),
    )),
}

KINDS = tuple(SCHEMAS)


def schema(kind: str) -> ParamSchema:
    try:
        return SCHEMAS[kind]
    except KeyError:
        raise UnknownKind(f"unknown generator kind {kind!r}") from None


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParams(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParams(f"{where}: number must be finite")
    return value


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParams(f"{where}: expected an integer, got {value!r}")
    return value


def _as_string(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise InvalidParams(f"{where}: expected a string, got {value!r}")
    return value


def _as_point(value: Any, where: str) -> list[float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise InvalidParams(f"{where}: expected a point [x, y], got {value!r}")
    return [_as_number(value[0], f"{where}[0]"), _as_number(value[1], f"{where}[1]")]


def _check_bounds(value: float, field: Field, where: str) -> None:
    if field.minimum is not None and value < field.minimum:
        raise InvalidParams(f"{where}: must be >= {field.minimum:g}, got {value!r}")
    if field.exclusive_minimum is not None and value <= field.exclusive_minimum:
        raise InvalidParams(f"{where}: must be > {field.exclusive_minimum:g}, got {value!r}")
    if field.maximum is not None and value > field.maximum:
        raise InvalidParams(f"{where}: must be <= {field.maximum:g}, got {value!r}")


def _as_list(value: Any, field: Field, where: str) -> list:
    if not isinstance(value, (list, tuple)):
        raise InvalidParams(f"{where}: expected a list, got {value!r}")
    if len(value) < field.min_items:
        raise InvalidParams(f"{where}: needs at least {field.min_items} items")
    return list(value)


def _as_cell(value: Any, where: str) -> Any:
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        extra = set(value) - {"value", "unit"}
        if extra or "value" not in value or "unit" not in value:
            raise InvalidParams(f"{where}: unit-tagged cell must be {{value, unit}}")
        unit = _as_string(value["unit"], f"{where}.unit")
        dimension_of(unit)
        return {"value": _as_number(value["value"], f"{where}.value"), "unit": unit}
    return _as_number(value, where)


def _canon_value(field: Field, value: Any, where: str) -> Any:
    t = field.type
    if t == "number":
        number = _as_number(value, where)
        _check_bounds(number, field, where)
        return number
    if t == "integer":
        integer = _as_int(value, where)
        _check_bounds(integer, field, where)
        return integer
    if t == "string":
        return _as_string(value, where)
    if t == "boolean":
        if not isinstance(value, bool):
            raise InvalidParams(f"{where}: expected true/false, got {value!r}")
        return value
    if t == "enum":
        text = _as_string(value, where)
        if text not in (field.choices or ()):
            raise InvalidParams(f"{where}: must be one of {list(field.choices or ())}, got {text!r}")
        return text
    if t == "point":
        return _as_point(value, where)
    if t == "point_list":
        return [_as_point(v, f"{where}[{i}]")
                for i, v in enumerate(_as_list(value, field, where))]
    if t == "number_list":
        out = []
        for i, v in enumerate(_as_list(value, field, where)):
            number = _as_number(v, f"{where}[{i}]")
            _check_bounds(number, field, f"{where}[{i}]")
            out.append(number)
        return out
    if t == "string_list":
        out = []
        for i, v in enumerate(_as_list(value, field, where)):
            text = _as_string(v, f"{where}[{i}]")
            if not text:
                raise InvalidParams(f"{where}[{i}]: must be nonempty")
            out.append(text)
        return out
    if t == "rod_list":
        rods = []
        for i, v in enumerate(_as_list(value, field, where)):
            if not isinstance(v, dict) or set(v) != {"x", "h"}:
                raise InvalidParams(f"{where}[{i}]: expected {{x, h}}, got {v!r}")
            rods.append({"x": _as_number(v["x"], f"{where}[{i}].x"),
                         "h": _as_number(v["h"], f"{where}[{i}].h")})
        return rods
    if t == "column_list":
        columns = []
        for i, v in enumerate(_as_list(value, field, where)):
            if not isinstance(v, dict) or not {"title", "width"} <= set(v) \
                    or set(v) - {"title", "width", "unit"}:
                raise InvalidParams(
                    f"{where}[{i}]: expected {{title, width[, unit]}}, got {v!r}")
            column = {"title": _as_string(v["title"], f"{where}[{i}].title"),
                      "width": _as_number(v["width"], f"{where}[{i}].width")}
            if column["width"] <= 0.0:
                raise InvalidParams(f"{where}[{i}].width: must be > 0")
            if "unit" in v:
                unit = _as_string(v["unit"], f"{where}[{i}].unit")
                dimension_of(unit)
                column["unit"] = unit
            columns.append(column)
        return columns
    if t == "row_list":
        return [[_as_cell(c, f"{where}[{i}][{j}]") for j, c in
                 enumerate(_as_list(row, Field("cells", "row"), f"{where}[{i}]"))]
                for i, row in enumerate(_as_list(value, field, where))]
    if t == "filter":
        if not isinstance(value, dict) or set(value) != {"column", "op", "value"}:
            raise InvalidParams(f"{where}: expected {{column, op, value}}, got {value!r}")
        op = _as_string(value["op"], f"{where}.op")
        if op not in FILTER_OPS:
            raise InvalidParams(f"{where}.op: must be one of {list(FILTER_OPS)}")
        column = _as_int(value["column"], f"{where}.column")
        if column < 0:
            raise InvalidParams(f"{where}.column: must be >= 0")
        raw = value["value"]
        return {"column": column, "op": op,
                "value": raw if isinstance(raw, str) else _as_number(raw, f"{where}.value")}
    raise AssertionError(f"unhandled field type {t!r}")


def _check_pipeline(p: dict) -> None:
    pass  # geometric degeneracies surface from the offset kernel


def _check_grid(p: dict) -> None:
    for axis_name in ("x", "y"):
        labels = p.get(f"{axis_name}_labels")
        spacings = p[f"{axis_name}_spacings"]
        if labels is not None and len(labels) != len(spacings) + 1:
            raise InvalidParams(
                f"{axis_name}_labels: expected {len(spacings) + 1} labels "
                f"for {len(spacings)} spacings, got {len(labels)}")


def _check_lightning(p: dict) -> None:
    rods = p["rods"]
    for i in range(len(rods) - 1):
        if rods[i + 1]["x"] <= rods[i]["x"]:
            raise UnsortedRods(
                f"rods[{i + 1}].x: rods must be sorted by strictly increasing x")
    min_h0 = min(single_rod_zone(rod["h"]).h0 for rod in rods)
    if p["hx"] >= min_h0:
        raise InvalidParams(
            f"hx: must be below the lowest zone apex {min_h0:g} m, got {p['hx']:g}")


def _check_table(p: dict) -> None:
    columns = p["columns"]
    for i, row in enumerate(p["rows"]):
        if len(row) != len(columns):
            raise InvalidParams(
                f"rows[{i}]: expected {len(columns)} cells, got {len(row)}")
        for j, cell in enumerate(row):
            if isinstance(cell, dict) and "unit" not in columns[j]:
                raise InvalidParams(
                    f"rows[{i}][{j}]: unit-tagged cell in a unit-less column")
    filt = p.get("filter")
    if filt is not None:
        if filt["column"] >= len(columns):
            raise InvalidParams(
                f"filter.column: column {filt['column']} out of range")
        if filt["op"] in ("gt", "lt") and isinstance(filt["value"], str):
            raise InvalidParams(f"filter.value: {filt['op']} needs a numeric value")


_CROSS_CHECKS: dict[str, Callable[[dict], None]] = {
    "pipeline": _check_pipeline,
    "grid": _check_grid,
    "lightning": _check_lightning,
    "table": _check_table,
}


def validate_params(kind: str, params: Any) -> dict:
    """Validate a raw record against its kind's schema; return the canonical copy.

    Raises InvalidParams naming the offending field, or UnknownKind.
    """
    sch = schema(kind)
    if not isinstance(params, dict):
        raise InvalidParams(f"params: expected an object, got {params!r}")
    known = {f.name for f in sch.fields}
    for key in params:
        if key not in known:
            raise InvalidParams(f"unknown parameter {key!r} for kind {kind!r}")
    canonical: dict[str, Any] = {}
    for field in sch.fields:
        value = params.get(field.name)
        if value is None:
            if field.required:
                raise InvalidParams(f"{field.name}: required parameter missing")
            if field.default is not None:
                canonical[field.name] = field.default
            continue
        canonical[field.name] = _canon_value(field, value, field.name)
    _CROSS_CHECKS[kind](canonical)
    return canonical
