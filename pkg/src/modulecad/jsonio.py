"""JSON (de)serialization of geometry and the atomic-write helper.

Numbers are emitted through the standard library's shortest round-trip
float representation, so a reload is always bit-exact. Parsers here are
strict and raise FileFormatError with a breadcrumb of where in the document
the offense sits.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any

from .element import Element
from .errors import FileFormatError
from .geometry import (Arc, Circle, Line, LineStyle, Point, Polyline,
                       Primitive, Text, Transform)


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a torn file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _need(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise FileFormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _no_extras(obj: dict, allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise FileFormatError(f"{where}: unknown keys {sorted(extra)}")


def _num(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FileFormatError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise FileFormatError(f"{where}: non-finite number")
    return value


def _point(value: Any, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise FileFormatError(f"{where}: expected [x, y]")
    return Point(_num(value[0], where), _num(value[1], where))


def xy(p: Point) -> list[float]:
    return [p.x, p.y]


def style_to_json(s: LineStyle) -> dict:
    return {"linetype": s.linetype, "color": list(s.color)}


def style_from_json(value: Any, where: str) -> LineStyle:
    if not isinstance(value, dict):
        raise FileFormatError(f"{where}: expected a style object")
    _no_extras(value, {"linetype", "color"}, where)
    linetype = _need(value, "linetype", where)
    color = _need(value, "color", where)
    if not isinstance(color, list) or len(color) != 3 \
            or any(isinstance(c, bool) or not isinstance(c, int) for c in color):
        raise FileFormatError(f"{where}.color: expected [r, g, b] integers")
    try:
        return LineStyle(linetype, tuple(color))
    except Exception as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def primitive_to_json(p: Primitive) -> dict:
    if isinstance(p, Line):
        return {"type": "line", "a": xy(p.a), "b": xy(p.b)}
    if isinstance(p, Polyline):
        return {"type": "polyline", "vertices": [xy(v) for v in p.vertices]}
    if isinstance(p, Circle):
        return {"type": "circle", "center": xy(p.center), "radius": p.radius}
    if isinstance(p, Arc):
        return {"type": "arc", "center": xy(p.center), "radius": p.radius,
                "start_angle": p.start_angle, "end_angle": p.end_angle}
    if isinstance(p, Text):
        return {"type": "text", "anchor": xy(p.anchor), "height": p.height,
                "content": p.content}
    raise TypeError(f"not a primitive: {p!r}")


def primitive_from_json(value: Any, where: str) -> Primitive:
    if not isinstance(value, dict):
        raise FileFormatError(f"{where}: expected a primitive object")
    kind = value.get("type")
    try:
        if kind == "line":
            _no_extras(value, {"type", "a", "b"}, where)
            return Line(_point(_need(value, "a", where), f"{where}.a"),
                        _point(_need(value, "b", where), f"{where}.b"))
        if kind == "polyline":
            _no_extras(value, {"type", "vertices"}, where)
            verts = _need(value, "vertices", where)
            if not isinstance(verts, list):
                raise FileFormatError(f"{where}.vertices: expected a list")
            return Polyline(tuple(_point(v, f"{where}.vertices[{i}]")
                                  for i, v in enumerate(verts)))
        if kind == "circle":
            _no_extras(value, {"type", "center", "radius"}, where)
            return Circle(_point(_need(value, "center", where), f"{where}.center"),
                          _num(_need(value, "radius", where), f"{where}.radius"))
        if kind == "arc":
            _no_extras(value, {"type", "center", "radius", "start_angle", "end_angle"}, where)
            return Arc(_point(_need(value, "center", where), f"{where}.center"),
                       _num(_need(value, "radius", where), f"{where}.radius"),
                       _num(_need(value, "start_angle", where), f"{where}.start_angle"),
                       _num(_need(value, "end_angle", where), f"{where}.end_angle"))
        if kind == "text":
            _no_extras(value, {"type", "anchor", "height", "content"}, where)
            content = _need(value, "content", where)
            if not isinstance(content, str):
                raise FileFormatError(f"{where}.content: expected a string")
            return Text(_point(_need(value, "anchor", where), f"{where}.anchor"),
                        _num(_need(value, "height", where), f"{where}.height"),
                        content)
    except FileFormatError:
        raise
    except Exception as exc:
        raise FileFormatError(f"{where}: {exc}") from None
    raise FileFormatError(f"{where}: unknown primitive type {kind!r}")


def element_to_json(e: Element) -> dict:
    return {"id": e.id, "layer": e.layer, "style": style_to_json(e.style),
            "primitive": primitive_to_json(e.primitive)}


def element_from_json(value: Any, where: str) -> Element:
    if not isinstance(value, dict):
        raise FileFormatError(f"{where}: expected an element object")
    _no_extras(value, {"id", "layer", "style", "primitive"}, where)
    eid = _need(value, "id", where)
    layer = _need(value, "layer", where)
    if isinstance(eid, bool) or not isinstance(eid, int) or eid < 1:
        raise FileFormatError(f"{where}.id: expected an integer >= 1")
    if isinstance(layer, bool) or not isinstance(layer, int):
        raise FileFormatError(f"{where}.layer: expected an integer")
    return Element(eid, layer,
                   style_from_json(_need(value, "style", where), f"{where}.style"),
                   primitive_from_json(_need(value, "primitive", where),
                                       f"{where}.primitive"))


def placement_to_json(t: Transform) -> dict:
    return {"tx": t.tx, "ty": t.ty, "rot": t.rotation,
            "sx": t.scale_x, "sy": t.scale_y}


def placement_from_json(value: Any, where: str) -> Transform:
    if not isinstance(value, dict):
        raise FileFormatError(f"{where}: expected a placement object")
    _no_extras(value, {"tx", "ty", "rot", "sx", "sy"}, where)
    try:
        return Transform(_num(_need(value, "tx", where), f"{where}.tx"),
                         _num(_need(value, "ty", where), f"{where}.ty"),
                         _num(_need(value, "rot", where), f"{where}.rot"),
                         _num(_need(value, "sx", where), f"{where}.sx"),
                         _num(_need(value, "sy", where), f"{where}.sy"))
    except FileFormatError:
        raise
    except Exception as exc:
        raise FileFormatError(f"{where}: {exc}") from None
