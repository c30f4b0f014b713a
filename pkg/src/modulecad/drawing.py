"""The drawing document: layers, free elements and Modules.

A Module co-stores the parameter record it was generated from and the
resulting geometry; the stored elements are a cache of the parametric
truth, so every mutation that touches parameters or placement regenerates
them (stable identity lives on the module, element ids are reassigned).

Every element is indexed by the fixed-size zone grid it overlaps, which
lets viewport queries skip zones (and therefore elements) entirely outside
the screen rectangle. Mutating operations validate and regenerate before
committing, so a failing operation leaves the document unchanged.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Optional

from . import jsonio
from .element import Element
from .errors import (ConsistencyError, FileFormatError, InvalidGeometry,
                     InvalidParams, ModuleCadError, NonPositiveScale,
                     NonUniformScaleOfRound, UnknownLayer, UnknownModule,
                     VersionError)
from .generators import generate
from .geometry import (EQ_TOL, IDENTITY, Arc, BBox, Circle, LineStyle, Point,
                       Primitive, SnapHit, Transform, Viewport,
                       apply_transform, nearest_snap, primitives_close,
                       snap_candidates)
from .params import KINDS, validate_params

DEFAULT_ZONE_SIZE = 256.0

FORMAT_NAME = "modulecad-drawing"
FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Layer:
    id: int
    name: str


@dataclass
class ZoneEntry:
    bbox: BBox
    element_ids: list[int]


@dataclass
class Module:
    """Generator kind + parameter record + placement, with the generated
    elements and their per-zone extents cached alongside."""

    id: int
    kind: str
    params: dict
    placement: Transform
    layer: int
    elements: list[Element]
    zone_extents: dict[tuple[int, int], ZoneEntry]


def zone_span(b: BBox, zone_size: float) -> tuple[int, int, int, int]:
    """Inclusive zone coordinate range intersected by a bbox."""
    return (math.floor(b.min_x / zone_size), math.floor(b.min_y / zone_size),
            math.floor(b.max_x / zone_size), math.floor(b.max_y / zone_size))


def build_zone_map(elements: Iterable[Element],
                   zone_size: float) -> dict[tuple[int, int], ZoneEntry]:
    zones: dict[tuple[int, int], ZoneEntry] = {}
    for e in elements:
        zx0, zy0, zx1, zy1 = zone_span(e.bbox, zone_size)
        for zx in range(zx0, zx1 + 1):
            for zy in range(zy0, zy1 + 1):
                entry = zones.get((zx, zy))
                if entry is None:
                    zones[(zx, zy)] = ZoneEntry(e.bbox, [e.id])
                else:
                    entry.bbox = entry.bbox.union(e.bbox)
                    entry.element_ids.append(e.id)
    return zones


class Drawing:
    """A mutable document. Mutations are expected to be serialized by the
    caller (one at a time); readers between mutations see consistent state."""

    def __init__(self, zone_size: float = DEFAULT_ZONE_SIZE,
                 layers: Optional[list[Layer]] = None):
        if not (isinstance(zone_size, (int, float)) and math.isfinite(zone_size)
                and zone_size > 0):
            raise InvalidGeometry(f"zone_size must be > 0, got {zone_size!r}")
        self.zone_size = float(zone_size)
        self.layers: list[Layer] = list(layers) if layers is not None else [Layer(0, "0")]
        self.free_elements: list[Element] = []
        self.modules: list[Module] = []
        self.next_id = 1
        self._by_id: dict[int, Element] = {}
        self._zones: dict[tuple[int, int], set[int]] = {}
        self._modules_by_id: dict[int, Module] = {}

    # -- bookkeeping -----------------------------------------------------

    def _alloc_id(self) -> int:
        out = self.next_id
        self.next_id += 1
        return out

    def _check_layer(self, layer: int) -> None:
        if not any(l.id == layer for l in self.layers):
            raise UnknownLayer(f"layer {layer} does not exist")

    def add_layer(self, name: str) -> int:
        layer_id = max((l.id for l in self.layers), default=-1) + 1
        self.layers.append(Layer(layer_id, name))
        return layer_id

    def _index_element(self, e: Element) -> None:
        self._by_id[e.id] = e
        zx0, zy0, zx1, zy1 = zone_span(e.bbox, self.zone_size)
        for zx in range(zx0, zx1 + 1):
            for zy in range(zy0, zy1 + 1):
                self._zones.setdefault((zx, zy), set()).add(e.id)

    def _unindex_element(self, e: Element) -> None:
        del self._by_id[e.id]
        zx0, zy0, zx1, zy1 = zone_span(e.bbox, self.zone_size)
        for zx in range(zx0, zx1 + 1):
            for zy in range(zy0, zy1 + 1):
                ids = self._zones.get((zx, zy))
                if ids is not None:
                    ids.discard(e.id)
                    if not ids:
                        del self._zones[(zx, zy)]

    def element(self, element_id: int) -> Element:
        try:
            return self._by_id[element_id]
        except KeyError:
            raise UnknownModule(f"no element with id {element_id}") from None

    def all_element_ids(self) -> list[int]:
        return sorted(self._by_id)

    # -- free elements -----------------------------------------------------

    def add_element(self, primitive: Primitive,
                    style: LineStyle = LineStyle(), layer: int = 0) -> int:
        self._check_layer(layer)
        e = Element(self._alloc_id(), layer, style, primitive)
        self.free_elements.append(e)
        self._index_element(e)
        return e.id

    # -- modules --------------------------------------------------------------

    def module(self, module_id: int) -> Module:
        try:
            return self._modules_by_id[module_id]
        except KeyError:
            raise UnknownModule(f"no module with id {module_id}") from None

    def module_bbox(self, module_id: int) -> Optional[BBox]:
        m = self.module(module_id)
        box: Optional[BBox] = None
        for e in m.elements:
            box = e.bbox if box is None else box.union(e.bbox)
        return box

    def _stamped(self, kind: str, params: dict,
                 placement: Transform) -> tuple[list[Element], list]:
        """Generate and place geometry without touching document state."""
        raw = generate(kind, params)
        prims = [apply_transform(e.primitive, placement) for e in raw]
        return raw, prims

    def _commit_elements(self, m: Module, raw: list[Element],
                         prims: list[Primitive]) -> None:
        for e in m.elements:
            self._unindex_element(e)
        m.elements = [Element(self._alloc_id(), m.layer, r.style, p)
                      for r, p in zip(raw, prims)]
        m.zone_extents = build_zone_map(m.elements, self.zone_size)
        for e in m.elements:
            self._index_element(e)

    def create_module(self, kind: str, params: dict, layer: int = 0) -> int:
        self._check_layer(layer)
        canonical = validate_params(kind, params)
        raw, prims = self._stamped(kind, canonical, IDENTITY)
        mid = self._alloc_id()
        m = Module(mid, kind, canonical, IDENTITY, layer, [], {})
        self._commit_elements(m, raw, prims)
        self.modules.append(m)
        self._modules_by_id[mid] = m
        return mid

    def regenerate(self, module_id: int) -> None:
        m = self.module(module_id)
        raw, prims = self._stamped(m.kind, m.params, m.placement)
        self._commit_elements(m, raw, prims)

    def set_params(self, module_id: int, new_params: dict) -> None:
        m = self.module(module_id)
        canonical = validate_params(m.kind, new_params)
        raw, prims = self._stamped(m.kind, canonical, m.placement)
        m.params = canonical
        self._commit_elements(m, raw, prims)

    def move_module(self, module_id: int, dx: float, dy: float) -> None:
        m = self.module(module_id)
        if not (math.isfinite(dx) and math.isfinite(dy)):
            raise InvalidGeometry("move delta must be finite")
        p = m.placement
        placement = Transform(p.tx + dx, p.ty + dy, p.rotation, p.scale_x, p.scale_y)
        raw, prims = self._stamped(m.kind, m.params, placement)
        m.placement = placement
        self._commit_elements(m, raw, prims)

    def stretch_module(self, module_id: int, base: Point,
                       sx: float, sy: float) -> None:
        m = self.module(module_id)
        if not (math.isfinite(sx) and math.isfinite(sy)) or sx <= 0 or sy <= 0:
            raise NonPositiveScale(f"scale must be > 0, got ({sx}, {sy})")
        if sx != sy and any(isinstance(e.primitive, (Circle, Arc))
                            for e in m.elements):
            raise NonUniformScaleOfRound(
                "module contains circles/arcs; stretch must be uniform")
        about_base = Transform(base.x - sx * base.x, base.y - sy * base.y,
                               0.0, sx, sy)
        placement = m.placement.then(about_base)
        raw, prims = self._stamped(m.kind, m.params, placement)
        m.placement = placement
        self._commit_elements(m, raw, prims)

    def delete_module(self, module_id: int) -> None:
        m = self.module(module_id)
        for e in m.elements:
            self._unindex_element(e)
        self.modules.remove(m)
        del self._modules_by_id[module_id]

    def verify_module(self, module_id: int) -> bool:
        """True iff the stored geometry matches what the parameters and
        placement regenerate to, within 1e-9 mm (ids ignored)."""
        m = self.module(module_id)
        try:
            raw, prims = self._stamped(m.kind, m.params, m.placement)
        except ModuleCadError:
            return False
        if len(prims) != len(m.elements):
            return False
        for r, prim, actual in zip(raw, prims, m.elements):
            if actual.style != r.style or actual.layer != m.layer:
                return False
            if not primitives_close(prim, actual.primitive, EQ_TOL):
                return False
        return True

    # -- queries ---------------------------------------------------------------

    def visible_elements(self, viewport: Viewport) -> list[int]:
        """Ids of all elements whose bbox intersects the viewport (closed
        intersection), ascending. Only zones overlapping the viewport are
        visited to gather candidates."""
        zx0, zy0, zx1, zy1 = zone_span(viewport, self.zone_size)
        candidates: set[int] = set()
        span = (zx1 - zx0 + 1) * (zy1 - zy0 + 1)
        if span <= 2 * len(self._zones) + 16:
            for zx in range(zx0, zx1 + 1):
                for zy in range(zy0, zy1 + 1):
                    ids = self._zones.get((zx, zy))
                    if ids:
                        candidates.update(ids)
        else:
            # Huge viewport over a sparse drawing: walking the populated
            # zones visits the same overlap set without the empty cells.
            for (zx, zy), ids in self._zones.items():
                if zx0 <= zx <= zx1 and zy0 <= zy <= zy1:
                    candidates.update(ids)
        by_id = self._by_id
        return sorted(eid for eid in candidates
                      if by_id[eid].bbox.intersects(viewport))

    def snap(self, query: Point, radius: float) -> Optional[SnapHit]:
        """Document-level snap: nearest characteristic point of any element
        whose bbox inflated by the radius contains the query point."""
        if not (math.isfinite(radius) and radius > 0):
            raise InvalidGeometry(f"snap radius must be > 0, got {radius!r}")
        probe = BBox(query.x - radius, query.y - radius,
                     query.x + radius, query.y + radius)
        collected = []
        for eid in self.visible_elements(probe):
            collected.extend(snap_candidates(self._by_id[eid].primitive))
        return nearest_snap(query, radius, collected)


# -- persistence ------------------------------------------------------------------


def drawing_to_json(d: Drawing) -> dict:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "zone_size": d.zone_size,
        "layers": [{"id": l.id, "name": l.name} for l in d.layers],
        "elements": [jsonio.element_to_json(e) for e in d.free_elements],
        "modules": [{
            "id": m.id,
            "kind": m.kind,
            "layer": m.layer,
            "placement": jsonio.placement_to_json(m.placement),
            "params": m.params,
            "elements": [jsonio.element_to_json(e) for e in m.elements],
        } for m in d.modules],
    }


def save_drawing(d: Drawing, path: str | Path) -> None:
    jsonio.atomic_write_text(path, jsonio.dumps_canonical(drawing_to_json(d)))


def _parse_layers(value: Any) -> list[Layer]:
    if not isinstance(value, list):
        raise FileFormatError("layers: expected a list")
    layers = []
    seen = set()
    for i, item in enumerate(value):
        where = f"layers[{i}]"
        if not isinstance(item, dict) or set(item) != {"id", "name"}:
            raise FileFormatError(f"{where}: expected {{id, name}}")
        layer_id, name = item["id"], item["name"]
        if isinstance(layer_id, bool) or not isinstance(layer_id, int):
            raise FileFormatError(f"{where}.id: expected an integer")
        if not isinstance(name, str):
            raise FileFormatError(f"{where}.name: expected a string")
        if layer_id in seen:
            raise FileFormatError(f"{where}: duplicate layer id {layer_id}")
        seen.add(layer_id)
        layers.append(Layer(layer_id, name))
    return layers


def load_drawing(path: str | Path, repair: bool = False) -> Drawing:
    """Parse and validate a document file.

    Documents whose stored geometry disagrees with their parameters are
    rejected with ConsistencyError unless ``repair`` is set, in which case
    the offending modules are regenerated.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FileFormatError("document root must be an object")
    if doc.get("format") != FORMAT_NAME:
        raise FileFormatError(f"not a {FORMAT_NAME} file")
    if doc.get("version") != FORMAT_VERSION:
        raise VersionError(f"unsupported version {doc.get('version')!r}")
    allowed = {"format", "version", "zone_size", "layers", "elements", "modules"}
    extra = set(doc) - allowed
    if extra:
        raise FileFormatError(f"unknown top-level keys {sorted(extra)}")
    for key in allowed:
        if key not in doc:
            raise FileFormatError(f"missing top-level key {key!r}")

    zone_size = doc["zone_size"]
    if isinstance(zone_size, bool) or not isinstance(zone_size, (int, float)) \
            or not math.isfinite(zone_size) or zone_size <= 0:
        raise FileFormatError(f"zone_size: expected a number > 0, got {zone_size!r}")
    d = Drawing(zone_size=float(zone_size), layers=_parse_layers(doc["layers"]))
    layer_ids = {l.id for l in d.layers}

    if not isinstance(doc["elements"], list):
        raise FileFormatError("elements: expected a list")
    seen_ids: set[int] = set()

    def claim(eid: int, where: str) -> None:
        if eid in seen_ids:
            raise FileFormatError(f"{where}: duplicate id {eid}")
        seen_ids.add(eid)

    for i, item in enumerate(doc["elements"]):
        where = f"elements[{i}]"
        e = jsonio.element_from_json(item, where)
        claim(e.id, where)
        if e.layer not in layer_ids:
            raise FileFormatError(f"{where}: unknown layer {e.layer}")
        d.free_elements.append(e)
        d._index_element(e)

    if not isinstance(doc["modules"], list):
        raise FileFormatError("modules: expected a list")
    for i, item in enumerate(doc["modules"]):
        where = f"modules[{i}]"
        if not isinstance(item, dict):
            raise FileFormatError(f"{where}: expected an object")
        expected_keys = {"id", "kind", "layer", "placement", "params", "elements"}
        if set(item) != expected_keys:
            raise FileFormatError(f"{where}: expected keys {sorted(expected_keys)}")
        mid = item["id"]
        if isinstance(mid, bool) or not isinstance(mid, int) or mid < 1:
            raise FileFormatError(f"{where}.id: expected an integer >= 1")
        claim(mid, where)
        kind = item["kind"]
        if kind not in KINDS:
            raise FileFormatError(f"{where}: unknown kind {kind!r}")
        layer = item["layer"]
        if isinstance(layer, bool) or not isinstance(layer, int) or layer not in layer_ids:
            raise FileFormatError(f"{where}.layer: unknown layer {layer!r}")
        placement = jsonio.placement_from_json(item["placement"], f"{where}.placement")
        try:
            params = validate_params(kind, item["params"])
        except InvalidParams as exc:
            raise FileFormatError(f"{where}.params: {exc}") from None
        if not isinstance(item["elements"], list):
            raise FileFormatError(f"{where}.elements: expected a list")
        elements = []
        for j, raw in enumerate(item["elements"]):
            e = jsonio.element_from_json(raw, f"{where}.elements[{j}]")
            claim(e.id, f"{where}.elements[{j}]")
            if e.layer != layer:
                raise FileFormatError(
                    f"{where}.elements[{j}]: layer {e.layer} differs from "
                    f"module layer {layer}")
            elements.append(e)
        m = Module(mid, kind, params, placement, layer, elements,
                   build_zone_map(elements, d.zone_size))
        d.modules.append(m)
        d._modules_by_id[mid] = m
        for e in elements:
            d._index_element(e)

    d.next_id = max(seen_ids, default=0) + 1

    for m in list(d.modules):
        if not d.verify_module(m.id):
            if repair:
                d.regenerate(m.id)
            else:
                raise ConsistencyError(
                    f"module {m.id}: stored geometry does not match its "
                    f"parameters (open with repair to regenerate)")
    return d
