"""HTTP API over one drawing document, consumed by the web UI.

One writer at a time: every request takes the document lock, and mutating
requests persist the document to disk before responding, so the file always
reflects the last acknowledged change. Any 4xx leaves both the in-memory
document and the file untouched (operations validate before committing).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import protolib
from .bom import check_duplicate_positions, collect_spec
from .drawing import Drawing, drawing_to_json, load_drawing, save_drawing
from .errors import (DuplicateName, FileFormatError, InvalidParams,
                     ModuleCadError, UnknownModule, UnknownPrototype)
from .geometry import BBox, Point
from .params import SCHEMAS
from .svg import RenderOptions, export_svg

_STATUS_BY_ERROR = [
    ((UnknownModule, UnknownPrototype), 404),
    ((DuplicateName,), 409),
    ((FileFormatError,), 500),
]


def status_for(exc: ModuleCadError) -> int:
    for types, status in _STATUS_BY_ERROR:
        if isinstance(exc, types):
            return status
    return 400


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"status": status, "code": code, "message": message},
                        status_code=status)


@dataclass
class ServerState:
    drawing: Drawing
    drawing_path: Path
    library_path: Path
    lock: threading.Lock = field(default_factory=threading.Lock)

    def persist(self) -> None:
        save_drawing(self.drawing, self.drawing_path)

    def library(self) -> protolib.Library:
        return protolib.load_or_empty(self.library_path)


async def _body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception:
        raise InvalidParams("request body must be a JSON object") from None
    if not isinstance(data, dict):
        raise InvalidParams("request body must be a JSON object")
    return data


def _num_field(body: dict, key: str) -> float:
    value = body.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) \
            or not math.isfinite(float(value)):
        raise InvalidParams(f"{key}: expected a finite number")
    return float(value)


def _point_field(body: dict, key: str) -> Point:
    value = body.get(key)
    if not isinstance(value, list) or len(value) != 2:
        raise InvalidParams(f"{key}: expected [x, y]")
    if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value):
        raise InvalidParams(f"{key}: expected [x, y] numbers")
    return Point(float(value[0]), float(value[1]))


def _module_id(raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise UnknownModule(f"no module with id {raw!r}") from None


def _parse_viewport(x0: Optional[str], y0: Optional[str],
                    x1: Optional[str], y1: Optional[str]) -> Optional[BBox]:
    values = (x0, y0, x1, y1)
    if all(v is None for v in values):
        return None
    if any(v is None for v in values):
        raise InvalidParams("render viewport needs all of x0, y0, x1, y1")
    try:
        fx0, fy0, fx1, fy1 = (float(v) for v in values)
    except ValueError:
        raise InvalidParams("viewport coordinates must be numbers") from None
    return BBox(min(fx0, fx1), min(fy0, fy1), max(fx0, fx1), max(fy0, fy1))


def _module_summary(state: ServerState, module_id: int) -> dict:
    m = state.drawing.module(module_id)
    box = state.drawing.module_bbox(module_id)
    return {"id": m.id, "kind": m.kind,
            "position": m.params.get("position", ""),
            "bbox": [box.min_x, box.min_y, box.max_x, box.max_y] if box else None}


def create_app(state: ServerState, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="modulecad", docs_url=None, redoc_url=None)

    @app.exception_handler(ModuleCadError)
    async def _domain_error(_request: Request, exc: ModuleCadError):
        return _error_response(status_for(exc), exc.code, str(exc))

    @app.exception_handler(Exception)
    async def _boom(_request: Request, exc: Exception):
        return _error_response(500, "internal", f"{type(exc).__name__}: {exc}")

    @app.get("/api/drawing")
    async def get_drawing():
        with state.lock:
            return drawing_to_json(state.drawing)

    @app.get("/api/schemas")
    async def get_schemas():
        return {kind: sch.to_json() for kind, sch in SCHEMAS.items()}

    @app.get("/api/modules")
    async def list_modules():
        with state.lock:
            return [_module_summary(state, m.id) for m in state.drawing.modules]

    @app.get("/api/modules/{module_id}")
    async def get_module(module_id: str):
        with state.lock:
            m = state.drawing.module(_module_id(module_id))
            out = _module_summary(state, m.id)
            out["layer"] = m.layer
            out["placement"] = {"tx": m.placement.tx, "ty": m.placement.ty,
                                "rot": m.placement.rotation,
                                "sx": m.placement.scale_x, "sy": m.placement.scale_y}
            out["params"] = m.params
            return out

    @app.post("/api/modules", status_code=201)
    async def create_module(request: Request):
        body = await _body(request)
        kind = body.get("kind")
        if not isinstance(kind, str):
            raise InvalidParams("kind: expected a string")
        params = body.get("params")
        layer = body.get("layer", 0)
        if isinstance(layer, bool) or not isinstance(layer, int):
            raise InvalidParams("layer: expected an integer")
        with state.lock:
            mid = state.drawing.create_module(kind, params, layer)
            state.persist()
            return {"id": mid}

    @app.put("/api/modules/{module_id}/params")
    async def put_params(module_id: str, request: Request):
        body = await _body(request)
        with state.lock:
            mid = _module_id(module_id)
            state.drawing.set_params(mid, body.get("params"))
            state.persist()
            return {"id": mid}

    @app.post("/api/modules/{module_id}/move")
    async def move_module(module_id: str, request: Request):
        body = await _body(request)
        dx = _num_field(body, "dx")
        dy = _num_field(body, "dy")
        with state.lock:
            mid = _module_id(module_id)
            state.drawing.move_module(mid, dx, dy)
            state.persist()
            return {"id": mid}

    @app.post("/api/modules/{module_id}/stretch")
    async def stretch_module(module_id: str, request: Request):
        body = await _body(request)
        base = _point_field(body, "base")
        sx = _num_field(body, "sx")
        sy = _num_field(body, "sy") if "sy" in body else sx
        with state.lock:
            mid = _module_id(module_id)
            state.drawing.stretch_module(mid, base, sx, sy)
            state.persist()
            return {"id": mid}

    @app.delete("/api/modules/{module_id}")
    async def delete_module(module_id: str):
        with state.lock:
            mid = _module_id(module_id)
            state.drawing.delete_module(mid)
            state.persist()
            return {"id": mid}

    @app.get("/api/render")
    async def render(x0: Optional[str] = None, y0: Optional[str] = None,
                     x1: Optional[str] = None, y1: Optional[str] = None):
        viewport = _parse_viewport(x0, y0, x1, y1)
        with state.lock:
            svg = export_svg(state.drawing, RenderOptions(viewport=viewport))
        return Response(svg, media_type="image/svg+xml")

    @app.get("/api/snap")
    async def snap(x: Optional[str] = None, y: Optional[str] = None,
                   r: Optional[str] = None):
        try:
            qx, qy, radius = float(x), float(y), float(r)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise InvalidParams("snap needs numeric x, y, r") from None
        with state.lock:
            hit = state.drawing.snap(Point(qx, qy), radius)
        if hit is None:
            return JSONResponse(None)
        return {"point": [hit.point.x, hit.point.y], "kind": hit.kind,
                "distance": hit.dist}

    @app.get("/api/spec")
    async def get_spec():
        with state.lock:
            items = collect_spec(state.drawing)
        return [{"position": it.position, "name": it.name,
                 "unit": it.unit, "qty": it.qty} for it in items]

    @app.get("/api/spec/duplicates")
    async def get_duplicates():
        with state.lock:
            return check_duplicate_positions(state.drawing)

    @app.get("/api/prototypes")
    async def list_prototypes():
        with state.lock:
            lib = state.library()
        return [{"name": p.name, "kind": p.kind} for p in lib.prototypes]

    @app.post("/api/prototypes", status_code=201)
    async def save_prototype(request: Request):
        body = await _body(request)
        name = body.get("name")
        if not isinstance(name, str) or not name:
            raise InvalidParams("name: expected a nonempty string")
        module_id = body.get("module_id")
        if isinstance(module_id, bool) or not isinstance(module_id, int):
            raise InvalidParams("module_id: expected an integer")
        overwrite = body.get("overwrite", False)
        if not isinstance(overwrite, bool):
            raise InvalidParams("overwrite: expected true/false")
        with state.lock:
            m = state.drawing.module(module_id)
            lib = state.library()
            protolib.save_prototype(lib, name, m, overwrite=overwrite)
        return {"name": name}

    @app.post("/api/prototypes/{name}/instantiate", status_code=201)
    async def instantiate(name: str, request: Request):
        body = await _body(request)
        at = _point_field(body, "at")
        layer = body.get("layer", 0)
        if isinstance(layer, bool) or not isinstance(layer, int):
            raise InvalidParams("layer: expected an integer")
        with state.lock:
            proto = state.library().get(name)
            mid = protolib.instantiate(state.drawing, proto, at, layer)
            state.persist()
            return {"id": mid}

    @app.get("/api/prototypes/{name}/preview")
    async def preview(name: str):
        with state.lock:
            proto = state.library().get(name)
        elements = protolib.preview(proto)
        scratch = Drawing()
        for e in elements:
            scratch.add_element(e.primitive, e.style, 0)
        return Response(export_svg(scratch), media_type="image/svg+xml")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(drawing_path: str | Path, port: int, host: str = "127.0.0.1",
          library_path: str | Path | None = None,
          ui_dir: Optional[str] = None) -> int:
    """Load the document and run the API until terminated."""
    import uvicorn

    drawing_path = Path(drawing_path)
    drawing = load_drawing(drawing_path)
    if library_path is None:
        library_path = Path(str(drawing_path) + ".lib.json")
    state = ServerState(drawing, drawing_path, Path(library_path))
    app = create_app(state, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit):
        return 1
    return 0
