"""Prototype libraries: named parameter records persisted without geometry.

A prototype is a reusable object, not an instance, so placement is never
saved. Geometry is regenerated on demand when an entry is previewed or
placed into a drawing, which keeps library files tiny and always in step
with the current generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import jsonio
from .drawing import Drawing, Module
from .element import Element
from .errors import DuplicateName, FileFormatError, InvalidParams, \
    UnknownPrototype, VersionError
from .generators import generate
from .geometry import Point
from .params import KINDS, validate_params

FORMAT_NAME = "modulecad-protolib"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class Prototype:
    name: str
    kind: str
    params: dict


class Library:
    """Path-backed list of prototypes with unique names."""

    def __init__(self, path: str | Path, prototypes: Optional[list[Prototype]] = None):
        self.path = Path(path)
        self.prototypes: list[Prototype] = list(prototypes or [])

    def names(self) -> list[str]:
        return [p.name for p in self.prototypes]

    def get(self, name: str) -> Prototype:
        for p in self.prototypes:
            if p.name == name:
                return p
        raise UnknownPrototype(f"no prototype named {name!r}")

    def to_json(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "prototypes": [{"name": p.name, "kind": p.kind, "params": p.params}
                           for p in self.prototypes],
        }

    def save(self) -> None:
        jsonio.atomic_write_text(self.path, jsonio.dumps_canonical(self.to_json()))


def load_library(path: str | Path) -> Library:
    """Parse and schema-validate a library file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise FileFormatError(f"not a {FORMAT_NAME} file")
    if doc.get("version") != FORMAT_VERSION:
        raise VersionError(f"unsupported version {doc.get('version')!r}")
    extra = set(doc) - {"format", "version", "prototypes"}
    if extra:
        raise FileFormatError(f"unknown top-level keys {sorted(extra)}")
    entries = doc.get("prototypes")
    if not isinstance(entries, list):
        raise FileFormatError("prototypes: expected a list")
    prototypes = []
    seen = set()
    for i, item in enumerate(entries):
        where = f"prototypes[{i}]"
        if not isinstance(item, dict) or set(item) != {"name", "kind", "params"}:
            raise FileFormatError(f"{where}: expected {{name, kind, params}}")
        name = item["name"]
        if not isinstance(name, str) or not name:
            raise FileFormatError(f"{where}.name: expected a nonempty string")
        if name in seen:
            raise FileFormatError(f"{where}: duplicate name {name!r}")
        seen.add(name)
        kind = item["kind"]
        if kind not in KINDS:
            raise FileFormatError(f"{where} ({name!r}): unknown kind {kind!r}")
        try:
            params = validate_params(kind, item["params"])
        except InvalidParams as exc:
            raise InvalidParams(f"prototype {name!r}: {exc}") from None
        prototypes.append(Prototype(name, kind, params))
    return Library(path, prototypes)


def load_or_empty(path: str | Path) -> Library:
    if Path(path).exists():
        return load_library(path)
    return Library(path)


def save_prototype(lib: Library, name: str, module: Module,
                   overwrite: bool = False) -> None:
    """Record a module's kind and parameters under ``name`` and rewrite the
    library file atomically. Placement and geometry are not saved."""
    if not name:
        raise InvalidParams("prototype name must be nonempty")
    existing = next((p for p in lib.prototypes if p.name == name), None)
    if existing is not None and not overwrite:
        raise DuplicateName(f"prototype {name!r} already exists")
    proto = Prototype(name, module.kind, module.params)
    if existing is not None:
        lib.prototypes[lib.prototypes.index(existing)] = proto
    else:
        lib.prototypes.append(proto)
    try:
        lib.save()
    except BaseException:
        # keep the in-memory list in step with the untouched file
        if existing is not None:
            lib.prototypes[lib.prototypes.index(proto)] = existing
        else:
            lib.prototypes.remove(proto)
        raise


def preview(proto: Prototype) -> list[Element]:
    """Generator output at identity placement; touches no document."""
    return generate(proto.kind, proto.params)


def instantiate(d: Drawing, proto: Prototype, at: Point, layer: int = 0) -> int:
    """Place a prototype into a drawing at the given point."""
    mid = d.create_module(proto.kind, proto.params, layer)
    d.move_module(mid, at.x, at.y)
    return mid
