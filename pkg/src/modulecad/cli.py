"""Command-line interface over the document operations.

Exit codes: 0 success, 2 invalid parameters or usage, 3 module/prototype
not found, 4 document or library file format problem, 1 anything else.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from . import protolib
from .bom import check_duplicate_positions, collect_spec
from .drawing import Drawing, load_drawing, save_drawing
from .errors import (ConsistencyError, DimensionMismatch, DuplicateName,
                     FileFormatError, HeightOutOfRange, InvalidGeometry,
                     InvalidParams, ModuleCadError, NonPositiveScale,
                     NonUniformScaleOfRound, RodsTooFar, UnknownKind,
                     UnknownLayer, UnknownModule, UnknownPrototype,
                     UnknownUnit, WrongKind)
from .geometry import BBox, Point
from .params import KINDS
from .svg import RenderOptions, export_svg
from .units import format_number

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_NOT_FOUND = 3
EXIT_FORMAT = 4

_INVALID_ERRORS = (InvalidParams, UnknownKind, InvalidGeometry,
                   NonUniformScaleOfRound, NonPositiveScale, HeightOutOfRange,
                   RodsTooFar, DimensionMismatch, UnknownUnit, WrongKind,
                   UnknownLayer, DuplicateName)
_NOT_FOUND_ERRORS = (UnknownModule, UnknownPrototype)
_FORMAT_ERRORS = (FileFormatError, ConsistencyError)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, _INVALID_ERRORS):
        return EXIT_INVALID
    if isinstance(exc, _NOT_FOUND_ERRORS):
        return EXIT_NOT_FOUND
    if isinstance(exc, _FORMAT_ERRORS):
        return EXIT_FORMAT
    return EXIT_FAIL


def _parse_floats(text: str, count: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != count:
        raise InvalidParams(f"{what}: expected {count} comma-separated numbers")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise InvalidParams(f"{what}: expected numbers, got {text!r}") from None


def _read_params(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            params = json.load(f)
    except FileNotFoundError:
        raise InvalidParams(f"{path}: params file not found") from None
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"{path}: invalid JSON: {exc.msg}") from None
    if not isinstance(params, dict):
        raise InvalidParams(f"{path}: params file must hold a JSON object")
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modulecad",
        description="Parametric drawing modules: generate, edit, export.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create an empty drawing document")
    p.add_argument("file")
    p.add_argument("--zone-size", type=float, default=256.0)

    p = sub.add_parser("add", help="generate a new module from a params file")
    p.add_argument("file")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--params", required=True, metavar="PARAMFILE")
    p.add_argument("--layer", type=int, default=0)

    p = sub.add_parser("set", help="replace a module's parameters")
    p.add_argument("file")
    p.add_argument("--id", required=True, type=int)
    p.add_argument("--params", required=True, metavar="PARAMFILE")

    p = sub.add_parser("move", help="shift a module")
    p.add_argument("file")
    p.add_argument("--id", required=True, type=int)
    p.add_argument("--by", required=True, metavar="DX,DY")

    p = sub.add_parser("stretch", help="scale a module about a base point")
    p.add_argument("file")
    p.add_argument("--id", required=True, type=int)
    p.add_argument("--base", required=True, metavar="X,Y")
    p.add_argument("--scale", required=True, metavar="SX[,SY]")

    p = sub.add_parser("del", help="delete a module")
    p.add_argument("file")
    p.add_argument("--id", required=True, type=int)

    p = sub.add_parser("regen", help="regenerate module geometry from parameters")
    p.add_argument("file")
    p.add_argument("--id", type=int)

    p = sub.add_parser("export", help="render the drawing to an SVG file")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--viewport", metavar="X0,Y0,X1,Y1")

    p = sub.add_parser("spec", help="print the specification (BOM) rows")
    p.add_argument("file")
    p.add_argument("--check-duplicates", action="store_true")

    p = sub.add_parser("proto", help="prototype library commands")
    proto_sub = p.add_subparsers(dest="proto_command", required=True)
    ps = proto_sub.add_parser("save", help="save a module's parameters as a prototype")
    ps.add_argument("file")
    ps.add_argument("--lib", required=True)
    ps.add_argument("--name", required=True)
    ps.add_argument("--id", required=True, type=int)
    ps.add_argument("--overwrite", action="store_true")
    pl = proto_sub.add_parser("list", help="list library entries")
    pl.add_argument("--lib", required=True)
    pp = proto_sub.add_parser("place", help="instantiate a prototype into a drawing")
    pp.add_argument("file")
    pp.add_argument("--lib", required=True)
    pp.add_argument("--name", required=True)
    pp.add_argument("--at", required=True, metavar="X,Y")
    pp.add_argument("--layer", type=int, default=0)

    p = sub.add_parser("serve", help="serve the HTTP API for the web UI")
    p.add_argument("file")
    p.add_argument("--port", required=True, type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--lib", help="prototype library (default: <file>.lib.json)")
    p.add_argument("--ui", help="directory of static UI files to serve at /")

    return parser


def _cmd_new(args) -> int:
    d = Drawing(zone_size=args.zone_size)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_add(args, out) -> int:
    params = _read_params(args.params)
    d = load_drawing(args.file)
    mid = d.create_module(args.kind, params, args.layer)
    save_drawing(d, args.file)
    print(mid, file=out)
    return EXIT_OK


def _cmd_set(args) -> int:
    params = _read_params(args.params)
    d = load_drawing(args.file)
    d.set_params(args.id, params)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_move(args) -> int:
    dx, dy = _parse_floats(args.by, 2, "--by")
    d = load_drawing(args.file)
    d.move_module(args.id, dx, dy)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_stretch(args) -> int:
    bx, by = _parse_floats(args.base, 2, "--base")
    parts = args.scale.split(",")
    if len(parts) not in (1, 2):
        raise InvalidParams("--scale: expected SX or SX,SY")
    try:
        sx = float(parts[0])
        sy = float(parts[1]) if len(parts) == 2 else sx
    except ValueError:
        raise InvalidParams(f"--scale: expected numbers, got {args.scale!r}") from None
    d = load_drawing(args.file)
    d.stretch_module(args.id, Point(bx, by), sx, sy)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_del(args) -> int:
    d = load_drawing(args.file)
    d.delete_module(args.id)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_regen(args) -> int:
    d = load_drawing(args.file)
    if args.id is not None:
        d.regenerate(args.id)
    else:
        for m in list(d.modules):
            d.regenerate(m.id)
    save_drawing(d, args.file)
    return EXIT_OK


def _cmd_export(args) -> int:
    d = load_drawing(args.file)
    viewport = None
    if args.viewport:
        x0, y0, x1, y1 = _parse_floats(args.viewport, 4, "--viewport")
        viewport = BBox(min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))
    svg = export_svg(d, RenderOptions(viewport=viewport))
    Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def _cmd_spec(args, out) -> int:
    d = load_drawing(args.file)
    for item in collect_spec(d):
        print(f"{item.position}\t{item.name}\t{item.unit}\t{format_number(item.qty)}",
              file=out)
    if args.check_duplicates:
        for position in check_duplicate_positions(d):
            print(f"DUPLICATE\t{position}", file=out)
    return EXIT_OK


def _cmd_proto(args, out) -> int:
    if args.proto_command == "list":
        lib = protolib.load_library(args.lib)
        for proto in lib.prototypes:
            print(f"{proto.name}\t{proto.kind}", file=out)
        return EXIT_OK
    if args.proto_command == "save":
        d = load_drawing(args.file)
        m = d.module(args.id)
        lib = protolib.load_or_empty(args.lib)
        protolib.save_prototype(lib, args.name, m, overwrite=args.overwrite)
        return EXIT_OK
    # place
    x, y = _parse_floats(args.at, 2, "--at")
    lib = protolib.load_library(args.lib)
    proto = lib.get(args.name)
    d = load_drawing(args.file)
    mid = protolib.instantiate(d, proto, Point(x, y), args.layer)
    save_drawing(d, args.file)
    print(mid, file=out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .server import serve  # deferred: pulls in the HTTP stack
    lib_path = args.lib if args.lib else str(args.file) + ".lib.json"
    return serve(args.file, port=args.port, host=args.host,
                 library_path=lib_path, ui_dir=args.ui)


# flags whose values may start with a minus sign (argparse would otherwise
# read "-5,0" as an option); merged into --flag=value form before parsing
_COORDINATE_FLAGS = {"--by", "--base", "--scale", "--at", "--viewport"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    merged = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _COORDINATE_FLAGS and i + 1 < len(argv):
            value = argv[i + 1]
            if len(value) > 1 and value[0] == "-" and (value[1].isdigit() or value[1] == "."):
                merged.append(f"{token}={value}")
                i += 2
                continue
        merged.append(token)
        i += 1
    return merged


def cli_dispatch(argv: list[str], out=None, err=None) -> int:
    """Run one command; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    argv = _merge_negative_values(argv)
    parser = build_parser()
    try:
        # argparse prints usage/help straight to the process streams; route
        # them to the caller's streams instead
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "new":
            return _cmd_new(args)
        if args.command == "add":
            return _cmd_add(args, out)
        if args.command == "set":
            return _cmd_set(args)
        if args.command == "move":
            return _cmd_move(args)
        if args.command == "stretch":
            return _cmd_stretch(args)
        if args.command == "del":
            return _cmd_del(args)
        if args.command == "regen":
            return _cmd_regen(args)
        if args.command == "export":
            return _cmd_export(args)
        if args.command == "spec":
            return _cmd_spec(args, out)
        if args.command == "proto":
            return _cmd_proto(args, out)
        if args.command == "serve":
            return _cmd_serve(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except ModuleCadError as exc:
        print(f"error: {exc}", file=err)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
