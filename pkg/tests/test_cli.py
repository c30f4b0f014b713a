from __future__ import annotations

import io
import json
import xml.etree.ElementTree as ET

import pytest

from modulecad import load_drawing
from modulecad.cli import cli_dispatch

PIPE = {"axis": [[0, 0], [10000, 0]], "diameter": 100, "position": "1"}


def run(*argv) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = cli_dispatch(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write_params(tmp_path, name, params) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(params), encoding="utf-8")
    return str(path)


@pytest.fixture
def doc(tmp_path):
    path = str(tmp_path / "d.json")
    assert run("new", path)[0] == 0
    return path


def test_new_creates_loadable_document(doc):
    d = load_drawing(doc)
    assert d.modules == [] and d.free_elements == []


def test_add_prints_module_id(doc, tmp_path):
    code, out, _ = run("add", doc, "--kind", "pipeline",
                       "--params", write_params(tmp_path, "p.json", PIPE))
    assert code == 0
    mid = int(out.strip())
    assert load_drawing(doc).module(mid).kind == "pipeline"


def test_add_invalid_params_names_field(doc, tmp_path):
    bad = write_params(tmp_path, "p.json", dict(PIPE, diameter=-5))
    code, out, err = run("add", doc, "--kind", "pipeline", "--params", bad)
    assert code == 2
    assert "diameter" in err
    assert out == ""


def test_set_move_stretch_del_regen(doc, tmp_path):
    params = write_params(tmp_path, "p.json", PIPE)
    _, out, _ = run("add", doc, "--kind", "pipeline", "--params", params)
    mid = out.strip()

    bigger = write_params(tmp_path, "p2.json", dict(PIPE, diameter=200))
    assert run("set", doc, "--id", mid, "--params", bigger)[0] == 0
    assert load_drawing(doc).module(int(mid)).params["diameter"] == 200.0

    assert run("move", doc, "--id", mid, "--by", "10,20")[0] == 0
    assert load_drawing(doc).module(int(mid)).placement.tx == 10

    assert run("stretch", doc, "--id", mid, "--base", "0,0", "--scale", "2")[0] == 0
    assert load_drawing(doc).module(int(mid)).placement.scale_x == 2

    assert run("regen", doc, "--id", mid)[0] == 0
    assert run("regen", doc)[0] == 0
    assert run("del", doc, "--id", mid)[0] == 0
    assert load_drawing(doc).modules == []


def test_not_found_exit_code(doc):
    assert run("move", doc, "--id", "99", "--by", "1,1")[0] == 3
    assert run("del", doc, "--id", "99")[0] == 3


def test_move_accepts_negative_deltas(doc, tmp_path):
    _, out, _ = run("add", doc, "--kind", "pipeline",
                    "--params", write_params(tmp_path, "p.json", PIPE))
    mid = out.strip()
    assert run("move", doc, "--id", mid, "--by", "-5.5,-2")[0] == 0
    assert load_drawing(doc).module(int(mid)).placement.tx == -5.5


def test_file_format_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{]", encoding="utf-8")
    assert run("spec", str(path))[0] == 4


def test_missing_file_is_other_failure(tmp_path):
    assert run("spec", str(tmp_path / "ghost.json"))[0] == 1


def test_usage_error_exit_code():
    assert run("add")[0] == 2
    assert run("frobnicate", "x")[0] == 2


def test_export_svg(doc, tmp_path):
    run("add", doc, "--kind", "pipeline",
        "--params", write_params(tmp_path, "p.json", PIPE))
    out_path = tmp_path / "out.svg"
    assert run("export", doc, "--out", str(out_path))[0] == 0
    ET.fromstring(out_path.read_text())
    assert run("export", doc, "--out", str(out_path),
               "--viewport", "90000,90000,99000,99000")[0] == 0
    assert "polyline" not in out_path.read_text()


def test_spec_output_and_duplicates(doc, tmp_path):
    run("add", doc, "--kind", "pipeline",
        "--params", write_params(tmp_path, "a.json", PIPE))
    run("add", doc, "--kind", "pipeline",
        "--params", write_params(tmp_path, "b.json",
                                 dict(PIPE, axis=[[0, 0], [5000, 0]])))
    code, out, _ = run("spec", doc, "--check-duplicates")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "1\tPipe DN100\tm\t15"
    assert "DUPLICATE\t1" in lines
    code, out, _ = run("spec", doc)
    assert "DUPLICATE" not in out


def test_proto_save_list_place(doc, tmp_path):
    run("add", doc, "--kind", "pipeline",
        "--params", write_params(tmp_path, "p.json", PIPE))
    lib = str(tmp_path / "lib.json")
    assert run("proto", "save", doc, "--lib", lib, "--name", "run", "--id", "1")[0] == 0
    assert run("proto", "save", doc, "--lib", lib, "--name", "run", "--id", "1")[0] == 2
    assert run("proto", "save", doc, "--lib", lib, "--name", "run", "--id", "1",
               "--overwrite")[0] == 0

    code, out, _ = run("proto", "list", "--lib", lib)
    assert code == 0 and out == "run\tpipeline\n"

    code, out, _ = run("proto", "place", doc, "--lib", lib, "--name", "run",
                       "--at", "100,200")
    assert code == 0
    new_id = int(out.strip())
    d = load_drawing(doc)
    assert d.module(new_id).placement.tx == 100
    assert d.verify_module(new_id)

    assert run("proto", "place", doc, "--lib", lib, "--name", "ghost",
               "--at", "0,0")[0] == 3


def test_failed_mutation_leaves_file_untouched(doc, tmp_path):
    run("add", doc, "--kind", "pipeline",
        "--params", write_params(tmp_path, "p.json", PIPE))
    before = open(doc, "rb").read()
    bad = write_params(tmp_path, "bad.json", dict(PIPE, diameter=-1))
    assert run("set", doc, "--id", "1", "--params", bad)[0] == 2
    assert run("move", doc, "--id", "77", "--by", "1,1")[0] == 3
    assert run("stretch", doc, "--id", "1", "--base", "0,0", "--scale", "0")[0] == 2
    assert run("move", doc, "--id", "1", "--by", "oops")[0] == 2
    assert open(doc, "rb").read() == before
