from __future__ import annotations

import random

import pytest

from modulecad import (Drawing, axes_positions, check_duplicate_positions,
                       collect_spec, spec_items)
from modulecad.errors import UnknownModule, WrongKind

from fixtures import RANDOM_PARAMS


def test_pipeline_spec_item_example():
    d = Drawing()
    mid = d.create_module("pipeline", {"axis": [[0, 0], [10000, 0]],
                                       "diameter": 100, "position": "T1"})
    (item,) = spec_items(d.module(mid))
    assert (item.position, item.name, item.unit, item.qty) == ("T1", "Pipe DN100", "m", 10.0)


def test_pipeline_qty_rounds_half_away_from_zero():
    d = Drawing()
    # 1234.5 mm -> 1.2345 m -> rounds up to 1.235 at 3 decimals
    mid = d.create_module("pipeline", {"axis": [[0, 0], [1234.5, 0]],
                                       "diameter": 50})
    (item,) = spec_items(d.module(mid))
    assert item.qty == 1.235


def test_grid_and_table_contribute_nothing():
    d = Drawing()
    gid = d.create_module("grid", {"origin": [0, 0], "x_spacings": [], "y_spacings": []})
    tid = d.create_module("table", {"origin": [0, 0],
                                    "columns": [{"title": "a", "width": 10}],
                                    "rows": []})
    assert spec_items(d.module(gid)) == []
    assert spec_items(d.module(tid)) == []


def test_lightning_one_item_per_rod():
    d = Drawing()
    mid = d.create_module("lightning", {"rods": [{"x": 0, "h": 10}, {"x": 30, "h": 10}],
                                        "position": "M1"})
    items = spec_items(d.module(mid))
    assert len(items) == 2
    assert all(i.name == "Lightning rod h=10m" and i.unit == "pcs" and i.qty == 1.0
               for i in items)


def test_collect_spec_merges_and_sorts():
    d = Drawing()
    assert collect_spec(d) == []
    d.create_module("pipeline", {"axis": [[0, 0], [10000, 0]], "diameter": 100,
                                 "position": "2"})
    d.create_module("pipeline", {"axis": [[0, 0], [5000, 0]], "diameter": 100,
                                 "position": "1"})
    d.create_module("pipeline", {"axis": [[0, 0], [5000, 0]], "diameter": 200,
                                 "position": "3"})
    rows = collect_spec(d)
    assert [(r.position, r.name, r.qty) for r in rows] == [
        ("1", "Pipe DN100", 15.0), ("3", "Pipe DN200", 5.0)]


def test_collect_spec_totals_match_brute_force():
    rng = random.Random(31)
    d = Drawing()
    for _ in range(12):
        kind = rng.choice(["pipeline", "lightning", "grid"])
        d.create_module(kind, RANDOM_PARAMS[kind](rng))
    totals: dict[tuple[str, str], float] = {}
    for m in d.modules:
        for item in spec_items(m):
            key = (item.name, item.unit)
            totals[key] = totals.get(key, 0.0) + item.qty
    collected = {(r.name, r.unit): r.qty for r in collect_spec(d)}
    assert collected == totals


def test_duplicate_positions():
    d = Drawing()
    assert check_duplicate_positions(d) == []
    d.create_module("pipeline", {"axis": [[0, 0], [100, 0]], "diameter": 10,
                                 "position": "1"})
    d.create_module("pipeline", {"axis": [[0, 0], [100, 0]], "diameter": 10,
                                 "position": "2"})
    assert check_duplicate_positions(d) == []
    d.create_module("lightning", {"rods": [{"x": 0, "h": 5}], "position": "1"})
    assert check_duplicate_positions(d) == ["1"]


def test_duplicate_positions_ignores_empty():
    d = Drawing()
    d.create_module("pipeline", {"axis": [[0, 0], [100, 0]], "diameter": 10})
    d.create_module("pipeline", {"axis": [[0, 0], [100, 0]], "diameter": 10})
    assert check_duplicate_positions(d) == []


def test_axes_positions_prefix_sums_and_translation():
    d = Drawing()
    gid = d.create_module("grid", {"origin": [0, 0], "x_spacings": [6000, 6000],
                                   "y_spacings": [4000]})
    assert axes_positions(d, gid, "x") == [0, 6000, 12000]
    assert axes_positions(d, gid, "y") == [0, 4000]
    d.move_module(gid, 500, -100)
    assert axes_positions(d, gid, "x") == [500, 6500, 12500]
    assert axes_positions(d, gid, "y") == [-100, 3900]


def test_axes_positions_wrong_kind_and_unknown():
    d = Drawing()
    pid = d.create_module("pipeline", {"axis": [[0, 0], [100, 0]], "diameter": 10})
    with pytest.raises(WrongKind):
        axes_positions(d, pid, "x")
    with pytest.raises(UnknownModule):
        axes_positions(d, 123, "x")
