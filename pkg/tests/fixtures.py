"""Shared fixture builders: the three golden drawings and random valid
parameter records per generator kind (used by determinism and fuzz tests)."""

from __future__ import annotations

import math
import random
import string

from modulecad import Drawing, Point

GOLDEN_NAMES = ("pipeline_lbend", "grid_3x2", "lightning_two_rod")


def pipeline_lbend_drawing() -> Drawing:
    d = Drawing()
    d.create_module("pipeline", {
        "axis": [[0, 0], [10000, 0], [10000, 8000]],
        "diameter": 200,
        "join": "miter",
        "show_axis": True,
        "position": "T1",
    })
    return d


def grid_3x2_drawing() -> Drawing:
    d = Drawing()
    d.create_module("grid", {
        "origin": [0, 0],
        "x_spacings": [6000, 6000],
        "y_spacings": [4000],
        "bubble_radius": 400,
        "overhang": 800,
        "dim_offset": 900,
    })
    return d


def lightning_two_rod_drawing() -> Drawing:
    d = Drawing()
    d.create_module("lightning", {
        "rods": [{"x": 0, "h": 10}, {"x": 30, "h": 10}],
        "hx": 4.6,
        "scale": 10,
        "position": "M1",
    })
    return d


GOLDEN_BUILDERS = {
    "pipeline_lbend": pipeline_lbend_drawing,
    "grid_3x2": grid_3x2_drawing,
    "lightning_two_rod": lightning_two_rod_drawing,
}


# --- random valid parameter records -------------------------------------------

def random_axis(rng: random.Random, max_points: int = 10,
                max_turn_deg: float = 145.0) -> tuple[list[list[float]], float]:
    """Open polyline with bounded turns; returns (vertices, min segment length).

    Turns stay below the miter limit and segment lengths in [1, 10000] mm,
    so any offset distance up to min_len/8 keeps the miter joins sane.
    """
    n = rng.randint(2, max_points)
    heading = rng.uniform(-math.pi, math.pi)
    x = rng.uniform(-10000.0, 10000.0)
    y = rng.uniform(-10000.0, 10000.0)
    points = [[x, y]]
    min_len = math.inf
    for _ in range(n - 1):
        length = rng.uniform(1.0, 10000.0)
        min_len = min(min_len, length)
        x += length * math.cos(heading)
        y += length * math.sin(heading)
        points.append([x, y])
        heading += rng.uniform(-math.radians(max_turn_deg), math.radians(max_turn_deg))
    return points, min_len


def _word(rng: random.Random, n: int = 6) -> str:
    return "".join(rng.choice(string.ascii_letters) for _ in range(rng.randint(1, n)))


def random_pipeline_params(rng: random.Random) -> dict:
    axis, min_len = random_axis(rng)
    return {
        "axis": axis,
        "diameter": min_len / 4.0 * rng.uniform(0.1, 1.0),
        "join": rng.choice(["miter", "arc"]),
        "show_axis": rng.choice([True, False]),
        "position": _word(rng),
    }


def random_grid_params(rng: random.Random) -> dict:
    x_spacings = [rng.uniform(100.0, 9000.0) for _ in range(rng.randint(0, 4))]
    y_spacings = [rng.uniform(100.0, 9000.0) for _ in range(rng.randint(0, 4))]
    params = {
        "origin": [rng.uniform(-5000, 5000), rng.uniform(-5000, 5000)],
        "x_spacings": x_spacings,
        "y_spacings": y_spacings,
        "bubble_radius": rng.uniform(50.0, 600.0),
        "overhang": rng.uniform(0.0, 1500.0),
        "dim_offset": rng.uniform(10.0, 1500.0),
    }
    if rng.random() < 0.5:
        params["x_labels"] = [_word(rng, 3) for _ in range(len(x_spacings) + 1)]
    if rng.random() < 0.5:
        params["y_labels"] = [_word(rng, 3) for _ in range(len(y_spacings) + 1)]
    return params


def random_lightning_params(rng: random.Random) -> dict:
    count = rng.randint(1, 4)
    equal_heights = rng.random() < 0.7
    h = rng.uniform(1.0, 150.0)
    rods = []
    x = rng.uniform(-50.0, 50.0)
    for _ in range(count):
        rod_h = h if equal_heights else rng.uniform(1.0, 150.0)
        rods.append({"x": x, "h": rod_h})
        x += rng.uniform(0.5, 7.0) * rod_h
    min_h0 = min(0.92 * rod["h"] for rod in rods)
    return {
        "rods": rods,
        "hx": rng.uniform(0.0, 0.9) * min_h0,
        "scale": rng.uniform(1.0, 100.0),
        "position": _word(rng),
    }


def random_table_params(rng: random.Random) -> dict:
    units_by_dim = {"length": ["mm", "cm", "m"], "mass": ["kg", "t"],
                    "pressure": ["Pa", "kPa", "MPa"]}
    columns = []
    for _ in range(rng.randint(1, 4)):
        column = {"title": _word(rng), "width": rng.uniform(5.0, 50.0)}
        if rng.random() < 0.5:
            dim = rng.choice(list(units_by_dim))
            column["unit"] = rng.choice(units_by_dim[dim])
        columns.append(column)
    rows = []
    for _ in range(rng.randint(0, 5)):
        row = []
        for column in columns:
            roll = rng.random()
            if roll < 0.4:
                row.append(_word(rng))
            elif roll < 0.7 or "unit" not in column:
                row.append(rng.uniform(-1000.0, 1000.0))
            else:
                dim = {"mm": "length", "cm": "length", "m": "length",
                       "kg": "mass", "t": "mass",
                       "Pa": "pressure", "kPa": "pressure", "MPa": "pressure"}[column["unit"]]
                row.append({"value": rng.uniform(-1000.0, 1000.0),
                            "unit": rng.choice(units_by_dim[dim])})
        rows.append(row)
    params = {
        "origin": [rng.uniform(-5000, 5000), rng.uniform(-5000, 5000)],
        "columns": columns,
        "rows": rows,
        "row_height": rng.uniform(4.0, 12.0),
    }
    if rows and rng.random() < 0.4:
        params["filter"] = {"column": rng.randrange(len(columns)),
                            "op": rng.choice(["eq", "gt", "lt"]),
                            "value": rng.uniform(-1000.0, 1000.0)}
    return params


RANDOM_PARAMS = {
    "pipeline": random_pipeline_params,
    "grid": random_grid_params,
    "lightning": random_lightning_params,
    "table": random_table_params,
}


def random_free_element(d: Drawing, rng: random.Random,
                        coord_range: float = 20000.0) -> int:
    """Add one random small free element; most fit in a zone or two."""
    from modulecad import Circle, Line, LineStyle, Point, Polyline, Text

    x = rng.uniform(-coord_range, coord_range)
    y = rng.uniform(-coord_range, coord_range)
    size = rng.uniform(1.0, 200.0) if rng.random() < 0.9 else rng.uniform(200.0, 5000.0)
    roll = rng.random()
    if roll < 0.4:
        prim = Line(Point(x, y), Point(x + size * rng.uniform(0.1, 1.0),
                                       y + size * rng.uniform(-1.0, 1.0)))
    elif roll < 0.6:
        prim = Circle(Point(x, y), size / 2.0)
    elif roll < 0.8:
        verts = [Point(x, y)]
        for _ in range(rng.randint(1, 4)):
            verts.append(Point(verts[-1].x + rng.uniform(1.0, size),
                               verts[-1].y + rng.uniform(-size, size)))
        prim = Polyline(tuple(verts))
    else:
        prim = Text(Point(x, y), rng.uniform(2.0, 20.0), _word(rng))
    return d.add_element(prim, LineStyle())
