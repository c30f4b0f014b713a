from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from modulecad import (Arc, BBox, Circle, Drawing, Line, LineStyle, Point,
                       RenderOptions, Text, export_svg)

import fixtures

GOLDEN_DIR = Path(__file__).parent / "goldens"
SVG_NS = "{http://www.w3.org/2000/svg}"
SHAPE_TAGS = {f"{SVG_NS}polyline", f"{SVG_NS}circle", f"{SVG_NS}path",
              f"{SVG_NS}text"}


def shape_nodes(svg: str) -> list[ET.Element]:
    root = ET.fromstring(svg)
    return [node for node in root.iter() if node.tag in SHAPE_TAGS]


def test_empty_drawing_renders_valid_svg():
    svg = export_svg(Drawing())
    root = ET.fromstring(svg)
    assert root.tag == f"{SVG_NS}svg"
    assert shape_nodes(svg) == []
    assert root.get("viewBox") == "0.0 -100.0 100.0 100.0"


def test_line_becomes_polyline_node_with_flip():
    d = Drawing()
    d.add_element(Line(Point(0, 0), Point(10, 5)))
    svg = export_svg(d)
    (node,) = shape_nodes(svg)
    assert node.tag == f"{SVG_NS}polyline"
    assert node.get("points") == "0.0,0.0 10.0,5.0"
    root = ET.fromstring(svg)
    group = root.find(f"{SVG_NS}g")
    assert group is not None and group.get("transform") == "scale(1 -1)"
    # flipped space: drawing y [0,5]+margin maps to viewBox y [-15, ...]
    assert root.get("viewBox", "").split()[1] == "-15.0"


def test_viewport_culling_applies():
    d = Drawing()
    d.add_element(Line(Point(0, 0), Point(10, 0)))
    svg = export_svg(d, RenderOptions(viewport=BBox(100, 100, 200, 200)))
    assert shape_nodes(svg) == []
    svg = export_svg(d, RenderOptions(viewport=BBox(-1, -1, 11, 1)))
    assert len(shape_nodes(svg)) == 1


def test_shape_node_count_matches_visible_elements():
    d = fixtures.grid_3x2_drawing()
    viewport = BBox(-3000, -3000, 15000, 6000)
    svg = export_svg(d, RenderOptions(viewport=viewport))
    assert len(shape_nodes(svg)) == len(d.visible_elements(viewport))


def test_dash_patterns_and_colors():
    d = Drawing()
    d.add_element(Line(Point(0, 0), Point(10, 0)), LineStyle("dash", (255, 0, 0)))
    d.add_element(Line(Point(0, 5), Point(10, 5)), LineStyle("dash_dot", (0, 0, 255)))
    d.add_element(Line(Point(0, 9), Point(10, 9)), LineStyle("solid", (1, 2, 3)))
    nodes = shape_nodes(export_svg(d))
    assert nodes[0].get("stroke-dasharray") == "8 4"
    assert nodes[0].get("stroke") == "#FF0000"
    assert nodes[1].get("stroke-dasharray") == "12 3 2 3"
    assert nodes[1].get("stroke") == "#0000FF"
    assert nodes[2].get("stroke-dasharray") is None
    assert nodes[2].get("stroke") == "#010203"


def test_text_node_attributes():
    d = Drawing()
    d.add_element(Text(Point(3, 4), 5, "Hi & <bye>"))
    svg = export_svg(d)
    (node,) = shape_nodes(svg)
    assert node.tag == f"{SVG_NS}text"
    assert node.get("font-size") == "5.0"
    assert node.get("x") == "3.0" and node.get("y") == "-4.0"
    assert node.get("transform") == "scale(1 -1)"
    assert node.text == "Hi & <bye>"


def test_circle_and_arc_nodes():
    d = Drawing()
    d.add_element(Circle(Point(1, 2), 3))
    d.add_element(Arc(Point(0, 0), 2, 0, math.pi / 2))
    nodes = shape_nodes(export_svg(d))
    assert nodes[0].tag == f"{SVG_NS}circle"
    assert (nodes[0].get("cx"), nodes[0].get("cy"), nodes[0].get("r")) == \
        ("1.0", "2.0", "3.0")
    assert nodes[1].tag == f"{SVG_NS}path"
    path = nodes[1].get("d", "")
    assert path.startswith("M 2.0 0.0 A 2.0 2.0 0 0 1")


def test_arc_beyond_half_turn_sets_large_flag():
    d = Drawing()
    d.add_element(Arc(Point(0, 0), 2, 0, 3 * math.pi / 2))
    (node,) = shape_nodes(export_svg(d))
    assert " A 2.0 2.0 0 1 1 " in node.get("d", "")


def test_unicode_text_survives_export():
    d = Drawing()
    d.add_element(Text(Point(0, 0), 5, "Ось А—Б ⌀100"))
    svg = export_svg(d)
    (node,) = shape_nodes(svg)
    assert node.text == "Ось А—Б ⌀100"


def test_element_order_is_ascending_id():
    d = Drawing()
    first = d.add_element(Line(Point(0, 0), Point(1, 0)))
    second = d.add_element(Circle(Point(0, 0), 1))
    nodes = shape_nodes(export_svg(d))
    assert nodes[0].tag.endswith("polyline") and nodes[1].tag.endswith("circle")
    assert first < second


def test_background_rect():
    d = Drawing()
    svg = export_svg(d, RenderOptions(background=(250, 250, 250)))
    root = ET.fromstring(svg)
    rect = root.find(f"{SVG_NS}rect")
    assert rect is not None and rect.get("fill") == "#FAFAFA"


def test_export_is_deterministic():
    d = fixtures.lightning_two_rod_drawing()
    assert export_svg(d) == export_svg(d)


@pytest.mark.parametrize("name", fixtures.GOLDEN_NAMES)
def test_golden_files_byte_identical(name):
    build = fixtures.GOLDEN_BUILDERS[name]
    produced = export_svg(build())
    golden = (GOLDEN_DIR / f"{name}.svg").read_text(encoding="utf-8")
    assert produced == golden
    ET.fromstring(produced)  # well-formed XML
