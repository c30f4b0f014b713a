"""Parametric drawing modules: typed parameter records co-stored with the
2D geometry deterministically generated from them."""

from .bom import SpecItem, axes_positions, check_duplicate_positions, \
    collect_spec, spec_items
from .drawing import (Drawing, Layer, Module, Viewport, ZoneEntry,
                      build_zone_map, drawing_to_json, load_drawing,
                      save_drawing, zone_span)
from .element import Element
from .errors import *  # noqa: F401,F403 -- small closed error vocabulary
from .generators import (gen_grid, gen_lightning, gen_pipeline, gen_table,
                         generate)
from .geometry import (Arc, BBox, Circle, Line, LineStyle, Point, Polyline,
                       Primitive, Text, Transform, apply_transform, bbox,
                       nearest_snap, offset_polyline, snap_candidates)
from .lightning import double_rod_saddle, protected_radius, single_rod_zone
from .params import KINDS, ParamSchema, schema, validate_params
from .protolib import (Library, Prototype, instantiate, load_library,
                       preview, save_prototype)
from .svg import RenderOptions, export_svg
from .units import UNIT_TABLE, convert_unit, format_number

__version__ = "0.1.0"
