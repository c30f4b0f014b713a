"""Pure 2D geometry kernel: primitives, styles, transforms, bounding boxes,
polyline offsetting and snap-point extraction.

All coordinates are drawing units (mm). Every value here is immutable once
constructed and safe to share between threads. Invalid primitives are
rejected at construction, so downstream code never re-validates.

Tolerances: coordinate equality uses EQ_TOL (1e-9 mm), derived intersections
ISECT_TOL (1e-6 mm). These leave double-precision headroom for drawings up
to 1e6 mm across.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    InvalidGeometry,
    MiterLimitExceeded,
    NonPositiveDistance,
    NonUniformScaleOfRound,
    ZeroLengthSegment,
)

EQ_TOL = 1e-9
ISECT_TOL = 1e-6
TEXT_WIDTH_FACTOR = 0.6

# Turns at or beyond this magnitude make miter intersections blow up.
MITER_LIMIT = math.radians(150.0)
# Turns below this are treated as straight-through vertices.
COLLINEAR_TOL = 1e-6

TWO_PI = 2.0 * math.pi

LINETYPES = ("solid", "dash", "dash_dot")


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidGeometry(f"{name}: non-finite value {v!r}")


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        # canonicalize to float so persistence round-trips bit-exactly
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        _require_finite("point", self.x, self.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)


def distance(a: Point, b: Point) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def cross(a: Point, b: Point) -> float:
    return a.x * b.y - a.y * b.x


def dot(a: Point, b: Point) -> float:
    return a.x * b.x + a.y * b.y


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)


@dataclass(frozen=True, slots=True)
class Transform:
    """Scale about the origin, then rotate, then translate."""

    tx: float = 0.0
    ty: float = 0.0
    rotation: float = 0.0
    scale_x: float = 1.0
    scale_y: float = 1.0

    def __post_init__(self) -> None:
        for name in ("tx", "ty", "rotation", "scale_x", "scale_y"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite("transform", self.tx, self.ty, self.rotation,
                        self.scale_x, self.scale_y)
        if self.scale_x <= 0.0 or self.scale_y <= 0.0:
            raise InvalidGeometry(
                f"transform: scale must be > 0, got ({self.scale_x}, {self.scale_y})")

    @property
    def is_identity(self) -> bool:
        return (self.tx == 0.0 and self.ty == 0.0 and self.rotation == 0.0
                and self.scale_x == 1.0 and self.scale_y == 1.0)

    @property
    def is_uniform(self) -> bool:
        return self.scale_x == self.scale_y

    def apply_xy(self, x: float, y: float) -> tuple[float, float]:
        x *= self.scale_x
        y *= self.scale_y
        if self.rotation != 0.0:
            c = math.cos(self.rotation)
            s = math.sin(self.rotation)
            x, y = x * c - y * s, x * s + y * c
        return x + self.tx, y + self.ty

    def apply(self, p: Point) -> Point:
        return Point(*self.apply_xy(p.x, p.y))

    def then(self, u: "Transform") -> "Transform":
        """The single transform equivalent to applying self, then ``u``.

        Representable whenever ``u`` scales uniformly, or neither transform
        rotates; placements built from move/stretch always satisfy this.
        """
        if u.is_uniform:
            s = u.scale_x
            tx, ty = u.apply_xy(self.tx, self.ty)
            return Transform(tx, ty, self.rotation + u.rotation,
                             s * self.scale_x, s * self.scale_y)
        if self.rotation == 0.0 and u.rotation == 0.0:
            return Transform(u.tx + u.scale_x * self.tx,
                             u.ty + u.scale_y * self.ty,
                             0.0, u.scale_x * self.scale_x, u.scale_y * self.scale_y)
        raise InvalidGeometry(
            "transform composition with non-uniform scale after a rotation "
            "is not representable")


IDENTITY = Transform()


@dataclass(frozen=True, slots=True)
class LineStyle:
    linetype: str = "solid"
    color: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self) -> None:
        if self.linetype not in LINETYPES:
            raise InvalidGeometry(f"unknown linetype {self.linetype!r}")
        if len(self.color) != 3 or any(
                not isinstance(c, int) or c < 0 or c > 255 for c in self.color):
            raise InvalidGeometry(f"color must be an RGB triple 0-255, got {self.color!r}")
        object.__setattr__(self, "color", tuple(self.color))


@dataclass(frozen=True, slots=True)
class Line:
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if distance(self.a, self.b) <= EQ_TOL:
            raise ZeroLengthSegment(f"line endpoints coincide at ({self.a.x}, {self.a.y})")


@dataclass(frozen=True, slots=True)
class Polyline:
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 2:
            raise InvalidGeometry("polyline needs at least 2 vertices")
        for i in range(len(self.vertices) - 1):
            if distance(self.vertices[i], self.vertices[i + 1]) <= EQ_TOL:
                raise ZeroLengthSegment(f"zero-length polyline segment at index {i}")


@dataclass(frozen=True, slots=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", float(self.radius))
        _require_finite("circle", self.radius)
        if self.radius <= 0.0:
            raise InvalidGeometry(f"circle radius must be > 0, got {self.radius}")


@dataclass(frozen=True, slots=True)
class Arc:
    """Circular arc traced counterclockwise from start_angle to end_angle.

    If end_angle does not lie CCW of start_angle it is interpreted modulo
    2*pi; an arc whose normalized sweep is zero covers the full circle.
    """

    center: Point
    radius: float
    start_angle: float
    end_angle: float

    def __post_init__(self) -> None:
        for name in ("radius", "start_angle", "end_angle"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite("arc", self.radius, self.start_angle, self.end_angle)
        if self.radius <= 0.0:
            raise InvalidGeometry(f"arc radius must be > 0, got {self.radius}")

    def sweep(self) -> float:
        """Normalized CCW sweep, in (0, 2*pi]."""
        s = math.fmod(self.end_angle - self.start_angle, TWO_PI)
        if s <= 0.0:
            s += TWO_PI
        return s

    def point_at(self, angle: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(angle),
                     self.center.y + self.radius * math.sin(angle))


@dataclass(frozen=True, slots=True)
class Text:
    anchor: Point
    height: float
    content: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "height", float(self.height))
        _require_finite("text", self.height)
        if self.height <= 0.0:
            raise InvalidGeometry(f"text height must be > 0, got {self.height}")
        if not self.content:
            raise InvalidGeometry("text content must be nonempty")


Primitive = Union[Line, Polyline, Circle, Arc, Text]


@dataclass(frozen=True, slots=True)
class BBox:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self) -> None:
        for name in ("min_x", "min_y", "max_x", "max_y"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite("bbox", self.min_x, self.min_y, self.max_x, self.max_y)
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise InvalidGeometry("bbox min must not exceed max")

    def intersects(self, other: "BBox") -> bool:
        """Closed intersection: boundary touch counts."""
        return (self.min_x <= other.max_x and other.min_x <= self.max_x
                and self.min_y <= other.max_y and other.min_y <= self.max_y)

    def contains_point(self, x: float, y: float) -> bool:
        return self.min_x <= x <= self.max_x and self.min_y <= y <= self.max_y

    def union(self, other: "BBox") -> "BBox":
        return BBox(min(self.min_x, other.min_x), min(self.min_y, other.min_y),
                    max(self.max_x, other.max_x), max(self.max_y, other.max_y))

    def inflated(self, margin: float) -> "BBox":
        return BBox(self.min_x - margin, self.min_y - margin,
                    self.max_x + margin, self.max_y + margin)

    def translated(self, dx: float, dy: float) -> "BBox":
        return BBox(self.min_x + dx, self.min_y + dy, self.max_x + dx, self.max_y + dy)

    @property
    def width(self) -> float:
        return self.max_x - self.min_x

    @property
    def height(self) -> float:
        return self.max_y - self.min_y


# A viewport is just the screen rectangle in drawing coordinates.
Viewport = BBox


def bbox_of_points(points: Iterable[Point]) -> BBox:
    pts = list(points)
    if not pts:
        raise InvalidGeometry("cannot compute bbox of no points")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return BBox(min(xs), min(ys), max(xs), max(ys))


def text_extents(t: Text) -> tuple[float, float]:
    """Width/height of a text box; width = 0.6 * height * character count."""
    return (TEXT_WIDTH_FACTOR * t.height * len(t.content), t.height)


def bbox(p: Primitive) -> BBox:
    """Tight axis-aligned box containing every point of the primitive.

    Text uses the fixed-width extent heuristic anchored at its bottom-left;
    an arc's box covers only the traced portion, not the full circle.
    """
    if isinstance(p, Line):
        return bbox_of_points((p.a, p.b))
    if isinstance(p, Polyline):
        return bbox_of_points(p.vertices)
    if isinstance(p, Circle):
        return BBox(p.center.x - p.radius, p.center.y - p.radius,
                    p.center.x + p.radius, p.center.y + p.radius)
    if isinstance(p, Arc):
        pts = [p.point_at(p.start_angle), p.point_at(p.start_angle + p.sweep())]
        # Quadrant crossings inside the sweep extend the box to +-radius.
        k0 = math.ceil(p.start_angle / (math.pi / 2.0))
        k = k0
        while k * (math.pi / 2.0) <= p.start_angle + p.sweep():
            pts.append(p.point_at(k * (math.pi / 2.0)))
            k += 1
        return bbox_of_points(pts)
    if isinstance(p, Text):
        w, h = text_extents(p)
        return BBox(p.anchor.x, p.anchor.y, p.anchor.x + w, p.anchor.y + h)
    raise TypeError(f"not a primitive: {p!r}")


def apply_transform(p: Primitive, t: Transform) -> Primitive:
    """Map a primitive through a transform.

    Circles and arcs keep their shape class, so they reject non-uniform
    scaling instead of silently becoming ellipses.
    """
    if isinstance(p, Line):
        return Line(t.apply(p.a), t.apply(p.b))
    if isinstance(p, Polyline):
        return Polyline(tuple(t.apply(v) for v in p.vertices))
    if isinstance(p, Circle):
        if not t.is_uniform:
            raise NonUniformScaleOfRound(
                f"circle cannot take scale ({t.scale_x}, {t.scale_y})")
        return Circle(t.apply(p.center), p.radius * t.scale_x)
    if isinstance(p, Arc):
        if not t.is_uniform:
            raise NonUniformScaleOfRound(
                f"arc cannot take scale ({t.scale_x}, {t.scale_y})")
        return Arc(t.apply(p.center), p.radius * t.scale_x,
                   p.start_angle + t.rotation, p.end_angle + t.rotation)
    if isinstance(p, Text):
        return Text(t.apply(p.anchor), p.height * t.scale_y, p.content)
    raise TypeError(f"not a primitive: {p!r}")


def primitives_close(p: Primitive, q: Primitive, tol: float = EQ_TOL) -> bool:
    """True when p and q describe the same geometry within tol (mm)."""
    if type(p) is not type(q):
        return False
    if isinstance(p, Line):
        return distance(p.a, q.a) <= tol and distance(p.b, q.b) <= tol
    if isinstance(p, Polyline):
        return (len(p.vertices) == len(q.vertices)
                and all(distance(a, b) <= tol
                        for a, b in zip(p.vertices, q.vertices)))
    if isinstance(p, Circle):
        return distance(p.center, q.center) <= tol and abs(p.radius - q.radius) <= tol
    if isinstance(p, Arc):
        return (distance(p.center, q.center) <= tol
                and abs(p.radius - q.radius) <= tol
                and abs(p.start_angle - q.start_angle) <= tol
                and abs(p.end_angle - q.end_angle) <= tol)
    if isinstance(p, Text):
        return (distance(p.anchor, q.anchor) <= tol
                and abs(p.height - q.height) <= tol
                and p.content == q.content)
    return False


# --- polyline offsetting ------------------------------------------------------

def _directions(axis: Sequence[Point]) -> list[Point]:
    dirs = []
    for i in range(len(axis) - 1):
        seg = axis[i + 1] - axis[i]
        length = math.hypot(seg.x, seg.y)
        if length <= EQ_TOL:
            raise ZeroLengthSegment(f"zero-length axis segment at index {i}")
        dirs.append(Point(seg.x / length, seg.y / length))
    return dirs


def _turn_angle(d0: Point, d1: Point) -> float:
    return math.atan2(cross(d0, d1), dot(d0, d1))


def _normal(d: Point, side: str) -> Point:
    # "left" is the side reached by rotating the direction +90 degrees.
    if side == "left":
        return Point(-d.y, d.x)
    return Point(d.y, -d.x)


def _intersect_lines(p1: Point, d1: Point, p2: Point, d2: Point) -> Point:
    denom = cross(d1, d2)
    if denom == 0.0:
        raise InvalidGeometry("parallel offset lines do not intersect")
    t = cross(p2 - p1, d2) / denom
    return Point(p1.x + t * d1.x, p1.y + t * d1.y)


def offset_polyline(axis: Sequence[Point], dist: float, side: str,
                    join: str = "miter") -> list[Primitive]:
    """Offset an open polyline by a perpendicular distance to one side.

    Miter joining intersects adjacent offset lines and returns a single
    Polyline. Arc joining rounds the outside of each turn with an Arc
    centred on the axis vertex (inside corners still miter) and returns the
    resulting run of Line and Arc primitives in path order.

    Near-straight vertices (turn < COLLINEAR_TOL) are kept in the output at
    perpendicular distance, preserving axis-to-offset vertex correspondence.
    """
    if side not in ("left", "right"):
        raise InvalidGeometry(f"side must be 'left' or 'right', got {side!r}")
    if join not in ("miter", "arc"):
        raise InvalidGeometry(f"join must be 'miter' or 'arc', got {join!r}")
    if not math.isfinite(dist) or dist <= 0.0:
        raise NonPositiveDistance(f"offset distance must be > 0, got {dist}")
    axis = [p if isinstance(p, Point) else Point(*p) for p in axis]
    if len(axis) < 2:
        raise InvalidGeometry("axis needs at least 2 vertices")

    dirs = _directions(axis)
    turns = [_turn_angle(dirs[i], dirs[i + 1]) for i in range(len(dirs) - 1)]
    for i, turn in enumerate(turns):
        if abs(turn) >= MITER_LIMIT:
            raise MiterLimitExceeded(
                f"turn of {math.degrees(abs(turn)):.1f} deg at vertex {i + 1} "
                f"exceeds the 150 deg miter limit")

    normals = [_normal(d, side) for d in dirs]

    if join == "miter":
        verts: list[Point] = [axis[0] + normals[0].scaled(dist)]
        for i, turn in enumerate(turns):
            v = axis[i + 1]
            if abs(turn) < COLLINEAR_TOL:
                verts.append(v + normals[i].scaled(dist))
            else:
                verts.append(_intersect_lines(
                    axis[i] + normals[i].scaled(dist), dirs[i],
                    axis[i + 1] + normals[i + 1].scaled(dist), dirs[i + 1]))
        verts.append(axis[-1] + normals[-1].scaled(dist))
        return [Polyline(tuple(verts))]

    # Arc join: build per-segment endpoints, inserting arcs on outer turns.
    starts = [axis[i] + normals[i].scaled(dist) for i in range(len(dirs))]
    ends = [axis[i + 1] + normals[i].scaled(dist) for i in range(len(dirs))]
    arcs: dict[int, Arc] = {}
    for i, turn in enumerate(turns):
        v = axis[i + 1]
        if abs(turn) < COLLINEAR_TOL:
            p = v + normals[i].scaled(dist)
            ends[i] = p
            starts[i + 1] = p
            continue
        # The offset side is outside the turn when it bends away from it.
        outer = (turn < 0.0) if side == "left" else (turn > 0.0)
        if outer:
            n0, n1 = normals[i], normals[i + 1]
            a0 = math.atan2(n0.y, n0.x)
            a1 = math.atan2(n1.y, n1.x)
            if cross(n0, n1) > 0.0:
                arcs[i] = Arc(v, dist, a0, a1)
            else:
                arcs[i] = Arc(v, dist, a1, a0)
        else:
            p = _intersect_lines(axis[i] + normals[i].scaled(dist), dirs[i],
                                 axis[i + 1] + normals[i + 1].scaled(dist), dirs[i + 1])
            ends[i] = p
            starts[i + 1] = p

    result: list[Primitive] = []
    for i in range(len(dirs)):
        result.append(Line(starts[i], ends[i]))
        if i in arcs:
            result.append(arcs[i])
    return result


# --- snapping -------------------------------------------------------------------

SNAP_PRIORITY = {"endpoint": 0, "midpoint": 1, "center": 2}


@dataclass(frozen=True, slots=True)
class SnapCandidate:
    point: Point
    kind: str


@dataclass(frozen=True, slots=True)
class SnapHit:
    point: Point
    kind: str
    dist: float


def snap_candidates(p: Primitive) -> list[SnapCandidate]:
    """Characteristic points a cursor can lock onto."""
    if isinstance(p, Line):
        return [SnapCandidate(p.a, "endpoint"), SnapCandidate(p.b, "endpoint"),
                SnapCandidate(midpoint(p.a, p.b), "midpoint")]
    if isinstance(p, Polyline):
        out = [SnapCandidate(v, "endpoint") for v in p.vertices]
        out.extend(SnapCandidate(midpoint(a, b), "midpoint")
                   for a, b in zip(p.vertices, p.vertices[1:]))
        return out
    if isinstance(p, Circle):
        return [SnapCandidate(p.center, "center")]
    if isinstance(p, Arc):
        return [SnapCandidate(p.point_at(p.start_angle), "endpoint"),
                SnapCandidate(p.point_at(p.start_angle + p.sweep()), "endpoint"),
                SnapCandidate(p.center, "center")]
    if isinstance(p, Text):
        return [SnapCandidate(p.anchor, "endpoint")]
    raise TypeError(f"not a primitive: {p!r}")


def nearest_snap(query: Point, radius: float,
                 candidates: Iterable[SnapCandidate]) -> Optional[SnapHit]:
    """Closest candidate within radius.

    Equal distances resolve by kind priority (endpoint > midpoint > center),
    then by candidate order.
    """
    if radius <= 0.0:
        raise InvalidGeometry(f"snap radius must be > 0, got {radius}")
    best: Optional[SnapHit] = None
    best_key: tuple[float, int, int] | None = None
    for i, c in enumerate(candidates):
        d = distance(query, c.point)
        if d > radius:
            continue
        key = (d, SNAP_PRIORITY[c.kind], i)
        if best_key is None or key < best_key:
            best_key = key
            best = SnapHit(c.point, c.kind, d)
    return best
