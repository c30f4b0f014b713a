"""The visible drawing atom: a styled primitive with an id and a layer."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidGeometry
from .geometry import BBox, LineStyle, Primitive, bbox


@dataclass(frozen=True, slots=True)
class Element:
    id: int
    layer: int
    style: LineStyle
    primitive: Primitive
    bbox: BBox = field(init=False)

    def __post_init__(self) -> None:
        if self.id < 1:
            raise InvalidGeometry(f"element id must be >= 1, got {self.id}")
        object.__setattr__(self, "bbox", bbox(self.primitive))
