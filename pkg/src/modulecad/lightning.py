"""Protection-zone geometry for single and paired lightning rods.

Standard single/double-rod protection-zone model, valid for rod heights up
to 150 m: a rod of height h protects a cone with apex height h0 = 0.92*h
and ground radius r0 = 1.5*h; two equal rods closer than 6*h share a joint
zone whose boundary dips to a saddle between them.

All heights and radii here are meters; scaling to drawing units happens in
the generator.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import HeightOutOfRange, RodsTooFar

MAX_ROD_HEIGHT = 150.0
MAX_SPACING_FACTOR = 6.0


class RodZone(NamedTuple):
    h0: float  # apex height of the protection cone, m
    r0: float  # protected radius at ground level, m


def _check_height(h: float) -> None:
    if not (0.0 < h <= MAX_ROD_HEIGHT):
        raise HeightOutOfRange(
            f"rod height must be in (0, {MAX_ROD_HEIGHT:g}] m, got {h!r}")


def single_rod_zone(h: float) -> RodZone:
    """Apex height and ground radius of one rod's protection zone."""
    _check_height(h)
    # h * 92 / 100 tracks the decimal value 0.92*h exactly for typical
    # heights where the literal 0.92 multiplication is off by one ulp.
    return RodZone(h0=h * 92.0 / 100.0, r0=1.5 * h)


def protected_radius(h: float, hx: float) -> float:
    """Protected radius at elevation hx; linear from r0 at ground to 0 at h0."""
    zone = single_rod_zone(h)
    if hx < 0.0 or hx >= zone.h0:
        raise HeightOutOfRange(
            f"protected elevation must be in [0, {zone.h0:g}) m, got {hx!r}")
    return zone.r0 * (1.0 - hx / zone.h0)


def double_rod_saddle(h: float, spacing: float) -> float:
    """Lowest height of the joint boundary between two equal rods.

    Equals the single-rod apex up to spacing h, then decreases linearly;
    rods farther than 6*h apart do not form a joint zone.
    """
    _check_height(h)
    if spacing <= 0.0:
        raise HeightOutOfRange(f"rod spacing must be > 0, got {spacing!r}")
    if spacing > MAX_SPACING_FACTOR * h:
        raise RodsTooFar(
            f"rods {spacing:g} m apart exceed the joint-zone limit {MAX_SPACING_FACTOR * h:g} m")
    h0 = h * 92.0 / 100.0
    if spacing <= h:
        return h0
    return h0 - (0.14 + 5e-4 * h) * (spacing - h)
