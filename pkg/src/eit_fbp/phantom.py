"""Circular subject geometry: perturbation disks, chords, axis rotation.

All lengths are millimetres, resistivities ohm-metres, angles degrees at the
API boundary.  Everything here is a pure function on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class PhantomError(ValueError):
    """Base class for phantom geometry violations."""


class NonPositiveDimension(PhantomError):
    """A radius, resistivity, depth or slice width is not usable."""

    def __init__(self, message: str, circle_index: int | None = None):
        super().__init__(message)
        self.circle_index = circle_index


class PerturbationOutsideSubject(PhantomError):
    """A perturbation circle is not fully contained in the subject disk."""

    def __init__(self, message: str, circle_index: int):
        super().__init__(message)
        self.circle_index = circle_index


class OverlappingPerturbations(PhantomError):
    """Two perturbation circles overlap; the forward model assumes disjoint disks."""

    def __init__(self, message: str, circle_indices: tuple[int, int]):
        super().__init__(message)
        self.circle_indices = circle_indices


class NonPositiveRadius(PhantomError):
    """Chord requested for a circle of non-positive radius."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    """A perturbation disk with its own resistivity."""

    center_x: float
    center_y: float
    radius: float
    resistivity: float


@dataclass(frozen=True)
class Phantom:
    """Circular subject disk with embedded, pairwise-disjoint perturbation disks.

    ``depth`` is the out-of-plane thickness of the subject; ``slice_width``
    is the width of the parallel strips the forward model cuts the disk into.
    Construction does not validate; call :func:`validate` before use.
    """

    subject_radius: float
    subject_resistivity: float
    depth: float
    slice_width: float
    perturbations: tuple[Circle, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "perturbations", tuple(self.perturbations))


def validate(phantom: Phantom) -> Phantom:
    """Check every phantom invariant, returning the phantom unchanged if valid.

    Raises NonPositiveDimension, PerturbationOutsideSubject or
    OverlappingPerturbations; the error names the offending circle index
    where one applies.
    """
    if phantom.subject_radius <= 0:
        raise NonPositiveDimension(f"subject_radius must be > 0, got {phantom.subject_radius}")
    if phantom.subject_resistivity <= 0:
        raise NonPositiveDimension(
            f"subject_resistivity must be > 0, got {phantom.subject_resistivity}"
        )
    if phantom.depth <= 0:
        raise NonPositiveDimension(f"depth must be > 0, got {phantom.depth}")
    if phantom.slice_width <= 0:
        raise NonPositiveDimension(f"slice_width must be > 0, got {phantom.slice_width}")
    if phantom.slice_width > phantom.subject_radius:
        raise NonPositiveDimension(
            f"slice_width {phantom.slice_width} exceeds subject_radius {phantom.subject_radius}"
        )

    for i, c in enumerate(phantom.perturbations):
        if c.radius <= 0:
            raise NonPositiveDimension(f"perturbation {i}: radius must be > 0, got {c.radius}", i)
        if c.resistivity <= 0:
            raise NonPositiveDimension(
                f"perturbation {i}: resistivity must be > 0, got {c.resistivity}", i
            )
        reach = math.hypot(c.center_x, c.center_y) + c.radius
        if reach > phantom.subject_radius:
            raise PerturbationOutsideSubject(
                f"perturbation {i} extends to {reach:g} mm, beyond the subject radius "
                f"{phantom.subject_radius:g} mm",
                i,
            )

    for i, a in enumerate(phantom.perturbations):
        for j in range(i + 1, len(phantom.perturbations)):
            b = phantom.perturbations[j]
            gap = math.hypot(a.center_x - b.center_x, a.center_y - b.center_y)
            if gap < a.radius + b.radius:
                raise OverlappingPerturbations(
                    f"perturbations {i} and {j} overlap: center distance {gap:g} mm "
                    f"< radius sum {a.radius + b.radius:g} mm",
                    (i, j),
                )
    return phantom


def rotate_center(p: Point, theta_deg: float) -> Point:
    """Coordinates of ``p`` after rotating the axes counterclockwise by ``theta_deg``."""
    th = math.radians(theta_deg)
    c, s = math.cos(th), math.sin(th)
    return Point(p.x * c + p.y * s, -p.x * s + p.y * c)


def chord_length(radius: float, offset: float) -> float:
    """Length of the chord cut from a circle by a line ``offset`` from its center.

    Lines beyond the circle give 0 rather than an error: strips routinely
    miss a perturbation entirely.
    """
    if radius <= 0:
        raise NonPositiveRadius(f"radius must be > 0, got {radius}")
    if abs(offset) >= radius:
        return 0.0
    return 2.0 * math.sqrt(radius * radius - offset * offset)


def circle_chord_at(circle: Circle, lateral_offset: float) -> float:
    """Chord of ``circle`` cut by the slicing line at signed lateral position."""
    return chord_length(circle.radius, lateral_offset - circle.center_x)


def strip_area(radius: float, lo: float, hi: float) -> float:
    """Area of a radius-``radius`` disk centered at 0 between the lines x=lo and x=hi.

    Closed form via the antiderivative of the chord function; the strip is
    clamped to the disk, so strips that miss it give 0.
    """
    if radius <= 0:
        raise NonPositiveRadius(f"radius must be > 0, got {radius}")
    if hi <= lo:
        return 0.0
    a = min(max(lo, -radius), radius)
    b = min(max(hi, -radius), radius)
    if b <= a:
        return 0.0
    return _chord_antiderivative(radius, b) - _chord_antiderivative(radius, a)


def _chord_antiderivative(radius: float, s: float) -> float:
    # d/ds [s*sqrt(r^2-s^2) + r^2*asin(s/r)] = 2*sqrt(r^2-s^2)
    return s * math.sqrt(max(radius * radius - s * s, 0.0)) + radius * radius * math.asin(
        min(max(s / radius, -1.0), 1.0)
    )
