"""Parallel-resistance forward model.

The subject is cut into parallel strips of width ``slice_width`` along the
rotated x-axis.  Each strip's conductance is the parallel sum of its material
segments: every material contributes (strip area of that material) * sigma / d.
Material areas use exact circular-strip integrals, so the total conductance
summed over a projection is the same at every angle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .phantom import Phantom, strip_area


class Quantity(enum.Enum):
    CONDUCTANCE = "conductance"
    AVG_CONDUCTIVITY = "avg_conductivity"


class IndexOutOfRange(IndexError):
    """Slice index outside [0, slice_count)."""


class InvalidAngleStep(ValueError):
    """Angle step must be positive and divide 180 evenly."""


@dataclass(frozen=True)
class Projection:
    """Per-slice values at one rotation angle."""

    values: np.ndarray
    angle_deg: float
    quantity: Quantity

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class Sinogram:
    """Slice-major (n_slices x n_angles) array of projection values."""

    data: np.ndarray
    angles_deg: tuple[float, ...]
    quantity: Quantity
    slice_width: float
    subject_radius: float

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        d.flags.writeable = False
        object.__setattr__(self, "data", d)
        object.__setattr__(self, "angles_deg", tuple(float(a) for a in self.angles_deg))

    @property
    def n_slices(self) -> int:
        return self.data.shape[0]

    @property
    def n_angles(self) -> int:
        return self.data.shape[1]

    def column(self, index: int) -> Projection:
        return Projection(self.data[:, index], self.angles_deg[index], self.quantity)


def slice_count(subject_radius: float, slice_width: float) -> int:
    """Number of strips covering [-R, R]: floor(2R / w)."""
    # tiny epsilon so an exactly-dividing width is not truncated by fp noise
    return int(math.floor(2.0 * subject_radius / slice_width + 1e-9))


def slice_bounds(
    subject_radius: float, slice_width: float, slice_index: int
) -> tuple[float, float]:
    """Lateral interval [lower, upper) of one strip; the last strip absorbs any remainder."""
    n = slice_count(subject_radius, slice_width)
    if not 0 <= slice_index < n:
        raise IndexOutOfRange(f"slice index {slice_index} outside [0, {n})")
    lower = -subject_radius + slice_index * slice_width
    if slice_index == n - 1:
        return lower, subject_radius
    return lower, lower + slice_width


def slice_conductance(phantom: Phantom, theta_deg: float, slice_index: int) -> float:
    """Conductance of one strip at one rotation angle.

    Perturbation centers are rotated into the slicing frame; the background
    area is the subject strip minus the perturbation strips (floored at 0).
    """
    lo, hi = slice_bounds(phantom.subject_radius, phantom.slice_width, slice_index)
    th = math.radians(theta_deg)
    cos_t, sin_t = math.cos(th), math.sin(th)

    background = strip_area(phantom.subject_radius, lo, hi)
    total = 0.0
    for c in phantom.perturbations:
        x_rot = c.center_x * cos_t + c.center_y * sin_t
        area = strip_area(c.radius, lo - x_rot, hi - x_rot)
        background -= area
        total += area / c.resistivity
    total += max(background, 0.0) / phantom.subject_resistivity
    return total / phantom.depth


def slice_avg_conductivity(phantom: Phantom, theta_deg: float, slice_index: int) -> float:
    """Area-weighted mean conductivity of one strip; 0 for an empty strip."""
    lo, hi = slice_bounds(phantom.subject_radius, phantom.slice_width, slice_index)
    subject = strip_area(phantom.subject_radius, lo, hi)
    if subject == 0.0:
        return 0.0
    return slice_conductance(phantom, theta_deg, slice_index) * phantom.depth / subject


def project(phantom: Phantom, theta_deg: float, quantity: Quantity) -> Projection:
    """All slice values for one rotation angle."""
    n = slice_count(phantom.subject_radius, phantom.slice_width)
    if quantity is Quantity.CONDUCTANCE:
        values = [slice_conductance(phantom, theta_deg, j) for j in range(n)]
    else:
        values = [slice_avg_conductivity(phantom, theta_deg, j) for j in range(n)]
    return Projection(np.array(values), theta_deg, quantity)


def sweep_angles(angle_step: float) -> tuple[float, ...]:
    """Half-open sweep 0, step, ..., 180 - step; the step must divide 180."""
    if angle_step <= 0:
        raise InvalidAngleStep(f"angle step must be > 0, got {angle_step}")
    n = round(180.0 / angle_step)
    if n < 1 or abs(n * angle_step - 180.0) > 1e-9:
        raise InvalidAngleStep(f"angle step {angle_step} does not divide 180 evenly")
    return tuple(i * angle_step for i in range(n))


def compute_sinogram(phantom: Phantom, angle_step: float, quantity: Quantity) -> Sinogram:
    """Projections at every sweep angle, assembled slice-major."""
    angles = sweep_angles(angle_step)
    columns = [project(phantom, theta, quantity).values for theta in angles]
    return Sinogram(
        data=np.column_stack(columns),
        angles_deg=angles,
        quantity=quantity,
        slice_width=phantom.slice_width,
        subject_radius=phantom.subject_radius,
    )
