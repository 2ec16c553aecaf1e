"""Sector field-of-view geometry for pan-only directional sensors.

A camera sits at a point in the plane and can be oriented toward exactly
one of ``pan_count`` disjoint angular sectors ("pans"), each spanning
``aov`` radians and reaching ``sensing_range`` length units.  Pan ``j``
covers polar angles in the half-open interval ``[j*aov, (j+1)*aov)``,
measured counterclockwise from the positive x axis, so the pans tile the
full circle and a point is covered by at most one pan of a given camera.

All values are immutable after construction and every operation here is
a pure function, so they are safe to use concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Absolute slack on the range test so that targets sitting numerically on
# the boundary circle are classified the same way on every platform.
RANGE_TOL = 1e-9

# pan_count * aov must equal the full circle within this tolerance.
_TILE_TOL = 1e-9


@dataclass(frozen=True)
class CameraModel:
    """Homogeneous camera parameters shared by every sensor in a scenario.

    ``pan_count`` non-overlapping pans of width ``aov`` tile the circle;
    construction rejects parameters where they do not.
    """

    sensing_range: float
    aov: float
    pan_count: int

    def __post_init__(self) -> None:
        if not (self.sensing_range > 0 and math.isfinite(self.sensing_range)):
            raise ValueError(f"sensing_range must be positive, got {self.sensing_range}")
        if not (self.aov > 0 and math.isfinite(self.aov)):
            raise ValueError(f"aov must be positive, got {self.aov}")
        if self.pan_count < 1:
            raise ValueError(f"pan_count must be >= 1, got {self.pan_count}")
        if abs(self.pan_count * self.aov - TWO_PI) > _TILE_TOL:
            raise ValueError(
                f"pan_count * aov = {self.pan_count * self.aov!r} does not tile "
                f"the circle (2*pi) within {_TILE_TOL}"
            )

    @classmethod
    def with_pan_count(cls, pan_count: int, sensing_range: float) -> "CameraModel":
        """Camera with ``pan_count`` equal pans covering the full circle."""
        if pan_count < 1:
            raise ValueError(f"pan_count must be >= 1, got {pan_count}")
        return cls(sensing_range=sensing_range, aov=TWO_PI / pan_count, pan_count=pan_count)


@dataclass(frozen=True)
class CoverageMatrix:
    """Binary coverage tensor indexed (sensor, pan, target).

    ``bits[i, j, t] == 1`` iff sensor ``i`` oriented to pan ``j`` covers
    target ``t``.  For each (sensor, target) pair at most one pan is set,
    except a target coincident with the sensor position, which every pan
    covers.
    """

    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 3:
            raise ValueError(f"bits must be a (sensor, pan, target) tensor, got shape {bits.shape}")
        if bits.size and bits.max() > 1:
            raise ValueError("bits must be binary")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def sensor_count(self) -> int:
        return self.bits.shape[0]

    @property
    def pan_count(self) -> int:
        return self.bits.shape[1]

    @property
    def target_count(self) -> int:
        return self.bits.shape[2]

    def targets_of(self, sensor: int, pan: int) -> np.ndarray:
        """Indices of the targets covered by ``sensor`` oriented to ``pan``."""
        n, q = self.sensor_count, self.pan_count
        if not (0 <= sensor < n):
            raise IndexError(f"sensor index {sensor} out of range [0, {n})")
        if not (0 <= pan < q):
            raise IndexError(f"pan index {pan} out of range [0, {q})")
        return np.nonzero(self.bits[sensor, pan])[0]

    def pan_target_lists(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened per-(sensor, pan) target lists in CSR layout.

        Returns ``(ptr, targets)`` where the targets of sensor ``i`` at pan
        ``j`` are ``targets[ptr[i * pan_count + j] : ptr[i * pan_count + j + 1]]``.
        Used by the solver kernels.
        """
        flat = self.bits.reshape(self.sensor_count * self.pan_count, self.target_count)
        counts = flat.sum(axis=1, dtype=np.int64)
        ptr = np.zeros(len(counts) + 1, dtype=np.int64)
        np.cumsum(counts, out=ptr[1:])
        targets = np.nonzero(flat)[1].astype(np.int64)
        return ptr, targets


def pan_of(sensor_pos, camera: CameraModel, target_pos) -> int:
    """Index of the unique pan whose angular interval contains the target.

    The target must not coincide with the sensor position (the polar angle
    is undefined there); callers handle that case themselves.
    """
    dx = float(target_pos[0]) - float(sensor_pos[0])
    dy = float(target_pos[1]) - float(sensor_pos[1])
    if dx == 0.0 and dy == 0.0:
        raise ValueError("pan undefined for a target coincident with the sensor")
    angle = math.atan2(dy, dx)
    if angle < 0.0:
        angle += TWO_PI
    pan = int(angle // camera.aov)
    # Rounding of angle // aov can land on pan_count when angle is within
    # one ulp of the full circle; fold it back onto the last pan.
    if pan >= camera.pan_count:
        pan = camera.pan_count - 1
    return pan


def target_in_sector(sensor_pos, pan: int, camera: CameraModel, target_pos) -> bool:
    """Target-in-sector test: is the target inside this pan's sector?

    True iff the target lies within ``sensing_range`` of the sensor and
    its polar angle relative to the sensor falls in pan ``pan``'s interval.
    A target coincident with the sensor is covered in every pan.
    """
    if not (0 <= pan < camera.pan_count):
        raise IndexError(f"pan index {pan} out of range [0, {camera.pan_count})")
    dx = float(target_pos[0]) - float(sensor_pos[0])
    dy = float(target_pos[1]) - float(sensor_pos[1])
    reach = camera.sensing_range + RANGE_TOL
    if dx * dx + dy * dy > reach * reach:
        return False
    if dx == 0.0 and dy == 0.0:
        return True
    return pan_of(sensor_pos, camera, target_pos) == pan


def build_coverage_matrix(scenario) -> CoverageMatrix:
    """Coverage matrix of a scenario: one sector test per (sensor, pan, target).

    Vectorized over all pairs; agrees entrywise with ``target_in_sector``.
    """
    sensors = scenario.sensors
    targets = scenario.targets
    camera = scenario.camera
    n, m, q = len(sensors), len(targets), camera.pan_count

    bits = np.zeros((n, q, m), dtype=np.uint8)
    if n == 0 or m == 0:
        return CoverageMatrix(bits)

    dx = targets[:, 0][None, :] - sensors[:, 0][:, None]
    dy = targets[:, 1][None, :] - sensors[:, 1][:, None]
    reach = camera.sensing_range + RANGE_TOL
    in_range = dx * dx + dy * dy <= reach * reach
    coincident = (dx == 0.0) & (dy == 0.0)

    angle = np.arctan2(dy, dx)
    angle = np.where(angle < 0.0, angle + TWO_PI, angle)
    pan = np.minimum((angle // camera.aov).astype(np.int64), q - 1)

    si, ti = np.nonzero(in_range & ~coincident)
    bits[si, pan[si, ti], ti] = 1
    si, ti = np.nonzero(coincident)
    bits[si, :, ti] = 1
    return CoverageMatrix(bits)
