"""Scenario representation, seeded generation, and file serialization.

A scenario is an ordered list of sensor positions, an ordered list of
target positions, the shared camera model, and the rectangular grid the
points live on.  Families of nested scenarios are generated from a single
seed: the first ``n`` sensors and first ``m`` targets of a family's master
scenario form a valid scenario on their own, so growing a sweep keeps
every feature of the smaller deployment.

Generation draws positions i.i.d. uniform over the grid from NumPy's
``default_rng`` (PCG64), sensors before targets; the stream order is part
of the contract, so generation is single-threaded by construction.
Scenario files are line-oriented text with an explicit schema version
(see ``save_scenario``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import CameraModel

SCHEMA_VERSION = 1

_HEADER_KEYS = (
    "schema_version",
    "seed",
    "grid_width",
    "grid_height",
    "sensing_range",
    "aov_radians",
    "pan_count",
)


class ScenarioFormatError(ValueError):
    """Raised when a scenario file cannot be parsed."""


class ScenarioValidationError(ValueError):
    """Raised when scenario contents violate an invariant."""


def _as_points(points) -> np.ndarray:
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ScenarioValidationError(f"expected an (N, 2) point array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ScenarioValidationError("point coordinates must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Scenario:
    """Immutable deployment: sensor points, target points, camera, grid.

    ``seed`` records the generator seed the scenario came from (0 when
    constructed by hand); it rides along so files round-trip exactly.
    """

    sensors: np.ndarray
    targets: np.ndarray
    camera: CameraModel
    grid_size: tuple[float, float]
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "sensors", _as_points(self.sensors))
        object.__setattr__(self, "targets", _as_points(self.targets))
        w, h = self.grid_size
        if not (w > 0 and h > 0):
            raise ScenarioValidationError(f"grid dimensions must be positive, got {self.grid_size}")
        object.__setattr__(self, "grid_size", (float(w), float(h)))
        for name, pts in (("sensor", self.sensors), ("target", self.targets)):
            if pts.size and (pts.min() < 0 or pts[:, 0].max() > w or pts[:, 1].max() > h):
                raise ScenarioValidationError(f"{name} positions must lie within [0, {w}] x [0, {h}]")

    @property
    def sensor_count(self) -> int:
        return len(self.sensors)

    @property
    def target_count(self) -> int:
        return len(self.targets)

    def require_nonempty(self) -> None:
        """Solve operations need at least one sensor and one target."""
        if self.sensor_count == 0 or self.target_count == 0:
            raise ScenarioValidationError(
                f"solving needs nonempty sensors and targets, got {self.sensor_count} sensors "
                f"and {self.target_count} targets"
            )


@dataclass(frozen=True)
class ScenarioFamily:
    """A master scenario whose prefixes are themselves valid scenarios."""

    master: Scenario
    seed: int

    def prefix(self, n: int, m: int) -> Scenario:
        """Scenario made of the first ``n`` sensors and first ``m`` targets."""
        if not (0 <= n <= self.master.sensor_count):
            raise ValueError(f"sensor prefix {n} exceeds master size {self.master.sensor_count}")
        if not (0 <= m <= self.master.target_count):
            raise ValueError(f"target prefix {m} exceeds master size {self.master.target_count}")
        return Scenario(
            sensors=self.master.sensors[:n],
            targets=self.master.targets[:m],
            camera=self.master.camera,
            grid_size=self.master.grid_size,
            seed=self.seed,
        )


def generate(
    seed: int,
    n_max: int,
    m_max: int,
    camera: CameraModel,
    grid: tuple[float, float],
) -> ScenarioFamily:
    """Generate a scenario family with uniform random placement.

    Identical arguments give bit-identical output.  Sensors are drawn
    before targets, so sensor prefixes do not depend on ``m_max``.
    """
    if n_max < 0 or m_max < 0:
        raise ValueError(f"population sizes must be >= 0, got n_max={n_max}, m_max={m_max}")
    w, h = float(grid[0]), float(grid[1])
    if not (w > 0 and h > 0):
        raise ValueError(f"grid dimensions must be positive, got {grid}")
    rng = np.random.default_rng(seed)
    sensors = rng.uniform(low=(0.0, 0.0), high=(w, h), size=(n_max, 2))
    targets = rng.uniform(low=(0.0, 0.0), high=(w, h), size=(m_max, 2))
    master = Scenario(sensors=sensors, targets=targets, camera=camera, grid_size=(w, h), seed=seed)
    return ScenarioFamily(master=master, seed=seed)


def _fmt(x: float) -> str:
    # 17 significant digits round-trips every double exactly.
    return format(float(x), ".17g")


def save_scenario(scenario: Scenario, path) -> None:
    """Write a scenario file: header key/value lines, then points in order."""
    camera = scenario.camera
    w, h = scenario.grid_size
    lines = [
        f"schema_version {SCHEMA_VERSION}",
        f"seed {scenario.seed}",
        f"grid_width {_fmt(w)}",
        f"grid_height {_fmt(h)}",
        f"sensing_range {_fmt(camera.sensing_range)}",
        f"aov_radians {_fmt(camera.aov)}",
        f"pan_count {camera.pan_count}",
    ]
    lines += [f"sensor {_fmt(x)} {_fmt(y)}" for x, y in scenario.sensors]
    lines += [f"target {_fmt(x)} {_fmt(y)}" for x, y in scenario.targets]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_scenario(path) -> Scenario:
    """Parse a scenario file, rejecting unknown keys and out-of-order sections."""
    header: dict[str, str] = {}
    sensors: list[tuple[float, float]] = []
    targets: list[tuple[float, float]] = []

    def fail(lineno: int, message: str):
        raise ScenarioFormatError(f"{path}:{lineno}: {message}")

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split()
            key, values = fields[0], fields[1:]
            if key in ("sensor", "target"):
                if len(values) != 2:
                    fail(lineno, f"{key} line needs exactly two coordinates, got {len(values)}")
                try:
                    point = (float(values[0]), float(values[1]))
                except ValueError:
                    fail(lineno, f"malformed coordinate in {key} line: {line!r}")
                if key == "sensor":
                    if targets:
                        fail(lineno, "sensor line after target lines; sensors must come first")
                    sensors.append(point)
                else:
                    targets.append(point)
            elif key in _HEADER_KEYS:
                if sensors or targets:
                    fail(lineno, f"header field {key!r} after point lines")
                if key in header:
                    fail(lineno, f"duplicate header field {key!r}")
                if len(values) != 1:
                    fail(lineno, f"header field {key!r} needs exactly one value")
                header[key] = values[0]
            else:
                fail(lineno, f"unknown key {key!r}")

    missing = [k for k in _HEADER_KEYS if k not in header]
    if missing:
        raise ScenarioFormatError(f"{path}: missing header fields: {', '.join(missing)}")
    try:
        version = int(header["schema_version"])
        seed = int(header["seed"])
        grid = (float(header["grid_width"]), float(header["grid_height"]))
        camera = CameraModel(
            sensing_range=float(header["sensing_range"]),
            aov=float(header["aov_radians"]),
            pan_count=int(header["pan_count"]),
        )
    except ValueError as exc:
        raise ScenarioFormatError(f"{path}: bad header value: {exc}") from exc
    if version != SCHEMA_VERSION:
        raise ScenarioFormatError(
            f"{path}: unsupported schema_version {version}, expected {SCHEMA_VERSION}"
        )
    return Scenario(sensors=sensors, targets=targets, camera=camera, grid_size=grid, seed=seed)
