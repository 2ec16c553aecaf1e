"""Assignments, coverage accounting, and the fairness/balancing indices.

The fairness index is Jain's index over the capped coverage counts:
``FI = (sum psi)^2 / (m * sum psi^2)``, 1.0 when every target is covered
equally.  The balancing index scales it by achieved-over-attainable
coverage: ``BI = FI * sum(psi) / (k * m)``, so it rewards both evenness
and total coverage.  Both are defined as 0 on an all-zero coverage
vector, which ranks covering nothing below covering anything.

All functions are pure; inputs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import CoverageMatrix
from .objectives import ObjectiveSpec, evaluate

# Per-sensor choice meaning "not activated"; pan indices are >= 0.
OFF = -1


@dataclass(frozen=True)
class Assignment:
    """Per-sensor orientation choice: ``OFF`` or a pan index.

    One value per sensor, so a sensor can never hold two pans at once.
    """

    pans: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.pans, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError(f"assignment must be one choice per sensor, got shape {arr.shape}")
        if arr.size and arr.min() < OFF:
            raise ValueError("pan choices must be OFF (-1) or a pan index >= 0")
        arr.setflags(write=False)
        object.__setattr__(self, "pans", arr)

    def __len__(self) -> int:
        return len(self.pans)

    @classmethod
    def all_off(cls, n: int) -> "Assignment":
        return cls(np.full(n, OFF, dtype=np.int64))

    @property
    def active_count(self) -> int:
        return int((self.pans != OFF).sum())

    def active_pairs(self) -> list[tuple[int, int]]:
        """(sensor, pan) pairs of the activated sensors, in sensor order."""
        return [(int(i), int(p)) for i, p in enumerate(self.pans) if p != OFF]

    def validate_for(self, matrix: CoverageMatrix) -> None:
        if len(self) != matrix.sensor_count:
            raise ValueError(
                f"assignment length {len(self)} does not match sensor count {matrix.sensor_count}"
            )
        if len(self) and self.pans.max() >= matrix.pan_count:
            raise ValueError(f"pan index {self.pans.max()} out of range [0, {matrix.pan_count})")


@dataclass(frozen=True)
class CoverageVector:
    """Raw per-target coverage counts plus their k-capped counterpart."""

    raw: np.ndarray
    k: int
    capped: np.ndarray = None  # derived in __post_init__

    def __post_init__(self) -> None:
        raw = np.ascontiguousarray(self.raw, dtype=np.int64)
        if raw.ndim != 1:
            raise ValueError(f"coverage counts must be one per target, got shape {raw.shape}")
        if raw.size and raw.min() < 0:
            raise ValueError("coverage counts must be nonnegative")
        if self.k < 1:
            raise ValueError(f"coverage requirement k must be >= 1, got {self.k}")
        capped = np.minimum(raw, self.k)
        raw.setflags(write=False)
        capped.setflags(write=False)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "capped", capped)

    @property
    def target_count(self) -> int:
        return len(self.raw)


@dataclass(frozen=True)
class SolutionReport:
    """Everything worth reporting about one solved assignment.

    ``histogram[c]`` counts targets covered exactly ``c`` times for
    ``c < k``; the last bucket counts targets covered at least ``k``
    times.  Raw (uncapped) counts feed the histogram.
    """

    coverage: CoverageVector
    active_sensor_count: int
    fairness_index: float
    balancing_index: float
    objective_value: float
    histogram: np.ndarray

    def to_record(self) -> dict:
        """Flat key/value view consumed by the sweep harness and the CLI."""
        record = {
            "targets": self.coverage.target_count,
            "k": self.coverage.k,
            "fairness_index": self.fairness_index,
            "balancing_index": self.balancing_index,
            "total_coverage": int(self.coverage.capped.sum()),
            "active_sensors": self.active_sensor_count,
            "objective_value": self.objective_value,
        }
        for level, count in enumerate(self.histogram[:-1]):
            record[f"covered_exactly_{level}"] = int(count)
        record[f"covered_atleast_{self.coverage.k}"] = int(self.histogram[-1])
        return record


def coverage_of(matrix: CoverageMatrix, assignment: Assignment, k: int) -> CoverageVector:
    """Per-target counts of active (sensor, pan) pairs covering each target."""
    assignment.validate_for(matrix)
    if k < 1:
        raise ValueError(f"coverage requirement k must be >= 1, got {k}")
    raw = np.zeros(matrix.target_count, dtype=np.int64)
    for sensor, pan in assignment.active_pairs():
        raw += matrix.bits[sensor, pan]
    return CoverageVector(raw=raw, k=k)


def coverage_histogram(coverage: CoverageVector) -> np.ndarray:
    """Counts of targets covered exactly 0..k-1 times, then at least k times."""
    k = coverage.k
    hist = np.bincount(np.minimum(coverage.raw, k), minlength=k + 1)
    return hist


def fairness_index(coverage: CoverageVector) -> float:
    """Jain's fairness index over the capped counts; 0 when nothing is covered."""
    if coverage.target_count == 0:
        raise ValueError("fairness index is undefined for an empty target set")
    psi = coverage.capped
    total = int(psi.sum())
    if total == 0:
        return 0.0
    return float(total) * float(total) / (coverage.target_count * float((psi * psi).sum()))


def balancing_index(coverage: CoverageVector) -> float:
    """Fairness index times achieved-over-attainable total coverage."""
    fi = fairness_index(coverage)
    total = int(coverage.capped.sum())
    return fi * float(total) / (coverage.k * coverage.target_count)


def build_report(
    matrix: CoverageMatrix, assignment: Assignment, spec: ObjectiveSpec
) -> SolutionReport:
    """Assemble the full report for an assignment under one objective."""
    coverage = coverage_of(matrix, assignment, spec.k)
    active = assignment.active_count
    objective = evaluate(spec, coverage, active)
    return SolutionReport(
        coverage=coverage,
        active_sensor_count=active,
        fairness_index=fairness_index(coverage),
        balancing_index=balancing_index(coverage),
        objective_value=objective.value,
        histogram=coverage_histogram(coverage),
    )
