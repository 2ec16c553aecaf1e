"""The three objective functions evaluated on a candidate assignment.

All three act on the capped per-target coverage counts ``psi_t`` and the
number of active sensors ``a``:

* coverage-max (ILP form): maximize ``sum(psi) - rho * a``
* vector-distance (IQP form): minimize ``sum((k - psi_t)^2) + rho * a``,
  the squared Euclidean distance from the ideal vector ``(k, ..., k)``
  plus the activation penalty
* balancing-index (INLP form): maximize
  ``(1 / (k * m^2)) * sum(psi)^3 / sum(psi^2) - rho * a``, whose first
  term equals the balancing index and is taken as 0 when nothing is
  covered

``rho`` is the per-sensor activation penalty; the default ``1 / (2n)``
keeps the total possible penalty under half a coverage unit, so sensor
minimization never trades away coverage under coverage-max.

Everything here is pure and stateless.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

# Objective values closer than this are treated as a tie by the solvers.
VALUE_TIE_TOL = 1e-12


class Sense(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class ObjectiveKind(enum.Enum):
    """Which of the three formulations to evaluate."""

    COVERAGE_MAX = "coverage-max"
    VECTOR_DISTANCE = "vector-distance"
    BALANCING_INDEX = "balancing-index"

    @property
    def code(self) -> int:
        """Small integer code used by the compiled kernels."""
        return _KIND_CODES[self]

    @property
    def sense(self) -> Sense:
        return Sense.MINIMIZE if self is ObjectiveKind.VECTOR_DISTANCE else Sense.MAXIMIZE


_KIND_CODES = {
    ObjectiveKind.COVERAGE_MAX: 0,
    ObjectiveKind.VECTOR_DISTANCE: 1,
    ObjectiveKind.BALANCING_INDEX: 2,
}


@dataclass(frozen=True)
class ObjectiveSpec:
    """Objective kind plus the coverage requirement ``k`` and penalty ``rho``."""

    kind: ObjectiveKind
    k: int
    rho: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"coverage requirement k must be >= 1, got {self.k}")
        if not (0.0 < self.rho <= 1.0):
            raise ValueError(f"penalty coefficient rho must be in (0, 1], got {self.rho}")

    @property
    def sense(self) -> Sense:
        return self.kind.sense


@dataclass(frozen=True)
class ObjectiveValue:
    value: float
    sense: Sense


def default_rho(n: int, q: int | None = None) -> float:
    """Default activation penalty 1/(2n): total penalty stays below 1/2.

    The bound depends only on the sensor count; ``q`` is accepted for
    callers that carry the pan count around but does not enter the formula.
    """
    if n < 1:
        raise ValueError(f"need at least one sensor for a penalty default, got n={n}")
    return 1.0 / (2.0 * n)


def value_from_sums(
    kind_code: int, k: int, m: int, rho: float, sum_psi: int, sum_psi_sq: int, active: int
) -> float:
    """Objective value from the capped-count sums.

    ``sum_psi`` and ``sum_psi_sq`` are exact integers, so the only rounding
    happens in the final float arithmetic; the solver kernels inline the
    same operation order, which keeps their values bit-identical to this.
    """
    if kind_code == 0:
        return float(sum_psi) - rho * active
    if kind_code == 1:
        dist = m * k * k - 2 * k * sum_psi + sum_psi_sq
        return float(dist) + rho * active
    if sum_psi == 0:
        term = 0.0
    else:
        s = float(sum_psi)
        term = (s * s * s) / float(sum_psi_sq)
        term = term / float(k * m * m)
    return term - rho * active


def evaluate(spec: ObjectiveSpec, coverage, active_count: int) -> ObjectiveValue:
    """Evaluate the objective on a coverage vector and active-sensor count."""
    if coverage.k != spec.k:
        raise ValueError(f"coverage was capped at k={coverage.k}, objective expects k={spec.k}")
    capped = coverage.capped
    sum_psi = int(capped.sum())
    sum_psi_sq = int((capped * capped).sum())
    value = value_from_sums(
        spec.kind.code, spec.k, len(capped), spec.rho, sum_psi, sum_psi_sq, int(active_count)
    )
    return ObjectiveValue(value=value, sense=spec.sense)


def is_better(spec: ObjectiveSpec, a: ObjectiveValue, b: ObjectiveValue) -> bool:
    """Whether ``a`` strictly improves on ``b``; ties within tolerance are not improvements."""
    if a.sense is not b.sense:
        raise ValueError(f"cannot compare values with senses {a.sense} and {b.sense}")
    if a.sense is not spec.sense:
        raise ValueError(f"values have sense {a.sense}, objective expects {spec.sense}")
    if spec.sense is Sense.MAXIMIZE:
        return a.value > b.value + VALUE_TIE_TOL
    return a.value < b.value - VALUE_TIE_TOL
