"""Centralized greedy k-coverage with linear or quadratic benefit.

Each iteration scans every (inactive sensor, pan) pair, scores it with
the benefit function, and activates the pair of maximum incentive; the
loop stops when the maximum incentive is zero, which covers both "every
target is k-covered" and "no remaining pair helps".  Ties break to the
lowest sensor index, then the lowest pan index, so runs are repeatable.

The benefit of a pair sums one increment per covered target that is
still under its requirement: a flat 1 in linear mode, and the squared
deficit drop ``(k - c)^2 - (k - c - 1)^2 = 2 * (k - c) - 1`` in quadratic
mode, which steers sensors toward the least-covered targets.  For a
3-coverage run the quadratic increments are 5, 3, 1 at current counts
0, 1, 2.

The per-iteration scan is the hot loop: it runs through a compiled
kernel when numba is enabled and through a NumPy matrix product
otherwise (see ``balkcov._accel``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _accel
from ._accel import njit
from .geometry import CoverageMatrix
from .metrics import OFF, Assignment, SolutionReport, build_report, coverage_of
from .objectives import ObjectiveKind, ObjectiveSpec, default_rho


class BenefitMode(enum.Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class GreedyStep:
    """One activation: the chosen pair, its incentive, and coverage after it."""

    sensor: int
    pan: int
    incentive: int
    counts: np.ndarray
    histogram: np.ndarray


def benefit(phi, counts, k: int, mode: BenefitMode) -> int:
    """Incentive of activating a pair covering targets ``phi`` at the given counts.

    Targets already covered ``k`` or more times contribute nothing.
    """
    phi = np.asarray(phi, dtype=np.int64)
    if phi.size == 0:
        return 0
    counts = np.asarray(counts, dtype=np.int64)
    c = counts[phi]
    under = c < k
    if mode is BenefitMode.LINEAR:
        return int(under.sum())
    return int((2 * (k - c[under]) - 1).sum())


@njit(cache=True)
def _scan_kernel(ptr, tgt, counts, k, quadratic, sensor_active, n, q):
    # Best (sensor, pan) by incentive; strict improvement keeps the first
    # maximum in (sensor, pan) order, which is the tie-break contract.
    best_i = -1
    best_j = -1
    best_inc = 0
    for i in range(n):
        if sensor_active[i]:
            continue
        for j in range(q):
            p = i * q + j
            inc = 0
            for idx in range(ptr[p], ptr[p + 1]):
                c = counts[tgt[idx]]
                if c < k:
                    if quadratic:
                        inc += 2 * (k - c) - 1
                    else:
                        inc += 1
            if inc > best_inc:
                best_inc = inc
                best_i = i
                best_j = j
    return best_i, best_j, best_inc


def _scan_numpy(bits2d, counts, k, quadratic, sensor_active, n, q):
    # Same scan as _scan_kernel, expressed as one matrix product: per-target
    # weights times the coverage rows give every pair's incentive at once.
    if quadratic:
        weights = np.where(counts < k, 2 * (k - counts) - 1, 0)
    else:
        weights = np.where(counts < k, 1, 0)
    incentives = (bits2d @ weights).reshape(n, q)
    incentives[sensor_active] = -1
    flat = int(np.argmax(incentives))
    best = int(incentives.ravel()[flat])
    if best <= 0:
        return -1, -1, 0
    return flat // q, flat % q, best


def greedy_steps(matrix: CoverageMatrix, k: int, mode: BenefitMode) -> Iterator[GreedyStep]:
    """Yield one record per greedy activation, in order.

    Coverage counts are maintained incrementally and asserted against a
    full recount after every step (active under pytest / non-optimized
    runs), so the trace doubles as its own oracle.
    """
    n, q, m = matrix.sensor_count, matrix.pan_count, matrix.target_count
    if n == 0 or m == 0:
        raise ValueError("greedy solve needs at least one sensor and one target")
    if k < 1:
        raise ValueError(f"coverage requirement k must be >= 1, got {k}")
    quadratic = mode is BenefitMode.QUADRATIC

    counts = np.zeros(m, dtype=np.int64)
    sensor_active = np.zeros(n, dtype=np.bool_)
    pans = np.full(n, OFF, dtype=np.int64)
    if _accel.USE_NUMBA:
        ptr, tgt = matrix.pan_target_lists()
        scan = lambda: _scan_kernel(ptr, tgt, counts, k, quadratic, sensor_active, n, q)
    else:
        bits2d = matrix.bits.reshape(n * q, m)
        scan = lambda: _scan_numpy(bits2d, counts, k, quadratic, sensor_active, n, q)

    while True:
        sensor, pan, incentive = scan()
        if sensor < 0:
            return
        sensor_active[sensor] = True
        pans[sensor] = pan
        counts[matrix.targets_of(sensor, pan)] += 1
        assert np.array_equal(
            counts, coverage_of(matrix, Assignment(pans.copy()), k).raw
        ), "incremental counts diverged from a full recount"
        histogram = np.bincount(np.minimum(counts, k), minlength=k + 1)
        yield GreedyStep(
            sensor=int(sensor),
            pan=int(pan),
            incentive=int(incentive),
            counts=counts.copy(),
            histogram=histogram,
        )


def solve_greedy(
    matrix: CoverageMatrix,
    k: int,
    mode: BenefitMode,
    rho: float | None = None,
) -> tuple[Assignment, SolutionReport]:
    """Run the greedy loop to termination and report the result.

    The report's objective value is evaluated under coverage-max with the
    given (or default) penalty; the coverage metrics do not depend on it.
    """
    pans = np.full(matrix.sensor_count, OFF, dtype=np.int64)
    for step in greedy_steps(matrix, k, mode):
        pans[step.sensor] = step.pan
    assignment = Assignment(pans)
    if rho is None:
        rho = default_rho(matrix.sensor_count)
    spec = ObjectiveSpec(kind=ObjectiveKind.COVERAGE_MAX, k=k, rho=rho)
    return assignment, build_report(matrix, assignment, spec)
