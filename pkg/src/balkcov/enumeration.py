"""Exhaustive assignment enumeration, vectorized over NumPy arrays.

Walks every one of the ``(q + 1)^n`` assignments (each sensor picks a pan
or stays off) by accumulating per-sensor contribution tables with array
broadcasting, never descending a search tree.  It is deliberately
independent of the branch-and-bound solver so the two can check each
other; it is also what the CLI's ``--oracle`` flag runs.

Assignments are ordered with sensor 0 as the most significant digit and
digit order pan 0, ..., pan q-1, then off, matching the search order of
the exact solver, so ties resolve to the same assignment.
"""

from __future__ import annotations

import numpy as np

from .geometry import CoverageMatrix
from .metrics import OFF, Assignment
from .objectives import ObjectiveKind, ObjectiveSpec, ObjectiveValue

# Refuse enumerations that will not fit comfortably in memory.
DEFAULT_MAX_ASSIGNMENTS = 10_000_000


def enumerate_best(
    matrix: CoverageMatrix,
    spec: ObjectiveSpec,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
) -> tuple[ObjectiveValue, Assignment, int]:
    """Global optimum by brute force; returns (value, assignment, count).

    The returned assignment is the first optimum in assignment order,
    which matches the deterministic tie-break of the exact solver.
    """
    n, q, m = matrix.sensor_count, matrix.pan_count, matrix.target_count
    if n == 0 or m == 0:
        raise ValueError("enumeration needs at least one sensor and one target")
    total = (q + 1) ** n
    if total > max_assignments:
        raise ValueError(
            f"enumeration over {total} assignments exceeds the limit of {max_assignments}"
        )

    # tables[i]: (q + 1, m) coverage contribution of sensor i per choice,
    # with the off choice contributing nothing.  Counts fit int8 because
    # the assignment cap bounds n well below 127.
    counts = np.zeros((1, m), dtype=np.int8)
    active = np.zeros(1, dtype=np.int8)
    off_row = np.zeros((1, m), dtype=np.int8)
    choice_active = np.concatenate([np.ones(q, dtype=np.int8), np.zeros(1, dtype=np.int8)])
    for i in range(n):
        table = np.concatenate([matrix.bits[i].astype(np.int8), off_row], axis=0)
        counts = (counts[:, None, :] + table[None, :, :]).reshape(-1, m)
        active = (active[:, None] + choice_active[None, :]).reshape(-1)

    k, rho = spec.k, spec.rho
    psi = np.minimum(counts, k).astype(np.int16)
    sum_psi = psi.sum(axis=1, dtype=np.int64)
    active = active.astype(np.int64)

    if spec.kind is ObjectiveKind.COVERAGE_MAX:
        values = sum_psi.astype(np.float64) - rho * active
        best = int(np.argmax(values))
    elif spec.kind is ObjectiveKind.VECTOR_DISTANCE:
        deficit = k - psi
        dist = (deficit * deficit).sum(axis=1, dtype=np.int64)
        values = dist.astype(np.float64) + rho * active
        best = int(np.argmin(values))
    else:
        sum_psi_sq = (psi * psi).sum(axis=1, dtype=np.int64)
        s = sum_psi.astype(np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            term = (s * s * s) / sum_psi_sq.astype(np.float64)
            term = term / float(k * m * m)
        term = np.where(sum_psi == 0, 0.0, term)
        values = term - rho * active
        best = int(np.argmax(values))

    pans = _decode(best, n, q)
    value = ObjectiveValue(value=float(values[best]), sense=spec.sense)
    return value, Assignment(pans), total


def _decode(index: int, n: int, q: int) -> np.ndarray:
    """Assignment digits of an enumeration index; digit q means off."""
    pans = np.empty(n, dtype=np.int64)
    base = q + 1
    for i in range(n - 1, -1, -1):
        digit = index % base
        pans[i] = OFF if digit == q else digit
        index //= base
    return pans
