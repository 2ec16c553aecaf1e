"""Exact optimization over all assignments by depth-first branch and bound.

Each sensor contributes one decision with ``pan_count + 1`` options: a pan
index or off.  The search fixes sensors in index order, tries pans in
index order and off last, and keeps the first optimum found in that
order, so results are fully deterministic.  An admissible bound on the
best possible completion of the current prefix prunes subtrees that
cannot strictly beat the incumbent; bounds never cut an optimal
completion, which the exhaustive enumeration oracle cross-checks.

The bound treats every undecided sensor as able to add its best
single-pan gain at the current counts with no overlap:

* coverage-max: current value plus ``max(0, gain_i - rho)`` per sensor,
  capped at the ``k * m`` ceiling
* vector-distance: current distance minus the largest reduction the
  total gain units could buy if spent on the deepest deficits
* balancing-index: the most-balanced spread of the maximum achievable
  total coverage (minimum possible sum of squares), which dominates the
  index of any real completion

Node budgets are enforced inside the kernel; wall-clock budgets are
checked between the root's subtrees.  When a budget is exhausted the
best assignment found so far is returned, flagged as non-optimal.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .geometry import CoverageMatrix
from .metrics import OFF, Assignment, SolutionReport, build_report
from .objectives import (
    VALUE_TIE_TOL,
    ObjectiveSpec,
    ObjectiveValue,
    Sense,
)


@dataclass(frozen=True)
class SearchBudget:
    """Optional limits on the search; exceeding one flags the result non-optimal."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError(f"max_nodes must be >= 1, got {self.max_nodes}")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError(f"max_seconds must be positive, got {self.max_seconds}")


@dataclass(frozen=True)
class SearchStats:
    """Search effort and outcome.

    ``nodes_explored`` counts every partial assignment entered (the root
    included); ``nodes_pruned`` counts subtrees cut by the bound.
    ``optimal`` is False only when a budget stopped the search early.
    """

    nodes_explored: int
    nodes_pruned: int
    wall_time: float
    optimal_value: ObjectiveValue
    optimal: bool


@njit(cache=True)
def _completion_bound(
    kind_code, n, q, m, k, rho, ptr, tgt, counts, sum_psi, sum_psi_sq, active, hist, first_undecided
):
    # Admissible bound over all completions of the current prefix: an upper
    # bound for the maximizing kinds, a lower bound for vector-distance.
    # Marginal gains are measured at the current counts; counts only grow
    # along any completion, so per-sensor best-pan gains never understate.
    total_gain = 0
    penalized_gain = 0.0
    for i in range(first_undecided, n):
        gmax = 0
        for j in range(q):
            p = i * q + j
            g = 0
            for idx in range(ptr[p], ptr[p + 1]):
                if counts[tgt[idx]] < k:
                    g += 1
            if g > gmax:
                gmax = g
        total_gain += gmax
        net = gmax - rho
        if net > 0.0:
            penalized_gain += net

    if kind_code == 0:
        ub = (sum_psi - rho * active) + penalized_gain
        cap = k * m - rho * active
        return ub if ub < cap else cap

    if kind_code == 1:
        # Spend the gain units on the largest deficits first; carry moved
        # targets down one level so they can absorb further units.
        remaining = total_gain
        reduction = 0
        carry = 0
        for d in range(k, 0, -1):
            avail = hist[d] + carry
            take = avail if avail < remaining else remaining
            reduction += take * (2 * d - 1)
            remaining -= take
            carry = take
            if remaining == 0:
                break
        dist = m * k * k - 2 * k * sum_psi + sum_psi_sq
        return float(dist - reduction) + rho * active

    # balancing-index
    if total_gain == 0:
        # Coverage is frozen; extra activations only add penalty.
        if sum_psi == 0:
            term = 0.0
        else:
            s = float(sum_psi)
            term = (s * s * s) / float(sum_psi_sq)
            term = term / float(k * m * m)
        return term - rho * active
    shat = sum_psi + total_gain
    if shat > k * m:
        shat = k * m
    a = shat // m
    r = shat - a * m
    s2min = (m - r) * a * a + r * (a + 1) * (a + 1)
    s = float(shat)
    term = (s * s * s) / float(s2min)
    term = term / float(k * m * m)
    return term - rho * active


@njit(cache=True)
def _search_subtree(
    n, q, m, k, kind_code, rho, ptr, tgt, root_choice, prune_enabled, tie_tol, node_limit,
    best_value, best_choices,
):
    # Depth-first search of the subtree rooted at sensor 0 = root_choice.
    # Choice encoding: 0..q-1 pans, q = off.  The incumbent value comes in
    # and goes out; improvements overwrite best_choices in place.
    counts = np.zeros(m, dtype=np.int64)
    hist = np.zeros(k + 1, dtype=np.int64)
    hist[k] = m
    cur = np.empty(n, dtype=np.int64)
    cur[0] = root_choice - 1

    sum_psi = 0
    sum_psi_sq = 0
    active = 0
    nodes = 0
    pruned = 0
    hit_limit = False
    maximize = kind_code != 1

    depth = 0
    while depth >= 0:
        cur[depth] += 1
        ch = cur[depth]
        last_choice = root_choice if depth == 0 else q
        if ch > last_choice:
            depth -= 1
            if depth >= 0:
                # backtrack: undo the choice standing at the parent depth
                pc = cur[depth]
                if pc < q:
                    active -= 1
                    for idx in range(ptr[depth * q + pc], ptr[depth * q + pc + 1]):
                        t = tgt[idx]
                        c = counts[t] - 1
                        counts[t] = c
                        if c < k:
                            sum_psi -= 1
                            sum_psi_sq -= 2 * c + 1
                            d = k - c
                            hist[d] += 1
                            hist[d - 1] -= 1
            continue

        # apply the choice
        if ch < q:
            active += 1
            for idx in range(ptr[depth * q + ch], ptr[depth * q + ch + 1]):
                t = tgt[idx]
                c = counts[t]
                counts[t] = c + 1
                if c < k:
                    sum_psi += 1
                    sum_psi_sq += 2 * c + 1
                    d = k - c
                    hist[d] -= 1
                    hist[d - 1] += 1
        nodes += 1

        if node_limit >= 0 and nodes >= node_limit:
            hit_limit = True
            break

        descend = True
        if depth == n - 1:
            # leaf: evaluate with the same operation order as value_from_sums
            if kind_code == 0:
                value = float(sum_psi) - rho * active
            elif kind_code == 1:
                value = float(m * k * k - 2 * k * sum_psi + sum_psi_sq) + rho * active
            else:
                if sum_psi == 0:
                    term = 0.0
                else:
                    s = float(sum_psi)
                    term = (s * s * s) / float(sum_psi_sq)
                    term = term / float(k * m * m)
                value = term - rho * active
            if (maximize and value > best_value + tie_tol) or (
                not maximize and value < best_value - tie_tol
            ):
                best_value = value
                for i in range(n):
                    best_choices[i] = cur[i]
            descend = False
        elif prune_enabled:
            bound = _completion_bound(
                kind_code, n, q, m, k, rho, ptr, tgt, counts,
                sum_psi, sum_psi_sq, active, hist, depth + 1,
            )
            if (maximize and bound <= best_value + tie_tol) or (
                not maximize and bound >= best_value - tie_tol
            ):
                pruned += 1
                descend = False

        if descend:
            depth += 1
            cur[depth] = -1
        else:
            # undo the just-applied choice and try the next one at this depth
            if ch < q:
                active -= 1
                for idx in range(ptr[depth * q + ch], ptr[depth * q + ch + 1]):
                    t = tgt[idx]
                    c = counts[t] - 1
                    counts[t] = c
                    if c < k:
                        sum_psi -= 1
                        sum_psi_sq -= 2 * c + 1
                        d = k - c
                        hist[d] += 1
                        hist[d - 1] -= 1

    return best_value, nodes, pruned, hit_limit


def _prefix_state(matrix: CoverageMatrix, choices, k: int):
    """Counts, capped sums, active count, and deficit histogram of a prefix."""
    m = matrix.target_count
    counts = np.zeros(m, dtype=np.int64)
    active = 0
    for sensor, choice in enumerate(choices):
        if choice == OFF:
            continue
        if not (0 <= choice < matrix.pan_count):
            raise ValueError(f"pan index {choice} out of range [0, {matrix.pan_count})")
        counts += matrix.bits[sensor, choice]
        active += 1
    capped = np.minimum(counts, k)
    hist = np.bincount(k - capped, minlength=k + 1).astype(np.int64)
    return counts, int(capped.sum()), int((capped * capped).sum()), active, hist


def upper_bound(partial, matrix: CoverageMatrix, spec: ObjectiveSpec) -> float:
    """Admissible bound on the best completion of a prefix assignment.

    ``partial`` holds the choices (``OFF`` or a pan index) of sensors
    ``0..s-1``; sensors ``s..n-1`` are undecided.  For the maximizing
    objective kinds no completion scores above the bound; for
    vector-distance none scores below it.  A fully decided prefix bounds
    to its exact objective value.
    """
    n = matrix.sensor_count
    if len(partial) > n:
        raise ValueError(f"prefix of length {len(partial)} exceeds sensor count {n}")
    ptr, tgt = matrix.pan_target_lists()
    counts, sum_psi, sum_psi_sq, active, hist = _prefix_state(matrix, partial, spec.k)
    return float(
        _completion_bound(
            spec.kind.code, n, matrix.pan_count, matrix.target_count, spec.k, spec.rho,
            ptr, tgt, counts, sum_psi, sum_psi_sq, active, hist, len(partial),
        )
    )


def solve_exact(
    matrix: CoverageMatrix,
    spec: ObjectiveSpec,
    budget: SearchBudget | None = None,
    prune: bool = True,
) -> tuple[Assignment, SolutionReport, SearchStats]:
    """Globally optimal assignment for the objective, within the budget.

    Without a budget the returned assignment attains the global optimum
    over all ``(pan_count + 1) ** n`` assignments; with one, the best
    assignment found before exhaustion is returned and ``stats.optimal``
    is False.  Ties are broken deterministically by keeping the first
    optimum in search order.
    """
    n, q, m = matrix.sensor_count, matrix.pan_count, matrix.target_count
    if n == 0 or m == 0:
        raise ValueError("exact solve needs at least one sensor and one target")
    ptr, tgt = matrix.pan_target_lists()
    maximize = spec.sense is Sense.MAXIMIZE
    best_value = -math.inf if maximize else math.inf
    best_choices = np.full(n, q, dtype=np.int64)

    max_nodes = budget.max_nodes if budget else None
    deadline = None
    start = time.perf_counter()
    if budget and budget.max_seconds is not None:
        deadline = start + budget.max_seconds

    nodes_total = 1  # the root itself
    pruned_total = 0
    hit_limit = False
    found_leaf = False
    for root_choice in range(q + 1):
        if deadline is not None and root_choice > 0 and time.perf_counter() >= deadline:
            hit_limit = True
            break
        node_limit = -1
        if max_nodes is not None:
            node_limit = max_nodes - nodes_total
            if node_limit <= 0:
                hit_limit = True
                break
        value, nodes, pruned, hit = _search_subtree(
            n, q, m, spec.k, spec.kind.code, spec.rho, ptr, tgt, root_choice,
            prune, VALUE_TIE_TOL, node_limit, best_value, best_choices,
        )
        if (maximize and value > best_value) or (not maximize and value < best_value):
            found_leaf = True
        best_value = value
        nodes_total += int(nodes)
        pruned_total += int(pruned)
        if hit:
            hit_limit = True
            break

    if not found_leaf:
        # Budget too small to reach any leaf: fall back to the all-off
        # assignment, which is always feasible.
        best_choices = np.full(n, q, dtype=np.int64)
        assignment = Assignment.all_off(n)
        report = build_report(matrix, assignment, spec)
        best_value = report.objective_value
    else:
        pans = np.where(best_choices == q, OFF, best_choices)
        assignment = Assignment(pans)
        report = build_report(matrix, assignment, spec)

    stats = SearchStats(
        nodes_explored=nodes_total,
        nodes_pruned=pruned_total,
        wall_time=time.perf_counter() - start,
        optimal_value=ObjectiveValue(value=float(best_value), sense=spec.sense),
        optimal=not hit_limit,
    )
    return assignment, report, stats
