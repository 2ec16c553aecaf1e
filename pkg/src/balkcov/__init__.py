"""Balanced k-coverage planning for pan-only directional sensor networks.

Builds sector-coverage geometry, solves pan assignments exactly (branch
and bound) or greedily (linear/quadratic benefit) under three objective
formulations, and scores solutions with fairness and balancing indices.
"""

from ._accel import HAVE_NUMBA, USE_NUMBA
from .enumeration import enumerate_best
from .exact import SearchBudget, SearchStats, solve_exact, upper_bound
from .geometry import (
    CameraModel,
    CoverageMatrix,
    build_coverage_matrix,
    pan_of,
    target_in_sector,
)
from .greedy import BenefitMode, GreedyStep, benefit, greedy_steps, solve_greedy
from .harness import ExperimentConfig, ResultRow, emit, run_sweep
from .metrics import (
    OFF,
    Assignment,
    CoverageVector,
    SolutionReport,
    balancing_index,
    build_report,
    coverage_histogram,
    coverage_of,
    fairness_index,
)
from .objectives import (
    ObjectiveKind,
    ObjectiveSpec,
    ObjectiveValue,
    Sense,
    default_rho,
    evaluate,
    is_better,
    value_from_sums,
)
from .scenario import (
    Scenario,
    ScenarioFamily,
    ScenarioFormatError,
    ScenarioValidationError,
    generate,
    load_scenario,
    save_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "HAVE_NUMBA",
    "USE_NUMBA",
    "CameraModel",
    "CoverageMatrix",
    "build_coverage_matrix",
    "pan_of",
    "target_in_sector",
    "Scenario",
    "ScenarioFamily",
    "ScenarioFormatError",
    "ScenarioValidationError",
    "generate",
    "load_scenario",
    "save_scenario",
    "OFF",
    "Assignment",
    "CoverageVector",
    "SolutionReport",
    "coverage_of",
    "coverage_histogram",
    "fairness_index",
    "balancing_index",
    "build_report",
    "ObjectiveKind",
    "ObjectiveSpec",
    "ObjectiveValue",
    "Sense",
    "evaluate",
    "is_better",
    "default_rho",
    "value_from_sums",
    "SearchBudget",
    "SearchStats",
    "solve_exact",
    "upper_bound",
    "enumerate_best",
    "BenefitMode",
    "GreedyStep",
    "benefit",
    "greedy_steps",
    "solve_greedy",
    "ExperimentConfig",
    "ResultRow",
    "run_sweep",
    "emit",
    "__version__",
]
