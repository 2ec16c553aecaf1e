"""Experiment driver: sweeps over nested scenarios, result rows, CSV/text output.

A sweep fixes one population (sensors or targets), sweeps the other over
an increasing list, and runs every requested solver on the identical
coverage matrix at each (seed, sweep point).  Per seed, one scenario
family is generated at the maximum sweep sizes and every sweep point is
a prefix of it, so a larger deployment keeps all features of a smaller
one.  Rows come out in deterministic order (seeds, then sweep points,
then solvers); with timing capture disabled the emitted files are
byte-identical across runs.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .exact import SearchBudget, solve_exact
from .geometry import CameraModel, build_coverage_matrix
from .greedy import BenefitMode, solve_greedy
from .metrics import SolutionReport
from .objectives import ObjectiveKind, ObjectiveSpec, default_rho
from .scenario import generate

AXIS_TARGETS = "targets"
AXIS_SENSORS = "sensors"

EXACT_SOLVERS = {
    "ILP-exact": ObjectiveKind.COVERAGE_MAX,
    "IQP-exact": ObjectiveKind.VECTOR_DISTANCE,
    "INLP-exact": ObjectiveKind.BALANCING_INDEX,
}
GREEDY_SOLVERS = {
    "GreedyLinear": BenefitMode.LINEAR,
    "GreedyQuadratic": BenefitMode.QUADRATIC,
}
SOLVER_NAMES = tuple(EXACT_SOLVERS) + tuple(GREEDY_SOLVERS)

_METRIC_FIELDS = ("balancing_index", "fairness_index", "sensor_usage_percent", "wall_time")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: the axis, the populations, and which solvers to compare."""

    axis: str
    fixed: int
    sweep: tuple[int, ...]
    k: int
    seeds: tuple[int, ...]
    solvers: tuple[str, ...]
    camera: CameraModel
    grid: tuple[float, float]
    rho: float | None = None  # None = 1/(2n) at each sweep point
    max_nodes: int | None = None
    record_timings: bool = True

    def __post_init__(self) -> None:
        if self.axis not in (AXIS_TARGETS, AXIS_SENSORS):
            raise ValueError(f"axis must be {AXIS_TARGETS!r} or {AXIS_SENSORS!r}, got {self.axis!r}")
        object.__setattr__(self, "sweep", tuple(int(v) for v in self.sweep))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "solvers", tuple(self.solvers))
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if not self.solvers:
            raise ValueError("at least one solver is required")
        unknown = [s for s in self.solvers if s not in SOLVER_NAMES]
        if unknown:
            raise ValueError(f"unknown solvers {unknown}; choose from {list(SOLVER_NAMES)}")
        if not self.sweep or any(b <= a for a, b in zip(self.sweep, self.sweep[1:])):
            raise ValueError(f"sweep list must be nonempty and strictly increasing, got {self.sweep}")
        if self.fixed < 1 or self.sweep[0] < 1:
            raise ValueError("population sizes must be >= 1")
        if self.k < 1:
            raise ValueError(f"coverage requirement k must be >= 1, got {self.k}")

    def populations(self, point: int) -> tuple[int, int]:
        """(n, m) at one sweep point."""
        if self.axis == AXIS_TARGETS:
            return self.fixed, point
        return point, self.fixed


@dataclass(frozen=True)
class ResultRow:
    """One (seed, scenario size, solver) cell of a sweep."""

    seed: int
    n: int
    m: int
    k: int
    solver: str
    balancing_index: float
    fairness_index: float
    total_coverage: int
    active_sensors: int
    sensor_usage_percent: float
    histogram: tuple[int, ...]  # exact 0..k-1 counts, then the >= k bucket
    wall_time: float
    optimality_flag: bool


def _histogram_columns(k: int) -> list[str]:
    return [f"covered_exactly_{level}" for level in range(k)] + [f"covered_atleast_{k}"]


def csv_header(k: int) -> list[str]:
    return (
        ["seed", "n", "m", "k", "solver", "balancing_index", "fairness_index",
         "total_coverage", "active_sensors", "sensor_usage_percent"]
        + _histogram_columns(k)
        + ["wall_time", "optimality_flag"]
    )


def _row_from_report(
    seed: int, n: int, m: int, k: int, solver: str,
    report: SolutionReport, wall_time: float, optimal: bool,
) -> ResultRow:
    # Metrics are rounded to the 6 decimals the emitters print, so a
    # parsed CSV reproduces the rows exactly.
    return ResultRow(
        seed=seed,
        n=n,
        m=m,
        k=k,
        solver=solver,
        balancing_index=round(report.balancing_index, 6),
        fairness_index=round(report.fairness_index, 6),
        total_coverage=int(report.coverage.capped.sum()),
        active_sensors=report.active_sensor_count,
        sensor_usage_percent=round(100.0 * report.active_sensor_count / n, 6),
        histogram=tuple(int(c) for c in report.histogram),
        wall_time=round(wall_time, 6),
        optimality_flag=optimal,
    )


def run_solver(solver: str, matrix, k: int, rho: float, max_nodes: int | None = None):
    """Run one named solver on a coverage matrix; returns (report, optimal)."""
    if solver in EXACT_SOLVERS:
        spec = ObjectiveSpec(kind=EXACT_SOLVERS[solver], k=k, rho=rho)
        budget = SearchBudget(max_nodes=max_nodes) if max_nodes else None
        _, report, stats = solve_exact(matrix, spec, budget=budget)
        return report, stats.optimal
    mode = GREEDY_SOLVERS[solver]
    _, report = solve_greedy(matrix, k, mode, rho=rho)
    return report, True


def run_sweep(config: ExperimentConfig) -> list[ResultRow]:
    """All (seed, sweep point, solver) cells of a sweep, in deterministic order."""
    rows: list[ResultRow] = []
    n_top, m_top = config.populations(config.sweep[-1])
    for seed in config.seeds:
        family = generate(seed, n_top, m_top, config.camera, config.grid)
        for point in config.sweep:
            n, m = config.populations(point)
            scenario = family.prefix(n, m)
            matrix = build_coverage_matrix(scenario)
            rho = config.rho if config.rho is not None else default_rho(n)
            for solver in config.solvers:
                start = time.perf_counter()
                report, optimal = run_solver(solver, matrix, config.k, rho, config.max_nodes)
                elapsed = time.perf_counter() - start if config.record_timings else 0.0
                rows.append(
                    _row_from_report(seed, n, m, config.k, solver, report, elapsed, optimal)
                )
    return rows


def rows_to_csv(rows: list[ResultRow]) -> str:
    """Render rows as CSV text with a fixed column order."""
    if not rows:
        raise ValueError("no rows to emit")
    k = rows[0].k
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(k))
    for row in rows:
        if row.k != k:
            raise ValueError("rows with mixed k cannot share one histogram header")
        writer.writerow(
            [row.seed, row.n, row.m, row.k, row.solver,
             f"{row.balancing_index:.6f}", f"{row.fairness_index:.6f}",
             row.total_coverage, row.active_sensors, f"{row.sensor_usage_percent:.6f}"]
            + list(row.histogram)
            + [f"{row.wall_time:.6f}", str(row.optimality_flag).lower()]
        )
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ResultRow]:
    """Parse rows emitted by ``rows_to_csv``."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise ValueError("empty CSV input")
    rows: list[ResultRow] = []
    for record in reader:
        values = dict(zip(header, record))
        k = int(values["k"])
        hist = tuple(int(values[col]) for col in _histogram_columns(k))
        rows.append(
            ResultRow(
                seed=int(values["seed"]),
                n=int(values["n"]),
                m=int(values["m"]),
                k=k,
                solver=values["solver"],
                balancing_index=float(values["balancing_index"]),
                fairness_index=float(values["fairness_index"]),
                total_coverage=int(values["total_coverage"]),
                active_sensors=int(values["active_sensors"]),
                sensor_usage_percent=float(values["sensor_usage_percent"]),
                histogram=hist,
                wall_time=float(values["wall_time"]),
                optimality_flag=values["optimality_flag"] == "true",
            )
        )
    return rows


def rows_to_text(rows: list[ResultRow]) -> str:
    """Render rows as blocks of ``key value`` lines separated by blank lines."""
    if not rows:
        raise ValueError("no rows to emit")
    blocks = []
    for row in rows:
        names = csv_header(row.k)
        csv_line = rows_to_csv([row]).splitlines()[1].split(",")
        blocks.append("\n".join(f"{name} {value}" for name, value in zip(names, csv_line)))
    return "\n\n".join(blocks) + "\n"


def emit(rows: list[ResultRow], path, fmt: str = "csv") -> None:
    """Write rows to ``path`` as ``csv`` or ``text``."""
    if fmt == "csv":
        payload = rows_to_csv(rows)
    elif fmt == "text":
        payload = rows_to_text(rows)
    else:
        raise ValueError(f"unknown output format {fmt!r}; use 'csv' or 'text'")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)


_LIST_FIELDS = {"m_list", "n_list", "seeds"}
_CONFIG_KEYS = {
    "axis", "n", "m", "m_list", "n_list", "k", "seeds", "solvers", "rho",
    "grid_width", "grid_height", "sensing_range", "pan_count", "max_nodes",
    "record_timings",
}


def parse_int_list(text: str) -> list[int]:
    """Comma lists (``1,2,3``) or half-open ranges (``0:30``)."""
    text = text.strip()
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi)))
    return [int(part) for part in text.split(",") if part]


def load_config(path) -> ExperimentConfig:
    """Read an ExperimentConfig from a ``key value`` text file."""
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'key value', got {line!r}")
            key, value = parts
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate config key {key!r}")
            raw[key] = value
    return config_from_mapping(raw, source=str(path))


def config_from_mapping(raw: dict[str, str], source: str = "config") -> ExperimentConfig:
    """Build an ExperimentConfig from string key/value pairs (file or CLI)."""
    def require(key: str) -> str:
        if key not in raw:
            raise ValueError(f"{source}: missing required config key {key!r}")
        return raw[key]

    axis = require("axis")
    if axis == AXIS_TARGETS:
        fixed = int(require("n"))
        sweep = parse_int_list(require("m_list"))
    elif axis == AXIS_SENSORS:
        fixed = int(require("m"))
        sweep = parse_int_list(require("n_list"))
    else:
        raise ValueError(f"{source}: axis must be {AXIS_TARGETS!r} or {AXIS_SENSORS!r}")

    rho_text = raw.get("rho", "default")
    rho = None if rho_text == "default" else float(rho_text)
    camera = CameraModel.with_pan_count(
        int(raw.get("pan_count", 8)), float(raw.get("sensing_range", 25.0))
    )
    grid = (float(raw.get("grid_width", 125.0)), float(raw.get("grid_height", 125.0)))
    max_nodes = int(raw["max_nodes"]) if "max_nodes" in raw else None
    record = raw.get("record_timings", "1").lower() not in ("0", "false", "off")
    return ExperimentConfig(
        axis=axis,
        fixed=fixed,
        sweep=tuple(sweep),
        k=int(require("k")),
        seeds=tuple(parse_int_list(require("seeds"))),
        solvers=tuple(s for s in require("solvers").split(",") if s),
        camera=camera,
        grid=grid,
        rho=rho,
        max_nodes=max_nodes,
        record_timings=record,
    )
