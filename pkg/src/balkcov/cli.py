"""Command-line interface: generate scenarios, solve, sweep, recompute metrics."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .enumeration import enumerate_best
from .exact import SearchBudget, solve_exact
from .geometry import CameraModel, build_coverage_matrix
from .greedy import greedy_steps, solve_greedy
from .harness import (
    EXACT_SOLVERS,
    GREEDY_SOLVERS,
    SOLVER_NAMES,
    config_from_mapping,
    emit,
    load_config,
    run_sweep,
)
from .metrics import OFF, Assignment, build_report
from .objectives import ObjectiveKind, ObjectiveSpec, default_rho
from .scenario import load_scenario, generate, save_scenario


def _camera_from_args(args) -> CameraModel:
    return CameraModel.with_pan_count(args.pans, args.range)


def _print_record(record: dict) -> None:
    for key, value in record.items():
        if isinstance(value, float):
            print(f"{key} {value:.6f}")
        else:
            print(f"{key} {value}")


def _print_assignment(assignment: Assignment) -> None:
    for sensor, pan in enumerate(assignment.pans):
        choice = "off" if pan == OFF else f"pan {pan}"
        print(f"sensor {sensor}: {choice}")


def save_assignment(assignment: Assignment, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sensor, pan in enumerate(assignment.pans):
            fh.write(f"{sensor} {'off' if pan == OFF else int(pan)}\n")


def load_assignment(path, n: int) -> Assignment:
    pans = np.full(n, OFF, dtype=np.int64)
    seen = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<sensor> <pan|off>', got {line!r}")
            sensor = int(parts[0])
            if not (0 <= sensor < n):
                raise ValueError(f"{path}:{lineno}: sensor index {sensor} out of range [0, {n})")
            if sensor in seen:
                raise ValueError(f"{path}:{lineno}: duplicate sensor index {sensor}")
            seen.add(sensor)
            pans[sensor] = OFF if parts[1] == "off" else int(parts[1])
    if len(seen) != n:
        raise ValueError(f"{path}: expected one line per sensor (n={n}), got {len(seen)}")
    return Assignment(pans)


def _cmd_generate(args) -> int:
    family = generate(
        seed=args.seed,
        n_max=args.sensors,
        m_max=args.targets,
        camera=_camera_from_args(args),
        grid=tuple(args.grid),
    )
    save_scenario(family.master, args.out)
    print(f"wrote scenario with {args.sensors} sensors, {args.targets} targets to {args.out}")
    return 0


def _cmd_solve(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario.require_nonempty()
    matrix = build_coverage_matrix(scenario)
    n = matrix.sensor_count
    rho = args.rho if args.rho is not None else default_rho(n)
    solver = args.solver

    if solver in EXACT_SOLVERS:
        spec = ObjectiveSpec(kind=EXACT_SOLVERS[solver], k=args.k, rho=rho)
        budget = SearchBudget(max_nodes=args.max_nodes) if args.max_nodes else None
        assignment, report, stats = solve_exact(matrix, spec, budget=budget)
        extra = {
            "optimal": str(stats.optimal).lower(),
            "nodes_explored": stats.nodes_explored,
            "nodes_pruned": stats.nodes_pruned,
        }
    elif solver in GREEDY_SOLVERS:
        spec = ObjectiveSpec(kind=ObjectiveKind.COVERAGE_MAX, k=args.k, rho=rho)
        if args.trace:
            pans = np.full(n, OFF, dtype=np.int64)
            for step in greedy_steps(matrix, args.k, GREEDY_SOLVERS[solver]):
                pans[step.sensor] = step.pan
                hist = ",".join(str(int(c)) for c in step.histogram)
                print(f"step sensor={step.sensor} pan={step.pan} "
                      f"incentive={step.incentive} histogram={hist}")
            assignment = Assignment(pans)
            report = build_report(matrix, assignment, spec)
        else:
            assignment, report = solve_greedy(matrix, args.k, GREEDY_SOLVERS[solver], rho=rho)
        extra = {}
    else:
        raise ValueError(f"unknown solver {solver!r}; choose from {list(SOLVER_NAMES)}")

    record = {"solver": solver, "n": n, "m": matrix.target_count, "rho": rho}
    record.update(report.to_record())
    record.update(extra)
    _print_record(record)

    if args.oracle:
        if solver not in EXACT_SOLVERS:
            print("oracle comparison applies to exact solvers only", file=sys.stderr)
            return 2
        value, _, explored = enumerate_best(matrix, spec)
        match = value.value == report.objective_value
        print(f"oracle_value {value.value:.6f}")
        print(f"oracle_assignments {explored}")
        print(f"oracle_match {str(match).lower()}")
        if not match:
            print("solver value disagrees with exhaustive enumeration", file=sys.stderr)
            return 1

    if args.show_assignment:
        _print_assignment(assignment)
    if args.save_assignment:
        save_assignment(assignment, args.save_assignment)
    return 0


def _cmd_sweep(args) -> int:
    if args.config:
        config = load_config(args.config)
    else:
        raw = {}
        if args.axis:
            raw["axis"] = args.axis
        if args.n is not None:
            raw["n"] = str(args.n)
        if args.m is not None:
            raw["m"] = str(args.m)
        if args.m_list:
            raw["m_list"] = args.m_list
        if args.n_list:
            raw["n_list"] = args.n_list
        if args.k is not None:
            raw["k"] = str(args.k)
        if args.seeds:
            raw["seeds"] = args.seeds
        if args.solvers:
            raw["solvers"] = args.solvers
        if args.rho is not None:
            raw["rho"] = args.rho
        if args.max_nodes is not None:
            raw["max_nodes"] = str(args.max_nodes)
        if args.no_timings:
            raw["record_timings"] = "0"
        raw.setdefault("sensing_range", str(args.range))
        raw.setdefault("pan_count", str(args.pans))
        raw.setdefault("grid_width", str(args.grid[0]))
        raw.setdefault("grid_height", str(args.grid[1]))
        config = config_from_mapping(raw, source="command line")
    rows = run_sweep(config)
    emit(rows, args.out, fmt=args.format)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_metrics(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario.require_nonempty()
    matrix = build_coverage_matrix(scenario)
    assignment = load_assignment(args.assignment, matrix.sensor_count)
    assignment.validate_for(matrix)
    rho = args.rho if args.rho is not None else default_rho(matrix.sensor_count)
    spec = ObjectiveSpec(kind=ObjectiveKind.COVERAGE_MAX, k=args.k, rho=rho)
    report = build_report(matrix, assignment, spec)
    _print_record(report.to_record())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balkcov",
        description="Balanced k-coverage planning for pan-only directional sensor networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate and save a random scenario")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--sensors", type=int, required=True)
    gen.add_argument("--targets", type=int, required=True)
    gen.add_argument("--range", type=float, default=25.0, help="sensing range (default 25)")
    gen.add_argument("--pans", type=int, default=8, help="number of pans (default 8)")
    gen.add_argument("--grid", type=float, nargs=2, default=[125.0, 125.0],
                     metavar=("WIDTH", "HEIGHT"))
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    solve = sub.add_parser("solve", help="solve one scenario with one solver")
    solve.add_argument("--scenario", required=True)
    solve.add_argument("--solver", required=True, choices=list(SOLVER_NAMES))
    solve.add_argument("--k", type=int, required=True)
    solve.add_argument("--rho", type=float, default=None, help="penalty (default 1/(2n))")
    solve.add_argument("--max-nodes", type=int, default=None)
    solve.add_argument("--oracle", action="store_true",
                       help="cross-check exact solvers against exhaustive enumeration")
    solve.add_argument("--trace", action="store_true", help="print greedy steps")
    solve.add_argument("--show-assignment", action="store_true")
    solve.add_argument("--save-assignment", default=None)
    solve.set_defaults(func=_cmd_solve)

    sweep = sub.add_parser("sweep", help="run a sweep experiment and write result rows")
    sweep.add_argument("--config", default=None, help="key/value config file")
    sweep.add_argument("--axis", choices=["targets", "sensors"], default=None)
    sweep.add_argument("--n", type=int, default=None, help="fixed sensor count (axis targets)")
    sweep.add_argument("--m", type=int, default=None, help="fixed target count (axis sensors)")
    sweep.add_argument("--m-list", default=None, help="target counts, e.g. 4,8,16 ")
    sweep.add_argument("--n-list", default=None, help="sensor counts, e.g. 4:11")
    sweep.add_argument("--k", type=int, default=None)
    sweep.add_argument("--seeds", default=None, help="comma list or lo:hi range")
    sweep.add_argument("--solvers", default=None, help="comma list of solver names")
    sweep.add_argument("--rho", default=None, help="penalty value or 'default'")
    sweep.add_argument("--range", type=float, default=25.0)
    sweep.add_argument("--pans", type=int, default=8)
    sweep.add_argument("--grid", type=float, nargs=2, default=[125.0, 125.0],
                       metavar=("WIDTH", "HEIGHT"))
    sweep.add_argument("--max-nodes", type=int, default=None)
    sweep.add_argument("--no-timings", action="store_true",
                       help="write wall_time as 0 for byte-identical reruns")
    sweep.add_argument("--format", choices=["csv", "text"], default="csv")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=_cmd_sweep)

    met = sub.add_parser("metrics", help="recompute metrics for a saved assignment")
    met.add_argument("--scenario", required=True)
    met.add_argument("--assignment", required=True)
    met.add_argument("--k", type=int, required=True)
    met.add_argument("--rho", type=float, default=None)
    met.set_defaults(func=_cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
