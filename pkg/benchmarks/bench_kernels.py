#!/usr/bin/env python3
"""Benchmark the solver kernels with and without the numba JIT.

Runs the same workload twice in subprocesses, once with BALKCOV_NUMBA=1
and once with BALKCOV_NUMBA=0 (the pure NumPy/Python fallback), and
prints a side-by-side table.  JIT compilation happens during warmup and
is excluded from the timings.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = ["greedy_survey", "greedy_dense", "exact_small", "exact_medium", "enumeration"]

_INNER = r"""
import json
import sys
import time

import balkcov as bc

CAM = bc.CameraModel.with_pan_count(8, 25.0)
REPEAT = int(sys.argv[1])


def timer(fn, repeat=REPEAT):
    fn()  # warmup (includes JIT compilation when enabled)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def greedy_survey():
    matrix = bc.build_coverage_matrix(bc.generate(1, 50, 100, CAM, (125.0, 125.0)).master)
    bc.solve_greedy(matrix, 3, bc.BenefitMode.QUADRATIC)


def greedy_dense():
    matrix = bc.build_coverage_matrix(bc.generate(2, 40, 200, CAM, (60.0, 60.0)).master)
    bc.solve_greedy(matrix, 3, bc.BenefitMode.QUADRATIC)


def exact_small():
    matrix = bc.build_coverage_matrix(bc.generate(3, 6, 10, CAM, (60.0, 60.0)).master)
    for kind in bc.ObjectiveKind:
        bc.solve_exact(matrix, bc.ObjectiveSpec(kind, k=2, rho=1e-4))


def exact_medium():
    matrix = bc.build_coverage_matrix(bc.generate(4, 8, 24, CAM, (60.0, 60.0)).master)
    for kind in bc.ObjectiveKind:
        bc.solve_exact(matrix, bc.ObjectiveSpec(kind, k=2, rho=1e-4))


def enumeration():
    matrix = bc.build_coverage_matrix(bc.generate(5, 5, 10, CAM, (60.0, 60.0)).master)
    spec = bc.ObjectiveSpec(bc.ObjectiveKind.COVERAGE_MAX, k=2, rho=1e-4)
    bc.enumerate_best(matrix, spec)


results = {"use_numba": bc.USE_NUMBA}
for name in %(workloads)r:
    results[name] = timer(globals()[name])
print(json.dumps(results))
"""


def run_mode(flag: str, repeat: int) -> dict:
    env = dict(os.environ, BALKCOV_NUMBA=flag)
    code = _INNER % {"workloads": WORKLOADS}
    proc = subprocess.run(
        [sys.executable, "-c", code, str(repeat)],
        capture_output=True, text=True, env=env, timeout=1800,
    )
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(1)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions per workload")
    args = parser.parse_args()

    print("timing with numba JIT enabled ...")
    jit = run_mode("1", args.repeat)
    print("timing pure NumPy/Python fallback ...")
    fallback = run_mode("0", args.repeat)
    if not jit["use_numba"]:
        print("note: numba unavailable, both columns ran the fallback path")

    print()
    print(f"{'workload':16s} {'jit':>12s} {'fallback':>12s} {'speedup':>9s}")
    for name in WORKLOADS:
        ratio = fallback[name] / jit[name] if jit[name] > 0 else float("inf")
        print(f"{name:16s} {jit[name] * 1e3:10.2f}ms {fallback[name] * 1e3:10.2f}ms {ratio:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
