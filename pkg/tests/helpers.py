"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np

from balkcov import CameraModel, CoverageMatrix, ScenarioFamily, generate

CAMERA8 = CameraModel.with_pan_count(8, 25.0)

# Denser than the default 125x125 grid so small instances actually overlap.
DENSE_GRID = (60.0, 60.0)


def family(seed: int, n: int, m: int, grid=DENSE_GRID, camera: CameraModel = CAMERA8) -> ScenarioFamily:
    return generate(seed, n, m, camera, grid)


def random_matrix(seed: int, n: int, m: int, grid=DENSE_GRID, camera: CameraModel = CAMERA8) -> CoverageMatrix:
    from balkcov import build_coverage_matrix

    return build_coverage_matrix(family(seed, n, m, grid, camera).master)


def matrix_from_sets(n: int, q: int, m: int, sets: dict[tuple[int, int], list[int]]) -> CoverageMatrix:
    """Synthetic coverage matrix from explicit (sensor, pan) -> targets sets."""
    bits = np.zeros((n, q, m), dtype=np.uint8)
    for (sensor, pan), targets in sets.items():
        for t in targets:
            bits[sensor, pan, t] = 1
    return CoverageMatrix(bits)


def random_assignment(rng: np.random.Generator, n: int, q: int, p_off: float = 0.3) -> np.ndarray:
    """Random per-sensor choices with OFF probability ``p_off``."""
    pans = rng.integers(0, q, size=n)
    off = rng.random(n) < p_off
    pans[off] = -1
    return pans
