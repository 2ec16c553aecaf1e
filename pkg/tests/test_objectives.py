"""Objective evaluation, comparison, and the default penalty."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balkcov import (
    CoverageVector,
    ObjectiveKind,
    ObjectiveSpec,
    ObjectiveValue,
    Sense,
    balancing_index,
    default_rho,
    evaluate,
    is_better,
    value_from_sums,
)
from helpers import random_matrix


def vec(counts, k):
    return CoverageVector(raw=np.asarray(counts), k=k)


class TestEvaluate:
    def test_coverage_max_example(self):
        spec = ObjectiveSpec(ObjectiveKind.COVERAGE_MAX, k=3, rho=0.1)
        value = evaluate(spec, vec((3, 3, 1, 1), 3), active_count=4)
        assert value.value == pytest.approx(7.6, abs=1e-12)
        assert value.sense is Sense.MAXIMIZE

    def test_vector_distance_zero_at_ideal(self):
        spec = ObjectiveSpec(ObjectiveKind.VECTOR_DISTANCE, k=2, rho=0.25)
        value = evaluate(spec, vec((2, 2, 2), 2), active_count=5)
        assert value.value == pytest.approx(0.25 * 5, abs=1e-12)
        assert value.sense is Sense.MINIMIZE

    def test_balancing_term_matches_index(self):
        # with no active sensors the whole value is the balancing term
        spec = ObjectiveSpec(ObjectiveKind.BALANCING_INDEX, k=3, rho=0.1)
        value = evaluate(spec, vec((2, 2, 2), 3), active_count=0)
        assert value.value == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert value.value == pytest.approx(0.6666, abs=1e-4)

    def test_balancing_zero_coverage(self):
        spec = ObjectiveSpec(ObjectiveKind.BALANCING_INDEX, k=3, rho=0.5)
        value = evaluate(spec, vec((0, 0), 3), active_count=2)
        assert value.value == pytest.approx(-1.0, abs=1e-12)

    def test_k_mismatch_rejected(self):
        spec = ObjectiveSpec(ObjectiveKind.COVERAGE_MAX, k=3, rho=0.1)
        with pytest.raises(ValueError):
            evaluate(spec, vec((1, 1), 2), active_count=1)

    @given(
        psi=st.lists(st.integers(0, 9), min_size=1, max_size=12),
        k=st.integers(1, 5),
        active=st.integers(0, 12),
    )
    @settings(max_examples=300)
    def test_balancing_term_equals_index_algebraically(self, psi, k, active):
        # (1/(k m^2)) * S^3 / S2 == FI * S / (k m) on capped counts
        spec = ObjectiveSpec(ObjectiveKind.BALANCING_INDEX, k=k, rho=1e-3)
        coverage = vec(psi, k)
        term = evaluate(spec, coverage, active).value + spec.rho * active
        assert term == pytest.approx(balancing_index(coverage), rel=1e-12, abs=1e-12)

    @given(
        psi=st.lists(st.integers(0, 4), min_size=1, max_size=10),
        k=st.integers(1, 5),
        active=st.integers(0, 10),
    )
    @settings(max_examples=300)
    def test_vector_distance_is_squared_euclidean(self, psi, k, active):
        spec = ObjectiveSpec(ObjectiveKind.VECTOR_DISTANCE, k=k, rho=0.7)
        coverage = vec(psi, k)
        ideal = np.full(len(psi), k, dtype=float)
        expected = float(np.sum((ideal - np.asarray(coverage.capped, dtype=float)) ** 2))
        got = evaluate(spec, coverage, active).value
        assert got == pytest.approx(expected + 0.7 * active, rel=1e-12)

    @given(
        psi=st.lists(st.integers(0, 6), min_size=1, max_size=8),
        active=st.integers(0, 8),
        data=st.data(),
    )
    @settings(max_examples=200)
    def test_coverage_max_unit_monotonicity(self, psi, active, data):
        k = 4
        spec = ObjectiveSpec(ObjectiveKind.COVERAGE_MAX, k=k, rho=0.05)
        coverage = vec(psi, k)
        under = [t for t, v in enumerate(coverage.capped) if v < k]
        if not under:
            return
        t = data.draw(st.sampled_from(under))
        bumped = list(coverage.capped)
        bumped[t] += 1
        before = evaluate(spec, coverage, active).value
        after = evaluate(spec, vec(bumped, k), active).value
        assert after == pytest.approx(before + 1.0, abs=1e-12)


class TestConstraintPairEquivalence:
    def test_capped_count_is_what_a_maximizer_would_pick(self):
        # over all small raw counts: min(xi, k) is feasible for the
        # constraint pair xi/n <= psi <= xi, psi <= k, and is the maximum
        # feasible integer choice
        for n in range(1, 7):
            for xi in range(0, n + 1):
                for k in range(1, 5):
                    psi = min(xi, k)
                    assert xi / n <= psi <= xi or xi == 0
                    assert psi <= k
                    feasible = [
                        p for p in range(0, xi + 1) if xi / n <= p <= xi and p <= k
                    ] or [0]
                    assert psi == max(feasible)


class TestIsBetter:
    def spec(self, kind=ObjectiveKind.COVERAGE_MAX):
        return ObjectiveSpec(kind, k=1, rho=0.5)

    def test_maximize(self):
        spec = self.spec()
        a = ObjectiveValue(7.6, Sense.MAXIMIZE)
        b = ObjectiveValue(7.5, Sense.MAXIMIZE)
        assert is_better(spec, a, b)
        assert not is_better(spec, b, a)

    def test_minimize(self):
        spec = self.spec(ObjectiveKind.VECTOR_DISTANCE)
        a = ObjectiveValue(2.0, Sense.MINIMIZE)
        b = ObjectiveValue(1.0, Sense.MINIMIZE)
        assert not is_better(spec, a, b)
        assert is_better(spec, b, a)

    def test_tolerance_tie(self):
        spec = self.spec()
        a = ObjectiveValue(1.0, Sense.MAXIMIZE)
        b = ObjectiveValue(1.0 + 1e-13, Sense.MAXIMIZE)
        assert not is_better(spec, a, b)
        assert not is_better(spec, b, a)

    def test_mixed_senses_rejected(self):
        spec = self.spec()
        a = ObjectiveValue(1.0, Sense.MAXIMIZE)
        b = ObjectiveValue(1.0, Sense.MINIMIZE)
        with pytest.raises(ValueError):
            is_better(spec, a, b)
        with pytest.raises(ValueError):
            is_better(self.spec(ObjectiveKind.VECTOR_DISTANCE), a, a)


class TestDefaultRho:
    def test_values(self):
        assert default_rho(10) == pytest.approx(0.05)
        assert default_rho(1) == pytest.approx(0.5)
        assert default_rho(4, q=8) == pytest.approx(0.125)

    def test_rejects_zero_sensors(self):
        with pytest.raises(ValueError):
            default_rho(0)

    def test_coverage_always_beats_sensor_savings(self):
        # with rho = 1/(2n), any extra unit of capped coverage outweighs
        # switching every other sensor off; exhaustive over 3-sensor instances
        for seed in range(6):
            matrix = random_matrix(seed, 3, 4, grid=(40.0, 40.0))
            n, q = 3, 8
            k = 2
            spec = ObjectiveSpec(ObjectiveKind.COVERAGE_MAX, k=k, rho=default_rho(n))
            scored = []
            for choices in itertools.product(range(q + 1), repeat=n):
                counts = np.zeros(4, dtype=int)
                active = 0
                for sensor, ch in enumerate(choices):
                    if ch < q:
                        counts += matrix.bits[sensor, ch]
                        active += 1
                coverage = CoverageVector(raw=counts, k=k)
                scored.append((int(coverage.capped.sum()), evaluate(spec, coverage, active).value))
            for (sum_a, val_a), (sum_b, val_b) in itertools.combinations(scored, 2):
                if sum_a > sum_b:
                    assert val_a > val_b
                elif sum_b > sum_a:
                    assert val_b > val_a


class TestValueFromSums:
    @given(
        psi=st.lists(st.integers(0, 5), min_size=1, max_size=10),
        k=st.integers(1, 5),
        active=st.integers(0, 10),
        kind=st.sampled_from(list(ObjectiveKind)),
    )
    @settings(max_examples=300)
    def test_matches_evaluate(self, psi, k, active, kind):
        spec = ObjectiveSpec(kind, k=k, rho=0.01)
        coverage = vec(psi, k)
        capped = coverage.capped
        via_sums = value_from_sums(
            kind.code, k, len(psi), 0.01, int(capped.sum()), int((capped * capped).sum()), active
        )
        assert via_sums == evaluate(spec, coverage, active).value
