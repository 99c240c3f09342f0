import math

import numpy as np
import pytest

from hedgehog.chebyshev import extremal_configuration, extremal_constant
from hedgehog.geometry import TWO_PI, equal_weight_configuration, normalize_configuration, objective
from hedgehog.optimize import (
    ConstructionFailure,
    local_minimize,
    multistart_minimize,
    verify_upper_bound,
)


def roots_of_unity(n):
    return equal_weight_configuration([TWO_PI * k / n for k in range(n)])


class TestLocalMinimize:
    def test_never_ascends(self):
        rng = np.random.default_rng(14)
        for _ in range(8):
            n = int(rng.integers(2, 7))
            start = equal_weight_configuration(rng.uniform(0, TWO_PI, n))
            result = local_minimize(start)
            assert result.best_objective <= objective(start) + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_extremal_configuration_is_stationary(self, n):
        start = extremal_configuration(n)
        result = local_minimize(start)
        assert abs(result.best_objective - objective(start)) <= 1e-9

    def test_single_point_trivial(self):
        result = local_minimize(equal_weight_configuration([2.0]))
        assert result.best_objective == pytest.approx(2.0, abs=1e-12)
        assert result.converged_fraction == 1.0

    def test_descends_from_symmetric_start(self):
        result = local_minimize(roots_of_unity(4))
        assert result.best_objective <= extremal_constant(4).value + 1e-6

    def test_result_recomputes_objective(self):
        result = local_minimize(roots_of_unity(3))
        assert result.best_objective == pytest.approx(
            objective(result.best_config), abs=1e-10
        )
        assert result.best_objective >= 1.0

    def test_iteration_cap_flagged(self):
        start = equal_weight_configuration([0.1, 1.9, 3.4, 4.8])
        result = local_minimize(start, max_iterations=5)
        assert result.converged_fraction == 0.0
        assert result.best_objective <= objective(start) + 1e-12

    def test_requires_equal_weights(self):
        config = normalize_configuration([0.0, 3.0], [0.25, 0.75])
        with pytest.raises(ValueError):
            local_minimize(config)


class TestMultistart:
    def test_pair_finds_sqrt3(self):
        result = multistart_minimize(2, 50, 42)
        assert result.best_objective == pytest.approx(math.sqrt(3.0), abs=1e-6)
        assert result.starts == 50
        assert result.seed == 42

    def test_single_point(self):
        result = multistart_minimize(1, 3, 0)
        assert result.best_objective == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("n", [3, 5])
    def test_matches_constant(self, n):
        result = multistart_minimize(n, 25, 7)
        constant = extremal_constant(n).value
        assert constant - 1e-6 <= result.best_objective <= constant + 1e-4

    def test_deterministic(self):
        a = multistart_minimize(4, 12, 99)
        b = multistart_minimize(4, 12, 99)
        assert a == b

    def test_seed_changes_search(self):
        a = multistart_minimize(5, 3, 1)
        b = multistart_minimize(5, 3, 2)
        assert a.best_config != b.best_config

    def test_gauge_invariance_of_start(self):
        angles = np.array([0.3, 1.1, 2.9, 4.2, 5.3])
        base = local_minimize(equal_weight_configuration(angles))
        for shift in (1e-4, 0.9):
            rotated = local_minimize(equal_weight_configuration(angles + shift))
            assert rotated.best_objective == pytest.approx(
                base.best_objective, abs=1e-9
            )

    def test_input_validation(self):
        with pytest.raises(ValueError):
            multistart_minimize(0, 5, 1)
        with pytest.raises(ValueError):
            multistart_minimize(3, 0, 1)


class TestUpperBoundReport:
    def test_single_point(self):
        report = verify_upper_bound(1, starts=3, seed=0)
        assert report.extremal_constant == pytest.approx(2.0, rel=1e-14)
        assert report.construction_objective == pytest.approx(2.0, abs=1e-10)
        assert report.search_best == pytest.approx(2.0, abs=1e-10)

    def test_small_n(self):
        report = verify_upper_bound(3, starts=10, seed=5)
        assert abs(report.gap_construction) <= 1e-8
        assert report.gap_search_vs_constant >= -1e-6
        assert report.starts == 10

    def test_construction_failure_raised(self):
        with pytest.raises(ConstructionFailure):
            verify_upper_bound(3, starts=1, seed=0, tolerance=1e-18)
