# Copyright (c) 2025 ProxSTORM


import numpy as np
import pytest

from src.problems import sampled_reduction
from src.utils.errors import FcdViolationError
from src.verify import (
    SUITES,
    SuiteResult,
    TwoPointProblem,
    enumerate_box_budget_projection,
    run_suites,
)


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(name):
    (result,) = run_suites([name], seed=0)
    assert result.passed, result.failure
    assert result.cases > 0


def test_fcd_suite_fails_on_caught_violation(monkeypatch):
    def short_step(*args, **kwargs):
        raise FcdViolationError(1e-12, 1e-3)

    monkeypatch.setattr("src.driver.trust_region.compute_trial_step", short_step)
    (result,) = run_suites(["fcd"], seed=0)
    assert not result.passed
    assert result.failure["pred"] == 1e-12


def test_suite_result_records_failure():
    result = SuiteResult("demo", cases=3).fail(x=[1.0], r=0.5)
    assert not result.passed
    assert result.failure == {"x": [1.0], "r": 0.5}


class TestTwoPointProblem:
    def test_truth(self):
        problem = TwoPointProblem(dimension=2)
        x = np.array([2.0, -1.0])
        np.testing.assert_array_equal(problem.true_gradient(x), [3.0, 0.0])
        assert problem.true_value(x) == 6.0

    def test_balanced_samples_are_exact(self):
        problem = TwoPointProblem()
        samples = np.array([-1.0, 1.0])
        gradients = problem.sample_gradients(np.zeros(1), samples)
        assert gradients.mean() == pytest.approx(3.0)
        assert np.var(gradients[:, 0]) == pytest.approx(2.0)
        assert sampled_reduction(
            problem, np.array([1.0]), np.array([0.5]), samples
        ) == pytest.approx(problem.true_reduction(np.array([1.0]), np.array([0.5])))


class TestEnumeratedProjection:
    def test_simplex_corner(self):
        y = enumerate_box_budget_projection(
            np.array([5.0, 0.0]), np.ones(2), 1.0, np.zeros(2), np.ones(2)
        )
        np.testing.assert_allclose(y, [1.0, 0.0])

    def test_interior(self):
        y = enumerate_box_budget_projection(
            np.array([0.6, 0.2]), np.ones(2), 1.0, np.zeros(2), np.ones(2)
        )
        np.testing.assert_allclose(y, [0.7, 0.3])

    def test_empty_set(self):
        with pytest.raises(ValueError):
            enumerate_box_budget_projection(
                np.zeros(2), np.ones(2), 5.0, np.zeros(2), np.ones(2)
            )
