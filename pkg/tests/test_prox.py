# Copyright (c) 2025 ProxSTORM


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.problems import smooth_quadratic
from src.prox import (
    L1,
    BoxBudgetIndicator,
    BoxIndicator,
    ProxKind,
    Zero,
    project_box_budget,
    prox,
    prox_gradient,
)
from src.utils.errors import DomainError, ParameterError
from src.verify import enumerate_box_budget_projection

finite = st.floats(-50.0, 50.0, allow_nan=False, allow_infinity=False)
vectors = arrays(np.float64, 4, elements=finite)
steps = st.floats(1e-3, 10.0)


def _families(d=4):
    weights = np.array([0.5, 1.0, 1.5, 2.0])[:d]
    return [
        Zero(d),
        L1(d, 0.7),
        BoxIndicator(d, -np.ones(d), 2.0 * np.ones(d)),
        BoxBudgetIndicator(d, np.zeros(d), np.ones(d), weights, 0.4 * weights.sum()),
    ]


class TestProx:
    def test_zero_is_identity(self):
        x = np.array([1.5, -2.0])
        np.testing.assert_array_equal(prox(Zero(2), x, 0.3), x)

    def test_l1_soft_thresholds(self):
        np.testing.assert_array_equal(
            prox(L1(3, 1.0), np.array([3.0, -1.0, 0.2]), 1.0), [2.0, 0.0, 0.0]
        )

    def test_l1_matches_grid_minimization(self):
        grid = np.arange(-5.0, 5.0 + 1e-9, 1e-4)
        for xi, expected in zip([3.0, -1.0, 0.2], prox(L1(3, 1.0), np.array([3.0, -1.0, 0.2]), 1.0)):
            objective = np.abs(grid) + 0.5 * (grid - xi) ** 2
            assert abs(grid[np.argmin(objective)] - expected) <= 1e-4

    def test_l1_tie_maps_to_zero(self):
        assert prox(L1(1, 2.0), np.array([1.0]), 0.5)[0] == 0.0

    def test_l1_decrement_keeps_short_steps(self):
        x = np.array([1e6, 1e-3])
        s = np.array([0.0, -1e-12])
        phi = L1(2, 0.5)
        assert phi.decrement(x, s) == pytest.approx(0.5e-12, rel=1e-6)

    def test_decrement_outside_domain(self):
        phi = BoxIndicator(2, np.zeros(2), np.ones(2))
        assert phi.decrement(np.full(2, 0.5), np.array([1.0, 0.0])) == -np.inf
        assert phi.decrement(np.full(2, 0.5), np.array([0.1, 0.0])) == 0.0

    def test_box_clamps(self):
        phi = BoxIndicator(3, np.zeros(3), np.ones(3))
        np.testing.assert_array_equal(prox(phi, np.array([2.0, -1.0, 0.5]), 7.0), [1.0, 0.0, 0.5])

    @pytest.mark.parametrize("r", [0.0, -1.0, np.inf, np.nan])
    def test_rejects_bad_step(self, r):
        with pytest.raises(ParameterError):
            prox(L1(2, 1.0), np.zeros(2), r)

    def test_rejects_non_finite_input(self):
        with pytest.raises(ParameterError):
            prox(Zero(2), np.array([np.nan, 0.0]), 1.0)

    def test_infeasible_budget_rejected_at_construction(self):
        with pytest.raises(DomainError):
            BoxBudgetIndicator(2, np.zeros(2), np.ones(2), np.ones(2), 3.0)

    def test_kinds(self):
        assert [phi.kind for phi in _families()] == [
            ProxKind.ZERO,
            ProxKind.L1,
            ProxKind.BOX,
            ProxKind.BOX_BUDGET,
        ]


class TestProxGradient:
    def test_zero_phi_returns_gradient(self):
        # dyadic inputs make every operation exact
        g = np.array([0.25, 2.0])
        h = prox_gradient(np.array([0.5, -1.25]), g, 0.5, Zero(2))
        np.testing.assert_array_equal(h, g)

    def test_l1_small_gradient_is_stationary(self):
        h = prox_gradient(np.zeros(2), np.array([0.3, -0.9]), 0.5, L1(2, 1.0))
        np.testing.assert_array_equal(h, [0.0, 0.0])

    def test_l1_step(self):
        h = prox_gradient(np.array([2.0, 0.0]), np.array([0.5, 0.0]), 1.0, L1(2, 1.0))
        np.testing.assert_allclose(h, [1.5, 0.0])

    def test_rejects_nonpositive_r(self):
        with pytest.raises(ParameterError):
            prox_gradient(np.zeros(2), np.ones(2), 0.0, Zero(2))

    def test_vanishes_at_minimizer(self):
        problem = smooth_quadratic(4, seed=2)
        x_star = problem.minimizer()
        h = prox_gradient(x_star, problem.true_gradient(x_star), 1.0, problem.phi)
        assert np.linalg.norm(h) <= 1e-10

    def test_lipschitz_bound(self, rng):
        problem = smooth_quadratic(4, seed=5)
        phi = L1(4, 0.2)
        L = problem.lipschitz_L
        for r in (0.1, 1.0, 3.0):
            for _ in range(100):
                x, y = rng.standard_normal((2, 4))
                hx = prox_gradient(x, problem.true_gradient(x), r, phi)
                hy = prox_gradient(y, problem.true_gradient(y), r, phi)
                assert np.linalg.norm(hy - hx) <= (2.0 / r + L) * np.linalg.norm(y - x) + 1e-12


class TestProjectBoxBudget:
    def test_feasible_point_is_fixed(self):
        x = np.array([0.2, 0.5, 0.3])
        np.testing.assert_allclose(
            project_box_budget(x, np.ones(3), 1.0, np.zeros(3), np.ones(3)), x, atol=1e-14
        )

    def test_one_dimensional_budget_forces_value(self):
        y = project_box_budget(np.array([0.9]), np.array([1.0]), 0.3, np.zeros(1), np.ones(1))
        np.testing.assert_allclose(y, [0.3], atol=1e-12)

    def test_matches_enumeration(self):
        x = np.array([0.8, 0.6, 0.1])
        args = (np.ones(3), 1.0, np.zeros(3), np.ones(3))
        np.testing.assert_allclose(
            project_box_budget(x, *args), enumerate_box_budget_projection(x, *args), atol=1e-10
        )

    def test_random_instances_match_enumeration(self, rng):
        for _ in range(200):
            d = int(rng.integers(1, 5))
            lo = rng.uniform(-1.0, 0.0, d)
            hi = lo + rng.uniform(0.1, 2.0, d)
            w = rng.uniform(0.2, 2.0, d)
            c = float(w @ lo + rng.uniform() * (w @ hi - w @ lo))
            x = 2.0 * rng.standard_normal(d)
            expected = enumerate_box_budget_projection(x, w, c, lo, hi)
            assert np.max(np.abs(project_box_budget(x, w, c, lo, hi) - expected)) <= 1e-8

    def test_budget_residual_tolerance(self, rng):
        w = rng.uniform(0.5, 2.0, 6)
        c = 0.3 * w.sum()
        y = project_box_budget(5 * rng.standard_normal(6), w, c, np.zeros(6), np.ones(6))
        assert abs(w @ y - c) <= 1e-12 * max(1.0, c)

    def test_infeasible_budget(self):
        with pytest.raises(DomainError):
            project_box_budget(np.zeros(2), np.ones(2), -1.0, np.zeros(2), np.ones(2))

    def test_nonpositive_weights(self):
        with pytest.raises(ParameterError):
            project_box_budget(np.zeros(2), np.array([1.0, 0.0]), 0.5, np.zeros(2), np.ones(2))


@settings(max_examples=250, deadline=None)
@given(x=vectors, y=vectors, r=steps)
def test_nonexpansive(x, y, r):
    for phi in _families():
        gap = np.linalg.norm(prox(phi, y, r) - prox(phi, x, r))
        assert gap <= np.linalg.norm(y - x) + 1e-12


@settings(max_examples=100, deadline=None)
@given(x=vectors, r=steps)
def test_prox_lands_in_domain(x, r):
    for phi in _families():
        assert phi.in_domain(prox(phi, x, r))


def test_optimality_residual(rng):
    for phi in _families():
        for _ in range(200):
            x = 3.0 * rng.standard_normal(4)
            r = float(rng.uniform(0.1, 3.0))
            p = rng.standard_normal(4)
            p *= 1e-3 / np.linalg.norm(p)
            y = prox(phi, x, r)
            objective = lambda z: phi.value(z) + np.sum((z - x) ** 2) / (2 * r)  # noqa: E731
            assert objective(y) <= objective(y + p) + 1e-10


def test_value_is_convex(rng):
    for phi in _families():
        for _ in range(100):
            a = prox(phi, 3.0 * rng.standard_normal(4), 1.0)
            b = prox(phi, 3.0 * rng.standard_normal(4), 1.0)
            t = float(rng.uniform())
            mid = phi.value(t * a + (1 - t) * b)
            assert mid <= t * phi.value(a) + (1 - t) * phi.value(b) + 1e-12
