# Copyright (c) 2025 ProxSTORM


import numpy as np
import pytest

from src.models import model_from_matrix, model_value
from src.prox import L1, BoxBudgetIndicator, BoxIndicator, Zero, prox_gradient
from src.subproblem import (
    KAPPA_DEC,
    TrialStep,
    cauchy_search,
    composite_model_value,
    compute_trial_step,
    fcd_scale,
    predicted_reduction,
    refine_spg,
)
from src.utils.errors import (
    CauchyFailureError,
    FcdViolationError,
    InternalError,
    ParameterError,
)


def _spd(rng, d, low=1.0, high=1.25):
    q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    a = (q * np.linspace(low, high, d)) @ q.T
    return 0.5 * (a + a.T)


def _acceptable(model, phi, x, delta, r):
    s = phi.prox(x - r * model.g, r) - x
    if np.linalg.norm(s) > delta:
        return False
    return predicted_reduction(model, phi, x, s) >= (KAPPA_DEC / r) * (s @ s)


class TestCauchySearch:
    def test_linear_model_expands_to_ball(self):
        model = model_from_matrix(np.array([1.0, -2.0]), np.zeros((2, 2)))
        r, s = cauchy_search(model, Zero(2), np.zeros(2), 1.0, 0.1)
        assert r == pytest.approx(0.4)
        assert np.linalg.norm(s) <= 1.0
        assert predicted_reduction(model, Zero(2), np.zeros(2), s) >= (KAPPA_DEC / r) * (s @ s)

    def test_one_dimensional_quadratic_matches_scan(self):
        # m(s) = −s + s²
        model = model_from_matrix(np.array([-1.0]), np.array([[2.0]]))
        x = np.zeros(1)
        r, s = cauchy_search(model, Zero(1), x, 10.0, 1.0)
        scan = [2.0**j for j in range(-20, 21) if _acceptable(model, Zero(1), x, 10.0, 2.0**j)]
        assert r == max(scan)
        np.testing.assert_allclose(s, [r])

    def test_exhausted_halvings(self):
        model = model_from_matrix(np.ones(2), 1e30 * np.eye(2))
        with pytest.raises(CauchyFailureError) as info:
            cauchy_search(model, Zero(2), np.zeros(2), 1.0, 1.0)
        assert info.value.last_r == pytest.approx(2.0**-60)

    def test_rejects_nonpositive_radius(self):
        model = model_from_matrix(np.ones(2), np.eye(2))
        with pytest.raises(ParameterError):
            cauchy_search(model, Zero(2), np.zeros(2), 0.0, 1.0)

    def test_l1_step_stays_in_ball(self, rng):
        phi = L1(5, 0.1)
        for _ in range(50):
            model = model_from_matrix(rng.standard_normal(5), _spd(rng, 5, 0.5, 5.0))
            x = rng.standard_normal(5)
            delta = float(rng.uniform(0.05, 2.0))
            r, s = cauchy_search(model, phi, x, delta, 1.0)
            assert np.linalg.norm(s) <= delta
            assert predicted_reduction(model, phi, x, s) >= (KAPPA_DEC / r) * (s @ s)


class TestRefineSpg:
    def test_no_iterations_returns_cauchy_step(self):
        model = model_from_matrix(np.array([1.0, 0.5]), np.eye(2))
        s_c = np.array([-0.1, -0.05])
        np.testing.assert_array_equal(refine_spg(model, Zero(2), np.zeros(2), s_c, 1.0, 0), s_c)

    def test_converges_to_interior_minimizer(self, rng):
        for d in (2, 5, 10):
            q = _spd(rng, d)
            g = rng.standard_normal(d)
            model = model_from_matrix(g, q)
            x = np.zeros(d)
            _, s_c = cauchy_search(model, Zero(d), x, 10.0, 1.0)
            s = refine_spg(model, Zero(d), x, s_c, 10.0, 50)
            np.testing.assert_allclose(s, -np.linalg.solve(q, g), atol=1e-6)

    def test_ball_active_case(self):
        model = model_from_matrix(np.array([-10.0, 0.0]), np.eye(2))
        x = np.zeros(2)
        _, s_c = cauchy_search(model, Zero(2), x, 1.0, 1.0)
        s = refine_spg(model, Zero(2), x, s_c, 1.0, 10)
        assert np.linalg.norm(s) <= 1.0 + 1e-12
        assert model_value(model, s) <= model_value(model, s_c)
        a, b = np.meshgrid(np.linspace(-1.0, 1.0, 401), np.linspace(-1.0, 1.0, 401))
        inside = a**2 + b**2 <= 1.0
        # m(s) = −10·s₁ + ½‖s‖² on the grid
        best = float(np.min((-10.0 * a + 0.5 * (a**2 + b**2))[inside]))
        assert model_value(model, s) <= best + 1e-9

    def test_monotone_and_feasible(self, rng):
        phi = BoxIndicator(4, -np.ones(4), np.ones(4))
        for _ in range(50):
            model = model_from_matrix(rng.standard_normal(4), _spd(rng, 4, 0.1, 10.0))
            x = rng.uniform(-1.0, 1.0, 4)
            delta = float(rng.uniform(0.1, 1.5))
            _, s_c = cauchy_search(model, phi, x, delta, 1.0)
            s = refine_spg(model, phi, x, s_c, delta, 15)
            assert np.linalg.norm(s) <= delta * (1 + 1e-12)
            assert phi.in_domain(x + s)
            assert composite_model_value(model, phi, x, s) <= composite_model_value(
                model, phi, x, s_c
            )


class TestPredictedReduction:
    def test_zero_step(self):
        model = model_from_matrix(np.array([1.0, 2.0]), np.eye(2))
        assert predicted_reduction(model, L1(2, 1.0), np.array([1.0, 1.0]), np.zeros(2)) == 0.0

    def test_linear_model(self):
        model = model_from_matrix(np.array([1.0, 0.0]), np.zeros((2, 2)))
        assert predicted_reduction(model, Zero(2), np.zeros(2), np.array([-1.0, 0.0])) == 1.0

    def test_l1_term(self):
        model = model_from_matrix(np.array([1.0, 0.0]), np.zeros((2, 2)))
        pred = predicted_reduction(model, L1(2, 1.0), np.array([2.0, 0.0]), np.array([-1.0, 0.0]))
        assert pred == pytest.approx(1.0 + (2.0 - 1.0))

    def test_short_step_far_from_origin(self):
        model = model_from_matrix(np.zeros(2), np.zeros((2, 2)))
        x = np.array([1e6, 1e-3])
        pred = predicted_reduction(model, L1(2, 1.0), x, np.array([0.0, -1e-12]))
        assert pred == pytest.approx(1e-12, rel=1e-6)

    def test_outside_domain(self):
        model = model_from_matrix(np.ones(2), np.eye(2))
        phi = BoxIndicator(2, np.zeros(2), np.ones(2))
        assert predicted_reduction(model, phi, np.full(2, 0.5), np.array([1.0, 0.0])) == -np.inf


class TestTrialStep:
    def test_rejects_step_outside_ball(self):
        with pytest.raises(InternalError):
            TrialStep(
                s=np.array([2.0, 0.0]),
                pred=10.0,
                h_model_norm=1.0,
                cauchy_r=1.0,
                refine_iters=0,
                b=0.0,
                delta=1.0,
            )

    def test_rejects_insufficient_decrease(self):
        with pytest.raises(FcdViolationError) as info:
            TrialStep(
                s=np.array([0.5, 0.0]),
                pred=1e-4,
                h_model_norm=1.0,
                cauchy_r=1.0,
                refine_iters=0,
                b=0.0,
                delta=1.0,
            )
        assert info.value.required == pytest.approx(0.05)

    def test_fcd_ratio(self):
        step = TrialStep(
            s=np.array([0.5, 0.0]),
            pred=0.3,
            h_model_norm=2.0,
            cauchy_r=1.0,
            refine_iters=0,
            b=1.0,
            delta=0.5,
        )
        assert fcd_scale(2.0, 1.0, 0.5) == 1.0
        assert step.fcd_ratio == pytest.approx(0.3)

    @pytest.mark.parametrize("spg_max_iters", [0, 2, 15])
    def test_random_models_satisfy_fcd(self, rng, spg_max_iters):
        d = 4
        weights = np.array([0.5, 1.0, 1.5, 2.0])
        families = [
            Zero(d),
            L1(d, 0.3),
            BoxIndicator(d, -np.ones(d), np.ones(d)),
            BoxBudgetIndicator(d, np.zeros(d), np.ones(d), weights, 0.5 * weights.sum()),
        ]
        for phi in families:
            for _ in range(25):
                q = rng.standard_normal((d, d))
                model = model_from_matrix(rng.standard_normal(d), q @ q.T)
                x = phi.prox(rng.uniform(-1.0, 1.0, d), 1.0)
                h = float(np.linalg.norm(prox_gradient(x, model.g, 1.0, phi)))
                if h == 0.0:
                    continue
                delta = float(rng.uniform(0.01, 2.0))
                step = compute_trial_step(
                    model, phi, x, delta, h, 1.0 / (1.0 + model.b), spg_max_iters=spg_max_iters
                )
                assert np.linalg.norm(step.s) <= delta * (1 + 1e-12)
                assert phi.in_domain(x + step.s)
                assert step.fcd_ratio >= 0.05
                assert step.refine_iters <= spg_max_iters
