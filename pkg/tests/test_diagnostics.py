# Copyright (c) 2025 ProxSTORM


from types import SimpleNamespace

import numpy as np
import pytest

from src.config import TrustRegionConfig
from src.diagnostics import (
    SummabilityAccumulator,
    assumption_rates,
    event_indicators,
    lyapunov,
    lyapunov_increment,
    lyapunov_violations,
    summability_report,
    theory_constants,
)
from src.driver import run
from src.problems import SmoothQuadratic
from src.utils.errors import DiagnosticError, ParameterError

# P(ξ > 0.8416) = 0.2 for a standard normal ξ
CORRUPTION_QUANTILE = 0.8416212335729143


class _CorruptedQuadratic(SmoothQuadratic):
    """Exact gradients, except that one model in five is shifted far away."""

    def __init__(self, base: SmoothQuadratic):
        super().__init__(base.hessian, base.linear, 0.0)

    def sample_gradients(self, x, samples):
        rows = super().sample_gradients(x, samples)
        if samples[0, 0] > CORRUPTION_QUANTILE:
            rows = rows + 1e3
        return rows


def _row(k, delta, h=None, accepted=False, ared=None, i_k=None, j_k=None):
    return SimpleNamespace(
        k=k, delta=delta, h_true_norm=h, accepted=accepted, ared=ared, I_k=i_k, J_k=j_k
    )


class TestLyapunov:
    def test_value(self):
        assert lyapunov(1.0, 2.0, 0.5) == pytest.approx(2.5)

    def test_increment(self):
        assert lyapunov_increment(-1.0, 1.0, 2.0, 0.5) == pytest.approx(1.0)

    @pytest.mark.parametrize("nu", [0.0, 1.0, -0.5])
    def test_rejects_weight(self, nu):
        with pytest.raises(ParameterError):
            lyapunov(1.0, 1.0, nu)

    def test_violations(self):
        rows = [
            _row(0, 1.0, accepted=True, ared=10.0),
            _row(1, 2.0, accepted=True, ared=1e-9),
            _row(2, 1.0),
        ]
        assert lyapunov_violations(rows, [2.0, 1.0, 0.5], nu=0.5, theta=0.1) == []
        assert lyapunov_violations(rows, [2.0, 4.0, 0.5], nu=0.5, theta=0.1) == [1]

    def test_violations_need_ared(self):
        with pytest.raises(ParameterError):
            lyapunov_violations([_row(0, 1.0, accepted=True)], [2.0], 0.5, 0.1)

    def test_pointwise_decrease_on_exact_run(
        self, deterministic_quadratic, deterministic_config
    ):
        trace = run(deterministic_quadratic, deterministic_config)
        constants = theory_constants(
            deterministic_config, deterministic_quadratic.lipschitz_L, deterministic=True
        )
        assert constants.nu_admissible
        violations = lyapunov_violations(
            trace.records,
            trace.next_deltas(),
            deterministic_config.nu,
            constants.theta_lower,
        )
        assert violations == []


class TestTheoryConstants:
    def test_kappa_val_and_zeta(self):
        config = TrustRegionConfig(kappa_bmh=2.0)
        constants = theory_constants(config, L=0.0)
        assert constants.kappa_val == pytest.approx(1.0)
        # 1 + 4·1 / ((1 − 0.5 − 0.1)·0.05)
        assert constants.zeta == pytest.approx(201.0)
        assert constants.theta_lower == pytest.approx(
            0.5 * (1 - config.nu) * (1 - 5.0**-2)
        )

    def test_deterministic(self):
        config = TrustRegionConfig()
        constants = theory_constants(config, L=3.0, deterministic=True)
        assert constants.kappa_val == 0.0
        assert constants.zeta == pytest.approx(1.0 + config.eta2)

    def test_unknown_lipschitz(self):
        with pytest.raises(ParameterError):
            theory_constants(TrustRegionConfig(), L=None)

    def test_ledger(self):
        constants = theory_constants(TrustRegionConfig(), L=2.0, deterministic=True)
        nonsmooth = constants.ledger(0.9, smooth=False)
        assert nonsmooth["c1"] is None and nonsmooth["c2"] is None
        smooth = constants.ledger(0.9, smooth=True)
        assert smooth["c1"] == pytest.approx(0.1)
        assert smooth["c2"] == pytest.approx(0.1)
        assert smooth["c6"] > 0.0

    def test_rates_feasible(self):
        constants = theory_constants(TrustRegionConfig(), L=2.0, deterministic=True)
        assert constants.rates_feasible(1.0, 0.6, smooth=True) is True
        assert constants.rates_feasible(1.0, 0.4, smooth=True) is False
        assert constants.rates_feasible(1.0, 0.6, smooth=False) is None

    def test_auto_nu_is_admissible(self):
        constants = theory_constants(TrustRegionConfig(), L=1.0)
        assert constants.nu_admissible
        assert constants.to_dict()["nu_admissible"]


class TestEvents:
    def test_model_event(self):
        i_k, _ = event_indicators(
            np.zeros(2), np.array([0.3, 0.4]), 0.51, 1.0, None, None, None, 0.1
        )
        assert i_k
        i_k, _ = event_indicators(
            np.zeros(2), np.array([0.3, 0.4]), 0.49, 1.0, None, None, None, 0.1
        )
        assert not i_k

    def test_reduction_event(self):
        g = np.zeros(2)
        assert event_indicators(g, g, 1.0, 1.0, 1.0, 1.05, 1.0, 0.1)[1]
        assert not event_indicators(g, g, 1.0, 1.0, 1.0, 1.2, 1.0, 0.1)[1]

    def test_reduction_event_without_step(self):
        g = np.zeros(2)
        assert event_indicators(g, g, 1.0, 1.0, None, None, None, 0.1)[1]
        assert event_indicators(g, g, 1.0, 1.0, 5.0, 0.0, 0.0, 0.1)[1]


class TestAssumptionRates:
    def test_exact_run(self, deterministic_quadratic, deterministic_config):
        trace = run(deterministic_quadratic, deterministic_config)
        rates = assumption_rates(trace.records)
        assert (rates.alpha_hat, rates.beta_hat) == (1.0, 1.0)
        assert rates.product_above_half
        assert rates.n_rows == len(trace)

    def test_corrupted_models(self, deterministic_quadratic):
        problem = _CorruptedQuadratic(deterministic_quadratic)
        config = TrustRegionConfig(
            eta2=1.0, gamma=2.0, kappa_bmh=100.0, max_iters=1000, n_samples_model=4
        )
        rates = assumption_rates(run(problem, config).records)
        assert rates.alpha_hat == pytest.approx(0.8, abs=0.04)

    def test_empty_trace(self):
        with pytest.raises(DiagnosticError):
            assumption_rates([])

    def test_trace_without_truth(self):
        with pytest.raises(DiagnosticError):
            assumption_rates([_row(0, 1.0)])

    def test_feasibility_needs_constants(self):
        rows = [_row(k, 1.0, i_k=True, j_k=k % 4 != 0) for k in range(8)]
        rates = assumption_rates(rows)
        assert rates.beta_hat == pytest.approx(0.75)
        assert rates.rates_feasible is None
        constants = theory_constants(TrustRegionConfig(), L=1.0, deterministic=True)
        assert assumption_rates(rows, constants, smooth=True).rates_feasible is True


class TestSummability:
    def test_example(self):
        rows = [_row(0, 1.0, 1.0), _row(1, 0.5, 0.2), _row(2, 0.25, 0.05)]
        report = summability_report(rows, eps=0.1)
        assert report.sum_delta_sq == pytest.approx(1.3125)
        assert report.sum_indicator_delta == pytest.approx(1.5)
        assert report.t_eps == 2

    def test_rows_without_truth(self):
        report = summability_report([_row(0, 2.0), _row(1, 1.0)], eps=0.1)
        assert report.sum_delta_sq == pytest.approx(5.0)
        assert report.sum_indicator_delta == 0.0
        assert report.t_eps is None

    def test_streaming_matches_two_pass(self, small_logistic):
        trace = run(small_logistic, TrustRegionConfig(max_iters=40, n_samples_model=20))
        report = summability_report(trace.records, eps=1e-3)
        assert trace.delta_sq_partial_sums[-1] == report.sum_delta_sq
        accumulator = SummabilityAccumulator(1e-3)
        for record in trace:
            accumulator.update(record.k, record.delta, record.h_true_norm)
        assert accumulator.report() == report
        assert np.all(np.diff(trace.delta_sq_partial_sums) > 0)
