# Copyright (c) 2025 ProxSTORM


from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

import numpy as np

from src.config.configuration import SamplingMode, TrustRegionConfig
from src.driver import FailureFlag, run
from src.problems import (
    StochasticProblem,
    box_budget_quadratic,
    logistic_l1_problem,
    smooth_quadratic,
)
from src.prox import (
    L1,
    BoxBudgetIndicator,
    BoxIndicator,
    ProxFunction,
    Zero,
    project_box_budget,
    prox,
    prox_gradient,
)
from src.sampling import dynamic_sample_size, initial_state
from src.subproblem import fcd_scale
from src.utils.logger import get_logger

from .fixtures import TwoPointProblem, enumerate_box_budget_projection

logger = get_logger("verify")

NONEXPANSIVE_SLACK = 1e-12
PROJECTION_TOL = 1e-8
STORM_TOL = 1e-12
FD_RELATIVE_TOL = 1e-5
TRUTH_TOL = 1e-12


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    cases: int = 0
    failure: dict[str, Any] = field(default_factory=dict)

    def fail(self, **inputs: Any) -> "SuiteResult":
        self.passed = False
        self.failure = inputs
        return self


def prox_families(d: int, rng: np.random.Generator) -> list[ProxFunction]:
    """One instance of every nonsmooth family."""
    weights = rng.uniform(0.5, 2.0, d)
    return [
        Zero(d),
        L1(d, 0.3),
        BoxIndicator(d, -np.ones(d), np.ones(d)),
        BoxBudgetIndicator(d, np.zeros(d), np.ones(d), weights, 0.5 * float(weights.sum())),
    ]


def nonexpansivity_suite(seed: int = 0, pairs: int = 1000, d: int = 5) -> SuiteResult:
    """‖prox(y) − prox(x)‖ ≤ ‖y − x‖ on random pairs for every family."""
    result = SuiteResult("nonexpansivity")
    rng = np.random.default_rng(seed)
    for phi in prox_families(d, rng):
        for _ in range(pairs):
            x, y = 3.0 * rng.standard_normal((2, d))
            r = float(rng.uniform(0.1, 3.0))
            gap = np.linalg.norm(prox(phi, y, r) - prox(phi, x, r))
            result.cases += 1
            if gap > np.linalg.norm(y - x) + NONEXPANSIVE_SLACK:
                return result.fail(phi=phi.describe(), x=x.tolist(), y=y.tolist(), r=r)
    return result


def _short_runs(seed: int) -> list[tuple[StochasticProblem, TrustRegionConfig]]:
    return [
        (
            logistic_l1_problem(10, 200, seed=seed),
            TrustRegionConfig(max_iters=40, sampling_mode=SamplingMode.FULL_POOL, seed=seed),
        ),
        (
            logistic_l1_problem(10, 200, seed=seed),
            TrustRegionConfig(max_iters=40, n_samples_model=50, seed=seed),
        ),
        (
            box_budget_quadratic(6, seed=seed),
            TrustRegionConfig(max_iters=40, spg_max_iters=15, seed=seed),
        ),
        (
            smooth_quadratic(5, noise=0.1, seed=seed),
            TrustRegionConfig(max_iters=40, n_samples_model=20, seed=seed),
        ),
    ]


def fcd_suite(seed: int = 0) -> SuiteResult:
    """pred_k ≥ κ_fcd·‖h_k‖·min{‖h_k‖/(1+b_k), δ_k} on every computed step."""
    result = SuiteResult("fcd")
    for problem, config in _short_runs(seed):
        for record in run(problem, config):
            if record.pred is None or record.failure == FailureFlag.ZERO_PRED:
                continue
            result.cases += 1
            required = config.kappa_fcd * fcd_scale(
                record.h_model_norm, record.b_k, record.delta
            )
            if record.failure == FailureFlag.FCD or not record.pred >= required:
                return result.fail(
                    problem=problem.name,
                    seed=config.seed,
                    k=record.k,
                    pred=record.pred,
                    required=required,
                )
    return result


def projection_suite(seed: int = 0, instances: int = 200) -> SuiteResult:
    """Bisection projection against bound-status enumeration for d ≤ 4."""
    result = SuiteResult("projection")
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        d = int(rng.integers(1, 5))
        lo = rng.uniform(-1.0, 0.0, d)
        hi = lo + rng.uniform(0.1, 2.0, d)
        w = rng.uniform(0.2, 2.0, d)
        c = float(w @ lo + rng.uniform(0.0, 1.0) * (w @ hi - w @ lo))
        x = 2.0 * rng.standard_normal(d)
        expected = enumerate_box_budget_projection(x, w, c, lo, hi)
        actual = project_box_budget(x, w, c, lo, hi)
        result.cases += 1
        error = float(np.max(np.abs(actual - expected)))
        if error > PROJECTION_TOL:
            return result.fail(
                x=x.tolist(), w=w.tolist(), c=c, lo=lo.tolist(), hi=hi.tolist(), error=error
            )
    return result


def storm_reduction_suite(seed: int = 0, radii: Iterable[float] = (0.5, 1.0, 2.0)) -> SuiteResult:
    """With φ ≡ 0 the proximal gradient is the gradient, for several r."""
    result = SuiteResult("storm_reduction")
    problem = smooth_quadratic(5, noise=0.0, seed=seed)
    rng = np.random.default_rng(seed)
    for r in radii:
        for _ in range(50):
            x = rng.standard_normal(problem.dimension)
            g = problem.true_gradient(x)
            h = prox_gradient(x, g, r, problem.phi)
            scale = max(1.0, np.linalg.norm(x) / r, np.linalg.norm(g))
            result.cases += 1
            if np.linalg.norm(h - g) > STORM_TOL * scale:
                return result.fail(r=r, x=x.tolist(), error=float(np.linalg.norm(h - g)))
        config = TrustRegionConfig(
            r=r, max_iters=30, sampling_mode=SamplingMode.FULL_POOL, seed=seed
        )
        for record in run(problem, config):
            result.cases += 1
            scale = max(1.0, record.h_true_norm)
            if abs(record.h_model_norm - record.h_true_norm) > STORM_TOL * scale:
                return result.fail(
                    r=r,
                    k=record.k,
                    h_model_norm=record.h_model_norm,
                    h_true_norm=record.h_true_norm,
                )
    return result


def _finite_difference_gradient(
    problem: StochasticProblem, x: np.ndarray, sample: np.ndarray
) -> np.ndarray:
    step = 1e-6 * max(1.0, float(np.linalg.norm(x, np.inf)))
    grad = np.empty(problem.dimension)
    for i in range(problem.dimension):
        e = np.zeros(problem.dimension)
        e[i] = step
        plus = problem.sample_values(x + e, sample)[0]
        minus = problem.sample_values(x - e, sample)[0]
        grad[i] = (plus - minus) / (2.0 * step)
    return grad


def gradient_consistency_suite(seed: int = 0, points: int = 10) -> SuiteResult:
    """Per-sample gradients against central differences; truth against the pool mean."""
    result = SuiteResult("gradient_consistency")
    rng = np.random.default_rng(seed)
    problems: list[StochasticProblem] = [
        logistic_l1_problem(8, 100, seed=seed),
        box_budget_quadratic(5, seed=seed),
        smooth_quadratic(5, noise=0.1, seed=seed),
    ]
    for problem in problems:
        for _ in range(points):
            x = rng.standard_normal(problem.dimension)
            sample = problem.draw_samples(rng, 1)
            expected = _finite_difference_gradient(problem, x, sample)
            actual = problem.sample_gradients(x, sample)[0]
            result.cases += 1
            error = np.linalg.norm(actual - expected)
            if error > FD_RELATIVE_TOL * max(1.0, np.linalg.norm(actual)):
                return result.fail(
                    problem=problem.name, x=x.tolist(), sample=sample.tolist(), error=float(error)
                )
        if problem.generative:
            continue
        x = rng.standard_normal(problem.dimension)
        pool = problem.full_pool()
        mean_gradient = problem.sample_gradients(x, pool).mean(axis=0)
        result.cases += 1
        if np.max(np.abs(problem.true_gradient(x) - mean_gradient)) > TRUTH_TOL:
            return result.fail(problem=problem.name, x=x.tolist(), what="true_gradient")
    return result


def dynamic_sampling_suite(
    seed: int = 0,
    trials: int = 100,
    delta: float = 0.1,
    alpha: float = 0.9,
    kappa_grad: float = 1.0,
) -> SuiteResult:
    """Returned n satisfies n(1 − α)(κ_grad·δ)² ≥ V̂ unless the cap is flagged."""
    result = SuiteResult("dynamic_sampling")
    problem = TwoPointProblem()
    x = np.zeros(problem.dimension)
    for trial in range(trials):
        trial_seed = seed * trials + trial
        state = initial_state(problem, 10, trial_seed, alpha=alpha, kappa_grad=kappa_grad)
        state = dynamic_sample_size(problem, x, delta, state, trial_seed)
        result.cases += 1
        enough = state.n * (1.0 - alpha) * (kappa_grad * delta) ** 2 >= state.variance
        if not (enough or state.cap_hit):
            return result.fail(seed=trial_seed, n=state.n, variance=state.variance)
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "nonexpansivity": nonexpansivity_suite,
    "fcd": fcd_suite,
    "projection": projection_suite,
    "storm_reduction": storm_reduction_suite,
    "gradient_consistency": gradient_consistency_suite,
    "dynamic_sampling": dynamic_sampling_suite,
}


def run_suites(names: Optional[Iterable[str]] = None, seed: int = 0) -> list[SuiteResult]:
    results = []
    for name in names or SUITES:
        logger.info("Running verification suite", suite=name)
        result = SUITES[name](seed=seed)
        if not result.passed:
            logger.error("Verification suite failed", suite=name, **result.failure)
        results.append(result)
    return results
