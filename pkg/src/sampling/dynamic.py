# Copyright (c) 2025 ProxSTORM


import math
from dataclasses import dataclass, field, replace

import numpy as np

from src.problems.base import StochasticProblem, check_finite_rows
from src.utils.errors import ParameterError
from src.utils.logger import get_logger
from src.utils.rng import Stream, stream_rng

logger = get_logger("sampling")

DEFAULT_N_MAX = 100_000


@dataclass(frozen=True, eq=False)
class SamplingState:
    """Sample count and samples held by the dynamic sampling routine."""

    n: int
    n_max: int
    alpha: float
    kappa_grad: float
    drawn_samples: np.ndarray
    cap_hit: bool = False
    variance: float = 0.0
    rounds: int = 0
    history: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1 or self.n > self.n_max:
            raise ParameterError(f"need 1 <= n <= n_max, got n={self.n}, n_max={self.n_max}")
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.kappa_grad > 0.0:
            raise ParameterError(f"kappa_grad must be positive, got {self.kappa_grad}")
        if self.drawn_samples.shape[0] != self.n:
            raise ParameterError(
                f"state holds {self.drawn_samples.shape[0]} samples but n={self.n}"
            )


def initial_state(
    problem: StochasticProblem,
    n: int,
    seed: int,
    k: int = 0,
    n_max: int = DEFAULT_N_MAX,
    alpha: float = 0.9,
    kappa_grad: float = 1.0,
) -> SamplingState:
    """State holding n fresh samples from the (seed, k) model stream."""
    samples = problem.draw_samples(stream_rng(seed, Stream.MODEL, k), min(n, n_max))
    return SamplingState(
        n=samples.shape[0],
        n_max=n_max,
        alpha=alpha,
        kappa_grad=kappa_grad,
        drawn_samples=samples,
        history=(samples.shape[0],),
    )


def empirical_gradient_variance(grad_samples: np.ndarray) -> float:
    """
    Unbiased sample variance of the gradient norms ‖∇F(x, ξ_ℓ)‖.

    This is the variance of the norms, not of the gradient components.
    """
    grad_samples = np.asarray(grad_samples, dtype=float)
    if grad_samples.ndim != 2 or grad_samples.shape[0] < 2:
        raise ParameterError("variance estimate needs at least two gradient samples")
    norms = np.linalg.norm(grad_samples, axis=1)
    return float(np.var(norms, ddof=1))


def required_samples(
    variance: float, alpha: float, kappa_grad: float, delta: float
) -> float:
    """V̂ / ((1 − α)(κ_grad·δ)²) as a float (may be inf)."""
    with np.errstate(over="ignore", divide="ignore"):
        return float(variance / ((1.0 - alpha) * (kappa_grad * delta) ** 2))


def dynamic_sample_size(
    problem: StochasticProblem,
    x: np.ndarray,
    delta: float,
    state: SamplingState,
    seed: int,
    k: int = 0,
) -> SamplingState:
    """
    Grow the sample until n ≥ V̂ / ((1 − α)(κ_grad·δ)²) or n reaches n_max.
    """
    if not delta > 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    if state.n < 2:
        raise ParameterError("dynamic sampling needs at least two samples")
    rng = stream_rng(seed, Stream.DYNAMIC, k)
    samples = state.drawn_samples
    gradients = problem.sample_gradients(x, samples)
    check_finite_rows(gradients, "gradient")
    n = state.n
    history = list(state.history) or [n]
    cap_hit = False
    rounds = 0
    while True:
        variance = empirical_gradient_variance(gradients)
        target = required_samples(variance, state.alpha, state.kappa_grad, delta)
        shortfall = (
            math.ceil(target) - n if target <= state.n_max else state.n_max + 1 - n
        )
        if shortfall <= 0:
            break
        if n >= state.n_max:
            cap_hit = True
            logger.info(
                "Dynamic sampling cap reached",
                n_max=state.n_max,
                required=target,
                delta=delta,
                k=k,
            )
            break
        draw = min(shortfall, state.n_max - n)
        fresh = problem.draw_samples(rng, draw)
        fresh_gradients = problem.sample_gradients(x, fresh)
        check_finite_rows(fresh_gradients, "gradient")
        samples = np.concatenate([samples, fresh], axis=0)
        gradients = np.concatenate([gradients, fresh_gradients], axis=0)
        n += draw
        rounds += 1
        history.append(n)
    return replace(
        state,
        n=n,
        drawn_samples=samples,
        cap_hit=cap_hit,
        variance=variance,
        rounds=rounds,
        history=tuple(history),
    )
