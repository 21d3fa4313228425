# Copyright (c) 2025 ProxSTORM


from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator

from src.problems.base import StochasticProblem, check_finite_rows, sample_mean
from src.utils.errors import ParameterError
from src.utils.logger import get_logger
from src.utils.rng import Stream, derive_seed, stream_rng

logger = get_logger("models")

DEFAULT_KAPPA_BMH = 1e6
POWER_ITERATIONS = 30
NORM_INFLATION = 1.05
# Eigen-residual below which the power iterate is taken as exact and not inflated.
CONVERGED_RESIDUAL = 1e-10


@dataclass(frozen=True, eq=False)
class QuadraticModel:
    """
    Sample-average quadratic model m_k(x_k + s) = gᵀs + ½ sᵀQ_k s.

    The samples that built the model are kept so that the computed reduction
    can reuse them.
    """

    anchor: np.ndarray
    g: np.ndarray
    curvature_op: LinearOperator
    b: float
    n_samples: int
    sample_seed: int
    samples: np.ndarray
    b_unclipped: float = 0.0

    @property
    def dimension(self) -> int:
        return self.g.size

    def apply_curvature(self, v: np.ndarray) -> np.ndarray:
        return self.curvature_op.matvec(v)

    def gradient_at(self, s: np.ndarray) -> np.ndarray:
        """∇m_k(x_k + s) = g + Q_k s."""
        return self.g + self.apply_curvature(s)


def model_value(model: QuadraticModel, s: np.ndarray) -> float:
    """gᵀs + ½ sᵀQ_k s, normalized so that model_value(0) = 0."""
    s = np.asarray(s, dtype=float)
    return float(model.g @ s + 0.5 * s @ model.apply_curvature(s))


def curvature_bound(
    model: QuadraticModel, delta: float, iterations: int = POWER_ITERATIONS
) -> float:
    """
    Estimate of sup_{‖s‖≤δ} 2|m(x+s) − m(x) − gᵀs| / ‖s‖², i.e. ‖Q_k‖₂.

    Power iteration from a seeded random start; the estimate is inflated by
    NORM_INFLATION unless the final iterate is an eigenvector to within
    CONVERGED_RESIDUAL.
    """
    if not delta > 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    rng = stream_rng(model.sample_seed, Stream.POWER_ITERATION)
    v = rng.standard_normal(model.dimension)
    v /= np.linalg.norm(v)
    for _ in range(iterations):
        w = model.apply_curvature(v)
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return 0.0
        v = w / norm_w
    w = model.apply_curvature(v)
    estimate = float(np.linalg.norm(w))
    if estimate == 0.0:
        return 0.0
    rayleigh = float(v @ w)
    if np.linalg.norm(w - rayleigh * v) <= CONVERGED_RESIDUAL * estimate:
        return estimate
    return NORM_INFLATION * estimate


def build_model(
    problem: StochasticProblem,
    x: np.ndarray,
    n: int,
    seed: int,
    k: int = 0,
    samples: Optional[np.ndarray] = None,
    kappa_bmh: float = DEFAULT_KAPPA_BMH,
    delta: float = 1.0,
) -> QuadraticModel:
    """
    Build M_k from n i.i.d. samples drawn from the (seed, k) model stream, or
    from `samples` when the caller already holds them.
    """
    x = np.asarray(x, dtype=float)
    if samples is None:
        if n < 1:
            raise ParameterError(f"model needs at least one sample, got n={n}")
        samples = problem.draw_samples(stream_rng(seed, Stream.MODEL, k), n)
    n = int(samples.shape[0])

    gradients = problem.sample_gradients(x, samples)
    check_finite_rows(gradients, "gradient")
    g = sample_mean(gradients)

    products = problem.sample_hessian_products(x, samples)

    def matvec(v: np.ndarray) -> np.ndarray:
        return sample_mean(products(np.ravel(v)))

    d = problem.dimension
    operator = LinearOperator((d, d), matvec=matvec, rmatvec=matvec, dtype=float)
    model = QuadraticModel(
        anchor=x.copy(),
        g=g,
        curvature_op=operator,
        b=0.0,
        n_samples=n,
        sample_seed=derive_seed(seed, Stream.MODEL, k),
        samples=samples,
    )
    estimate = curvature_bound(model, delta)
    b = min(estimate, kappa_bmh - 1.0)
    if b < estimate:
        logger.debug("Curvature bound clipped", estimate=estimate, b=b, k=k)
    return replace(model, b=b, b_unclipped=estimate)


def model_from_matrix(
    g: np.ndarray,
    q: np.ndarray,
    anchor: Optional[np.ndarray] = None,
    seed: int = 0,
    kappa_bmh: float = DEFAULT_KAPPA_BMH,
) -> QuadraticModel:
    """A model with explicit gradient and dense symmetric curvature."""
    g = np.asarray(g, dtype=float)
    q = np.asarray(q, dtype=float)
    d = g.size
    operator = LinearOperator((d, d), matvec=lambda v: q @ np.ravel(v), dtype=float)
    model = QuadraticModel(
        anchor=np.zeros(d) if anchor is None else np.asarray(anchor, dtype=float),
        g=g,
        curvature_op=operator,
        b=0.0,
        n_samples=1,
        sample_seed=seed,
        samples=np.zeros((0, d)),
    )
    estimate = curvature_bound(model, 1.0)
    return replace(model, b=min(estimate, kappa_bmh - 1.0), b_unclipped=estimate)
