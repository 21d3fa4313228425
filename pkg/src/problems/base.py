# Copyright (c) 2025 ProxSTORM


import abc
from typing import Any, Callable, Optional

import numpy as np

from src.prox import ProxFunction, prox
from src.utils.errors import ParameterError, SampleError

HessianProducts = Callable[[np.ndarray], np.ndarray]


def sample_mean(rows: np.ndarray) -> np.ndarray | float:
    """
    Mean over the leading (sample) axis, summed pairwise in index order.

    Every estimator in the package goes through this function so that a
    full-pool model and the full-pool truth are bitwise equal.
    """
    rows = np.asarray(rows, dtype=float)
    n = rows.shape[0]
    if rows.ndim == 1:
        return float(rows.sum() / n)
    return np.ascontiguousarray(rows.T).sum(axis=-1) / n


def check_finite_rows(rows: np.ndarray, what: str) -> None:
    """Raise SampleError naming the first sample whose output is not finite."""
    rows = np.asarray(rows)
    bad = ~np.all(np.isfinite(rows.reshape(rows.shape[0], -1)), axis=1)
    if np.any(bad):
        raise SampleError(f"non-finite sampled {what}", int(np.argmax(bad)))


class StochasticProblem(abc.ABC):
    """
    Sampling oracle for F(·, ξ) together with the nonsmooth term φ.

    Samples are opaque arrays whose leading axis indexes samples: pool
    indices for finite pools, realizations of ξ for generative problems.
    """

    name: str = "problem"

    def __init__(
        self,
        dimension: int,
        phi: ProxFunction,
        pool_size: Optional[int] = None,
        lipschitz_L: Optional[float] = None,
        metadata: Optional[dict[str, Any]] = None,
    ):
        if phi.dimension != dimension:
            raise ParameterError(
                f"phi dimension {phi.dimension} does not match problem dimension {dimension}"
            )
        self.dimension = dimension
        self.phi = phi
        self.pool_size = pool_size
        self.lipschitz_L = lipschitz_L
        self.metadata = dict(metadata or {})

    @property
    def generative(self) -> bool:
        return self.pool_size is None

    @property
    def deterministic(self) -> bool:
        """True when a single evaluation over `full_pool()` is exact."""
        return not self.generative

    @property
    def has_truth(self) -> bool:
        return True

    @abc.abstractmethod
    def draw_samples(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n i.i.d. samples."""

    def full_pool(self) -> np.ndarray:
        if self.generative:
            raise ParameterError(f"{self.name} has no finite pool to enumerate")
        return np.arange(self.pool_size)

    @abc.abstractmethod
    def sample_values(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        """F(x, ξ_ℓ) for each sample, shape (n,)."""

    @abc.abstractmethod
    def sample_gradients(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        """∇F(x, ξ_ℓ) for each sample, shape (n, d)."""

    @abc.abstractmethod
    def sample_hessian_products(
        self, x: np.ndarray, samples: np.ndarray
    ) -> HessianProducts:
        """Map v ↦ rows ∇²F(x, ξ_ℓ)v, shape (n, d), with samples fixed."""

    def true_value(self, x: np.ndarray) -> float:
        return sample_mean(self.sample_values(x, self.full_pool()))

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return sample_mean(self.sample_gradients(x, self.full_pool()))

    def true_oracle(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        return self.true_value(x), self.true_gradient(x)

    def true_reduction(self, x: np.ndarray, x_trial: np.ndarray) -> float:
        """f(x) − f(x_trial)."""
        return sampled_reduction(self, x, x_trial, self.full_pool())

    def objective(self, x: np.ndarray) -> float:
        """f(x) + φ(x)."""
        return self.true_value(x) + self.phi.value(x)

    def initial_point(self, x0: Optional[np.ndarray] = None) -> tuple[np.ndarray, bool]:
        """
        Starting iterate in dom φ and whether it had to be projected.
        """
        x = np.zeros(self.dimension) if x0 is None else np.asarray(x0, dtype=float)
        if x.shape != (self.dimension,):
            raise ParameterError(
                f"x0 has shape {x.shape}, expected ({self.dimension},)"
            )
        if self.phi.in_domain(x):
            return x.copy(), False
        return prox(self.phi, x, 1.0), True

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "pool_size": self.pool_size,
            "lipschitz_L": self.lipschitz_L,
            "phi": self.phi.describe(),
            **self.metadata,
        }


def sampled_reduction(
    problem: StochasticProblem, x: np.ndarray, x_trial: np.ndarray, samples: np.ndarray
) -> float:
    """(1/n) Σ [F(x, ξ_ℓ) − F(x_trial, ξ_ℓ)] with common random numbers."""
    return sample_mean(
        problem.sample_values(x, samples) - problem.sample_values(x_trial, samples)
    )
