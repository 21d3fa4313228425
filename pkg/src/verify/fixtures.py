# Copyright (c) 2025 ProxSTORM


import itertools
import math

import numpy as np

from src.problems.base import HessianProducts, StochasticProblem
from src.prox import Zero

TWO_POINT_MEAN = 3.0
TWO_POINT_SPREAD = math.sqrt(2.0)


class TwoPointProblem(StochasticProblem):
    """
    F(x, ξ) = (3 + √2·ξ)·x₁ with ξ = ±1 equally likely.

    Gradient norms take the values 3 ± √2, so their variance is exactly 2,
    and the model gradient error is √2·|mean ξ| along e₁.
    """

    name = "two_point"

    def __init__(self, dimension: int = 1):
        super().__init__(
            dimension=dimension,
            phi=Zero(dimension),
            metadata={"gradient_norm_variance": TWO_POINT_SPREAD**2},
        )

    def draw_samples(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.choice(np.array([-1.0, 1.0]), size=n)

    def _slopes(self, samples: np.ndarray) -> np.ndarray:
        return TWO_POINT_MEAN + TWO_POINT_SPREAD * np.asarray(samples, dtype=float)

    def sample_values(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        return self._slopes(samples) * x[0]

    def sample_gradients(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        gradients = np.zeros((np.size(samples), self.dimension))
        gradients[:, 0] = self._slopes(samples)
        return gradients

    def sample_hessian_products(
        self, x: np.ndarray, samples: np.ndarray
    ) -> HessianProducts:
        n = np.size(samples)
        return lambda v: np.zeros((n, self.dimension))

    def true_value(self, x: np.ndarray) -> float:
        return TWO_POINT_MEAN * float(x[0])

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(self.dimension)
        g[0] = TWO_POINT_MEAN
        return g

    def true_reduction(self, x: np.ndarray, x_trial: np.ndarray) -> float:
        return TWO_POINT_MEAN * float(x[0] - x_trial[0])


def enumerate_box_budget_projection(
    x: np.ndarray, w: np.ndarray, c: float, lo: np.ndarray, hi: np.ndarray
) -> np.ndarray:
    """
    Projection onto {lo ≤ y ≤ hi, wᵀy = c} by enumerating which coordinates
    sit at a bound (3^d candidates; d ≤ 6 in practice).
    """
    x, w, lo, hi = (np.asarray(a, dtype=float) for a in (x, w, lo, hi))
    d = x.size
    scale = max(1.0, abs(c))
    best, best_dist = None, math.inf
    for status in itertools.product((0, 1, 2), repeat=d):
        y = np.where(np.array(status) == 0, lo, hi).astype(float)
        free = np.array(status) == 2
        if free.any():
            fixed_mass = float(w[~free] @ y[~free])
            mu = (float(w[free] @ x[free]) + fixed_mass - c) / float(w[free] @ w[free])
            y[free] = x[free] - mu * w[free]
        if np.any(y < lo - 1e-12) or np.any(y > hi + 1e-12):
            continue
        if abs(float(w @ y) - c) > 1e-10 * scale:
            continue
        dist = float(np.linalg.norm(y - x))
        if dist < best_dist:
            best, best_dist = y, dist
    if best is None:
        raise ValueError("box-budget set is empty")
    return best
