# Copyright (c) 2025 ProxSTORM


import math
from typing import Optional

import numpy as np

from src.prox import L1
from src.utils.logger import get_logger

from .base import HessianProducts, StochasticProblem, sample_mean

logger = get_logger("problems")

DEFAULT_L1_WEIGHT = 1e-2


def _sigmoid(a: np.ndarray) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -a))


class LogisticL1Problem(StochasticProblem):
    """
    Pool-averaged binary cross entropy of a linear classifier plus λ‖θ‖₁.

    F(θ, ℓ) = log(1 + exp(z_ℓᵀθ)) − y_ℓ z_ℓᵀθ, sampled uniformly from the pool.
    """

    name = "logistic_l1"

    def __init__(
        self,
        features: np.ndarray,
        labels: np.ndarray,
        l1_weight: float = DEFAULT_L1_WEIGHT,
        holdout_features: Optional[np.ndarray] = None,
        holdout_labels: Optional[np.ndarray] = None,
        theta_star: Optional[np.ndarray] = None,
    ):
        features = np.asarray(features, dtype=float)
        labels = np.asarray(labels, dtype=float)
        pool_size, dimension = features.shape
        gram_max = float(np.linalg.eigvalsh(features.T @ features)[-1])
        super().__init__(
            dimension=dimension,
            phi=L1(dimension, l1_weight),
            pool_size=pool_size,
            lipschitz_L=0.25 * gram_max / pool_size,
            metadata={"lower_bound": 0.0, "lower_bound_reason": "BCE >= 0 and λ‖θ‖₁ >= 0"},
        )
        self.features = features
        self.labels = labels
        self.holdout_features = holdout_features
        self.holdout_labels = holdout_labels
        self.theta_star = theta_star

    def draw_samples(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.integers(0, self.pool_size, size=n)

    def _margins(self, theta: np.ndarray, samples: np.ndarray) -> np.ndarray:
        return self.features[samples] @ theta

    def sample_values(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        a = self._margins(x, samples)
        return np.logaddexp(0.0, a) - self.labels[samples] * a

    def sample_gradients(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        a = self._margins(x, samples)
        residual = _sigmoid(a) - self.labels[samples]
        return residual[:, None] * self.features[samples]

    def sample_hessian_products(
        self, x: np.ndarray, samples: np.ndarray
    ) -> HessianProducts:
        z = self.features[samples]
        p = _sigmoid(z @ x)
        curvature = p * (1.0 - p)

        def products(v: np.ndarray) -> np.ndarray:
            return (curvature * (z @ v))[:, None] * z

        return products

    def holdout_loss(self, theta: np.ndarray) -> Optional[float]:
        """Objective f + φ on the unseen hold-out pool."""
        if self.holdout_features is None:
            return None
        a = self.holdout_features @ theta
        losses = np.logaddexp(0.0, a) - self.holdout_labels * a
        return sample_mean(losses) + self.phi.value(theta)


def _synthetic_pool(rng: np.random.Generator, size: int, theta_star: np.ndarray):
    features = rng.standard_normal((size, theta_star.size))
    labels = (rng.random(size) < _sigmoid(features @ theta_star)).astype(float)
    return features, labels


def logistic_l1_problem(
    d: int,
    pool_size: int,
    l1_weight: float = DEFAULT_L1_WEIGHT,
    seed: int = 0,
    holdout_size: Optional[int] = None,
) -> LogisticL1Problem:
    """Synthetic sparse logistic regression pool with ⌈d/4⌉ active weights of magnitude 1."""
    rng = np.random.default_rng(seed)
    theta_star = np.zeros(d)
    support = rng.choice(d, size=math.ceil(d / 4), replace=False)
    theta_star[support] = rng.choice([-1.0, 1.0], size=support.size)
    features, labels = _synthetic_pool(rng, pool_size, theta_star)
    holdout_features, holdout_labels = _synthetic_pool(
        rng, holdout_size or pool_size, theta_star
    )
    logger.debug(
        "Generated logistic pool",
        dimension=d,
        pool_size=pool_size,
        positives=int(labels.sum()),
    )
    return LogisticL1Problem(
        features,
        labels,
        l1_weight=l1_weight,
        holdout_features=holdout_features,
        holdout_labels=holdout_labels,
        theta_star=theta_star,
    )
