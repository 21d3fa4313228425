# Copyright (c) 2025 ProxSTORM


import numpy as np

from src.prox import BoxBudgetIndicator, ProxFunction, Zero
from src.utils.errors import ParameterError

from .base import HessianProducts, StochasticProblem

BUDGET_FRACTION = 0.2
TARGET_NOISE = 0.1


def random_spd_matrix(
    rng: np.random.Generator, d: int, lowest: float = 0.1, highest: float = 10.0
) -> np.ndarray:
    """Symmetric positive definite matrix with spectrum geomspace(lowest, highest)."""
    q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    eigenvalues = np.geomspace(lowest, highest, d) if d > 1 else np.array([highest])
    a = (q * eigenvalues) @ q.T
    return 0.5 * (a + a.T)


class _GenerativeQuadratic(StochasticProblem):
    """Quadratics whose samples are realizations ξ ~ N(0, I_d)."""

    def __init__(self, hessian: np.ndarray, phi: ProxFunction, metadata: dict):
        d = hessian.shape[0]
        super().__init__(
            dimension=d,
            phi=phi,
            pool_size=None,
            lipschitz_L=float(np.linalg.eigvalsh(hessian)[-1]),
            metadata=metadata,
        )
        self.hessian = hessian

    def draw_samples(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.standard_normal((n, self.dimension))

    def full_pool(self) -> np.ndarray:
        if not self.deterministic:
            raise ParameterError(f"{self.name} is stochastic and has no finite pool")
        return np.zeros((1, self.dimension))

    def sample_hessian_products(
        self, x: np.ndarray, samples: np.ndarray
    ) -> HessianProducts:
        n = samples.shape[0]

        def products(v: np.ndarray) -> np.ndarray:
            return np.broadcast_to(self.hessian @ v, (n, self.dimension))

        return products


class BoxBudgetQuadratic(_GenerativeQuadratic):
    """
    F(x, ξ) = ½(x − t(ξ))ᵀA(x − t(ξ)) with t(ξ) = t₀ + 0.1ξ over
    {0 ≤ x ≤ 1, wᵀx = 0.2·Σw}.
    """

    name = "box_budget_quadratic"

    def __init__(self, hessian: np.ndarray, target: np.ndarray, phi: BoxBudgetIndicator):
        super().__init__(
            hessian,
            phi,
            metadata={"lower_bound": 0.0, "lower_bound_reason": "A is positive definite"},
        )
        self.target = target

    @property
    def deterministic(self) -> bool:
        return False

    def _offsets(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        return x - self.target - TARGET_NOISE * samples

    def sample_values(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        e = self._offsets(x, samples)
        return 0.5 * np.einsum("ij,ij->i", e @ self.hessian, e)

    def sample_gradients(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        return self._offsets(x, samples) @ self.hessian

    def true_value(self, x: np.ndarray) -> float:
        e = x - self.target
        return float(
            0.5 * e @ self.hessian @ e
            + 0.5 * TARGET_NOISE**2 * np.trace(self.hessian)
        )

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return self.hessian @ (x - self.target)

    def true_reduction(self, x: np.ndarray, x_trial: np.ndarray) -> float:
        e, e_trial = x - self.target, x_trial - self.target
        return float(0.5 * (e @ self.hessian @ e - e_trial @ self.hessian @ e_trial))


def box_budget_quadratic(d: int, seed: int = 0) -> BoxBudgetQuadratic:
    if d < 2:
        raise ParameterError(f"box_budget_quadratic needs d >= 2, got {d}")
    rng = np.random.default_rng(seed)
    hessian = random_spd_matrix(rng, d)
    target = rng.uniform(0.0, 1.0, d)
    weights = np.full(d, 1.0 / d)
    phi = BoxBudgetIndicator(
        dimension=d,
        lo=np.zeros(d),
        hi=np.ones(d),
        weights=weights,
        budget=BUDGET_FRACTION * float(weights.sum()),
    )
    return BoxBudgetQuadratic(hessian, target, phi)


class SmoothQuadratic(_GenerativeQuadratic):
    """F(x, ξ) = ½xᵀAx − bᵀx + noise·ξᵀx with φ ≡ 0."""

    name = "smooth_quadratic"

    def __init__(self, hessian: np.ndarray, linear: np.ndarray, noise: float):
        if noise < 0:
            raise ParameterError(f"noise must be >= 0, got {noise}")
        super().__init__(
            hessian,
            Zero(hessian.shape[0]),
            metadata={
                "lower_bound": float(-0.5 * linear @ np.linalg.solve(hessian, linear)),
                "lower_bound_reason": "A is positive definite",
                "noise": noise,
            },
        )
        self.linear = linear
        self.noise = noise

    @property
    def deterministic(self) -> bool:
        return self.noise == 0.0

    def minimizer(self) -> np.ndarray:
        return np.linalg.solve(self.hessian, self.linear)

    def sample_values(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        base = 0.5 * x @ self.hessian @ x - self.linear @ x
        return base + self.noise * (samples @ x)

    def sample_gradients(self, x: np.ndarray, samples: np.ndarray) -> np.ndarray:
        return (self.hessian @ x - self.linear) + self.noise * samples

    def true_value(self, x: np.ndarray) -> float:
        return float(0.5 * x @ self.hessian @ x - self.linear @ x)

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return self.hessian @ x - self.linear

    def true_reduction(self, x: np.ndarray, x_trial: np.ndarray) -> float:
        return self.true_value(x) - self.true_value(x_trial)


def smooth_quadratic(d: int, noise: float = 0.0, seed: int = 0) -> SmoothQuadratic:
    if d < 1:
        raise ParameterError(f"smooth_quadratic needs d >= 1, got {d}")
    rng = np.random.default_rng(seed)
    hessian = random_spd_matrix(rng, d)
    linear = rng.standard_normal(d)
    return SmoothQuadratic(hessian, linear, noise)
