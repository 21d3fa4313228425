# Copyright (c) 2025 ProxSTORM


import numpy as np
from scipy.optimize import bisect

from src.utils.errors import DomainError, InternalError, ParameterError

BUDGET_TOL = 1e-12
MAX_BRACKET_EXPANSIONS = 60


def _budget_residual(mu, x, w, c, lo, hi) -> float:
    return float(w @ np.clip(x - mu * w, lo, hi)) - c


def _polish(mu, x, w, c, lo, hi) -> float:
    """Solve the budget equation exactly on the free set found at mu."""
    z = x - mu * w
    free = (z > lo) & (z < hi)
    if not np.any(free):
        return mu
    clamped = np.clip(z, lo, hi)
    fixed_mass = float(w[~free] @ clamped[~free])
    return float((w[free] @ x[free] - (c - fixed_mass)) / (w[free] @ w[free]))


def project_box_budget(
    x: np.ndarray, w: np.ndarray, c: float, lo: np.ndarray, hi: np.ndarray
) -> np.ndarray:
    """
    Euclidean projection onto {lo ≤ y ≤ hi, wᵀy = c}.

    The minimizer is y(μ) = clip(x − μw, lo, hi) where μ solves wᵀy(μ) = c.
    wᵀy(μ) is continuous and nonincreasing, so the scalar dual is bracketed
    and bisected, then the free-set equation is solved in closed form.
    """
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), x.shape)
    hi = np.broadcast_to(np.asarray(hi, dtype=float), x.shape)
    if w.shape != x.shape:
        raise ParameterError(f"weights shape {w.shape} does not match x {x.shape}")
    if np.any(w <= 0):
        raise ParameterError("budget weights must be positive")
    if not np.all(np.isfinite(x)):
        raise ParameterError("x must be finite")
    low, high = float(w @ lo), float(w @ hi)
    tol = BUDGET_TOL * max(1.0, abs(c))
    if np.any(lo > hi) or c < low - tol or c > high + tol:
        raise DomainError(f"infeasible budget {c} outside [{low}, {high}]")

    residual = lambda mu: _budget_residual(mu, x, w, c, lo, hi)  # noqa: E731

    if abs(residual(0.0)) <= tol:
        return np.clip(x, lo, hi)

    span = (
        np.max(np.abs(x)) + np.max(np.abs(hi)) + np.max(np.abs(lo))
    ) / np.min(w) + 1.0
    for _ in range(MAX_BRACKET_EXPANSIONS):
        if residual(-span) >= 0.0 >= residual(span):
            break
        span *= 2.0
    else:
        raise InternalError("budget dual could not be bracketed", (-span, span))

    try:
        mu = bisect(residual, -span, span, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=400)
    except (ValueError, RuntimeError) as e:
        raise InternalError(f"budget dual bisection failed: {e}", (-span, span)) from e

    polished = _polish(mu, x, w, c, lo, hi)
    if abs(residual(polished)) < abs(residual(mu)):
        mu = polished
    if abs(residual(mu)) > tol:
        raise InternalError(
            f"budget residual {residual(mu):.3e} above tolerance {tol:.1e}",
            (-span, span),
        )
    return np.clip(x - mu * w, lo, hi)
