# Copyright (c) 2025 ProxSTORM


import numpy as np

from src.models import QuadraticModel
from src.prox import ProxFunction, prox

from .reduction import composite_model_value

MIN_SPECTRAL_STEP = 1e-8
MAX_SPECTRAL_STEP = 1e8


def refine_with_count(
    model: QuadraticModel,
    phi: ProxFunction,
    x: np.ndarray,
    s_c: np.ndarray,
    delta: float,
    max_iters: int,
) -> tuple[np.ndarray, int]:
    """refine_spg that also reports how many refinements were accepted."""
    best_s = np.asarray(s_c, dtype=float)
    best_value = composite_model_value(model, phi, x, best_s)
    y = x + best_s
    t = 1.0 / (1.0 + model.b)
    accepted = 0
    for _ in range(max_iters):
        gradient = model.gradient_at(y - x)
        candidate = prox(phi, y - t * gradient, t) - x
        norm = float(np.linalg.norm(candidate))
        if norm > delta:
            candidate *= delta / norm
        value = composite_model_value(model, phi, x, candidate)
        if not value < best_value:
            break
        dy = (x + candidate) - y
        curvature = float(dy @ model.apply_curvature(dy))
        t = (
            float(np.clip((dy @ dy) / curvature, MIN_SPECTRAL_STEP, MAX_SPECTRAL_STEP))
            if curvature > 0.0
            else MAX_SPECTRAL_STEP
        )
        y = x + candidate
        best_s, best_value = candidate, value
        accepted += 1
    return best_s, accepted


def refine_spg(
    model: QuadraticModel,
    phi: ProxFunction,
    x: np.ndarray,
    s_c: np.ndarray,
    delta: float,
    max_iters: int,
) -> np.ndarray:
    """
    Spectral proximal gradient refinement of a Cauchy step.

    Each iterate is prox(y − t∇m(y), t) with a Barzilai–Borwein step t,
    pulled radially back onto the trust-region sphere when it leaves the
    ball, and accepted only on strict decrease of m + φ. The result is never
    worse than s_c.
    """
    s, _ = refine_with_count(model, phi, x, s_c, delta, max_iters)
    return s
