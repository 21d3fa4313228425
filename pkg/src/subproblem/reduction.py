# Copyright (c) 2025 ProxSTORM


import numpy as np

from src.models import QuadraticModel, model_value
from src.prox import ProxFunction


def predicted_reduction(
    model: QuadraticModel, phi: ProxFunction, x: np.ndarray, s: np.ndarray
) -> float:
    """m(x) + φ(x) − m(x+s) − φ(x+s); −inf when x+s leaves dom φ."""
    decrement = phi.decrement(x, s)
    if not np.isfinite(decrement):
        return float("-inf")
    return -model_value(model, s) + decrement


def composite_model_value(
    model: QuadraticModel, phi: ProxFunction, x: np.ndarray, s: np.ndarray
) -> float:
    """m(x+s) + φ(x+s) with m(x) normalized to 0."""
    return model_value(model, s) + phi.value(x + s)
