# Copyright (c) 2025 ProxSTORM


import numpy as np

from src.utils.errors import ParameterError

from .functions import ProxFunction


def _check_step(r: float) -> None:
    if not r > 0 or not np.isfinite(r):
        raise ParameterError(f"prox parameter r must be positive and finite, got {r}")


def prox(phi: ProxFunction, x: np.ndarray, r: float) -> np.ndarray:
    """Exact proximal map of r·φ at x."""
    _check_step(r)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParameterError("prox input must be finite")
    return phi.prox(x, r)


def prox_gradient(
    x: np.ndarray, g: np.ndarray, r: float, phi: ProxFunction
) -> np.ndarray:
    """
    Proximal gradient (x − prox_{rφ}(x − r·g)) / r.

    The orientation follows the stationarity measure; callers only consume
    its norm. With φ ≡ 0 this is g itself.
    """
    _check_step(r)
    x = np.asarray(x, dtype=float)
    g = np.asarray(g, dtype=float)
    return (x - prox(phi, x - r * g, r)) / r
