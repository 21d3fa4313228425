# Copyright (c) 2025 ProxSTORM


import numpy as np

from src.models import QuadraticModel
from src.prox import ProxFunction, prox
from src.utils.errors import CauchyFailureError, ParameterError

from .reduction import predicted_reduction

KAPPA_DEC = 0.75
SHRINK = 0.5
EXPAND = 2.0
MAX_HALVINGS = 60
MAX_EXPANSIONS = 40


def _arc_point(
    model: QuadraticModel,
    phi: ProxFunction,
    x: np.ndarray,
    delta: float,
    r: float,
    kappa_dec: float,
) -> tuple[np.ndarray, bool]:
    s = prox(phi, x - r * model.g, r) - x
    norm_s = float(np.linalg.norm(s))
    if norm_s > delta:
        return s, False
    decrease = predicted_reduction(model, phi, x, s)
    return s, decrease >= (kappa_dec / r) * norm_s**2


def cauchy_search(
    model: QuadraticModel,
    phi: ProxFunction,
    x: np.ndarray,
    delta: float,
    r_init: float,
    kappa_dec: float = KAPPA_DEC,
) -> tuple[float, np.ndarray]:
    """
    Bi-directional search along p(r) = prox_{rφ}(x − r·g).

    A step length is acceptable when ‖p(r) − x‖ ≤ δ and the composite model
    decrease is at least (κ_dec / r)‖p(r) − x‖². Starting from r_init the
    search either expands by EXPAND while acceptable and inside the ball,
    or contracts by SHRINK until acceptable.
    """
    if not delta > 0 or not r_init > 0:
        raise ParameterError(f"need delta > 0 and r_init > 0, got {delta}, {r_init}")
    r = r_init
    s, ok = _arc_point(model, phi, x, delta, r, kappa_dec)
    if ok:
        for _ in range(MAX_EXPANSIONS):
            if np.linalg.norm(s) >= delta:
                break
            s_up, ok_up = _arc_point(model, phi, x, delta, r * EXPAND, kappa_dec)
            if not ok_up:
                break
            r, s = r * EXPAND, s_up
        return r, s
    for _ in range(MAX_HALVINGS):
        r *= SHRINK
        s, ok = _arc_point(model, phi, x, delta, r, kappa_dec)
        if ok:
            return r, s
    raise CauchyFailureError(
        f"no acceptable Cauchy step after {MAX_HALVINGS} halvings from r={r_init:.3e}",
        last_r=r,
    )
