# Copyright (c) 2025 ProxSTORM


from dataclasses import dataclass

import numpy as np

from src.models import QuadraticModel
from src.prox import ProxFunction
from src.utils.errors import FcdViolationError, InternalError

from .cauchy import cauchy_search
from .reduction import predicted_reduction
from .spg import refine_with_count

BALL_SLACK = 1e-12
DEFAULT_KAPPA_FCD = 0.05


def fcd_scale(h_model_norm: float, b: float, delta: float) -> float:
    """‖h_k‖·min{‖h_k‖/(1+b_k), δ_k}."""
    return h_model_norm * min(h_model_norm / (1.0 + b), delta)


@dataclass(frozen=True, eq=False)
class TrialStep:
    """A step satisfying (S1) ‖s‖ ≤ δ and (S2) the fraction of Cauchy decrease."""

    s: np.ndarray
    pred: float
    h_model_norm: float
    cauchy_r: float
    refine_iters: int
    b: float
    delta: float
    kappa_fcd: float = DEFAULT_KAPPA_FCD

    def __post_init__(self):
        if np.linalg.norm(self.s) > self.delta * (1.0 + BALL_SLACK):
            raise InternalError(
                f"trial step norm {np.linalg.norm(self.s):.6e} exceeds radius {self.delta:.6e}"
            )
        required = self.kappa_fcd * fcd_scale(self.h_model_norm, self.b, self.delta)
        if not (self.pred > 0.0 and self.pred >= required):
            raise FcdViolationError(self.pred, required)

    @property
    def fcd_ratio(self) -> float:
        """pred / (‖h_k‖·min{‖h_k‖/(1+b), δ}); at least kappa_fcd."""
        return self.pred / fcd_scale(self.h_model_norm, self.b, self.delta)


def compute_trial_step(
    model: QuadraticModel,
    phi: ProxFunction,
    x: np.ndarray,
    delta: float,
    h_model_norm: float,
    r_init: float,
    kappa_fcd: float = DEFAULT_KAPPA_FCD,
    spg_max_iters: int = 2,
) -> TrialStep:
    """Cauchy search followed by spectral refinement."""
    r, s_c = cauchy_search(model, phi, x, delta, r_init)
    s, refine_iters = refine_with_count(model, phi, x, s_c, delta, spg_max_iters)
    return TrialStep(
        s=s,
        pred=predicted_reduction(model, phi, x, s),
        h_model_norm=h_model_norm,
        cauchy_r=r,
        refine_iters=refine_iters,
        b=model.b,
        delta=delta,
        kappa_fcd=kappa_fcd,
    )
