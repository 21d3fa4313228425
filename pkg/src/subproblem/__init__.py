# Copyright (c) 2025 ProxSTORM

from .cauchy import KAPPA_DEC, cauchy_search
from .reduction import composite_model_value, predicted_reduction
from .spg import refine_spg
from .step import TrialStep, compute_trial_step, fcd_scale

__all__ = [
    "KAPPA_DEC",
    "TrialStep",
    "cauchy_search",
    "composite_model_value",
    "compute_trial_step",
    "fcd_scale",
    "predicted_reduction",
    "refine_spg",
]
