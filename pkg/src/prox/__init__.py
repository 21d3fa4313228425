# Copyright (c) 2025 ProxSTORM

from .functions import (
    DOMAIN_TOL,
    BoxBudgetIndicator,
    BoxIndicator,
    L1,
    ProxFunction,
    ProxKind,
    Zero,
)
from .operators import prox, prox_gradient
from .projection import project_box_budget

__all__ = [
    "DOMAIN_TOL",
    "BoxBudgetIndicator",
    "BoxIndicator",
    "L1",
    "ProxFunction",
    "ProxKind",
    "Zero",
    "project_box_budget",
    "prox",
    "prox_gradient",
]
