# Copyright (c) 2025 ProxSTORM

from .fixtures import TwoPointProblem, enumerate_box_budget_projection
from .suites import SUITES, SuiteResult, prox_families, run_suites

__all__ = [
    "SUITES",
    "SuiteResult",
    "TwoPointProblem",
    "enumerate_box_budget_projection",
    "prox_families",
    "run_suites",
]
