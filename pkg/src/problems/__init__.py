# Copyright (c) 2025 ProxSTORM

from .base import (
    StochasticProblem,
    check_finite_rows,
    sample_mean,
    sampled_reduction,
)
from .builder import build_problem
from .logistic import LogisticL1Problem, logistic_l1_problem
from .pool_io import export_pool_csv, import_pool_csv
from .quadratic import (
    BoxBudgetQuadratic,
    SmoothQuadratic,
    box_budget_quadratic,
    random_spd_matrix,
    smooth_quadratic,
)

__all__ = [
    "BoxBudgetQuadratic",
    "LogisticL1Problem",
    "SmoothQuadratic",
    "StochasticProblem",
    "box_budget_quadratic",
    "build_problem",
    "check_finite_rows",
    "export_pool_csv",
    "import_pool_csv",
    "logistic_l1_problem",
    "random_spd_matrix",
    "sample_mean",
    "sampled_reduction",
    "smooth_quadratic",
]
