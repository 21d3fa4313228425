# Copyright (c) 2025 ProxSTORM


from src.config.run_config import ProblemKind, ProblemSpec

from .base import StochasticProblem
from .logistic import logistic_l1_problem
from .pool_io import import_pool_csv
from .quadratic import box_budget_quadratic, smooth_quadratic


def build_problem(spec: ProblemSpec) -> StochasticProblem:
    if spec.kind is ProblemKind.LOGISTIC_L1 and spec.pool_file:
        return import_pool_csv(spec.pool_file, l1_weight=spec.l1_weight)
    if spec.kind is ProblemKind.LOGISTIC_L1:
        return logistic_l1_problem(
            spec.dimension,
            spec.pool_size,
            l1_weight=spec.l1_weight,
            seed=spec.seed,
            holdout_size=spec.holdout_size,
        )
    if spec.kind is ProblemKind.BOX_BUDGET_QUADRATIC:
        return box_budget_quadratic(spec.dimension, seed=spec.seed)
    if spec.kind is ProblemKind.SMOOTH_QUADRATIC:
        return smooth_quadratic(spec.dimension, noise=spec.noise, seed=spec.seed)
    raise ValueError(f"Unsupported problem kind: {spec.kind}")
