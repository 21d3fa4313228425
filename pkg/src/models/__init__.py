# Copyright (c) 2025 ProxSTORM

from .quadratic_model import (
    QuadraticModel,
    build_model,
    curvature_bound,
    model_from_matrix,
    model_value,
)

__all__ = [
    "QuadraticModel",
    "build_model",
    "curvature_bound",
    "model_from_matrix",
    "model_value",
]
