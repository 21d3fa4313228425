# Copyright (c) 2025 ProxSTORM

from .errors import (
    CauchyFailureError,
    ConfigError,
    DiagnosticError,
    DomainError,
    FcdViolationError,
    InternalError,
    ParameterError,
    ProxStormError,
    RunAborted,
    SampleError,
)
from .logger import get_logger, setup_logging

__all__ = [
    "CauchyFailureError",
    "ConfigError",
    "DiagnosticError",
    "DomainError",
    "FcdViolationError",
    "InternalError",
    "ParameterError",
    "ProxStormError",
    "RunAborted",
    "SampleError",
    "get_logger",
    "setup_logging",
]
