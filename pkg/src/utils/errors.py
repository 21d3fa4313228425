# Copyright (c) 2025 ProxSTORM


from typing import Any, Optional


class ProxStormError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(ProxStormError, ValueError):
    """A scalar argument or configuration inequality is violated."""


class ConfigError(ProxStormError, ValueError):
    """A run configuration could not be parsed or validated."""


class DomainError(ProxStormError, ValueError):
    """The domain of the nonsmooth term is empty."""


class InternalError(ProxStormError):
    """A numerical routine failed in a way that indicates a bug."""

    def __init__(self, message: str, bracket: Optional[tuple[float, float]] = None):
        super().__init__(message)
        self.bracket = bracket


class SampleError(ProxStormError):
    """An oracle sample produced a non-finite value, gradient or product."""

    def __init__(self, message: str, sample_index: int):
        super().__init__(f"{message} (sample index {sample_index})")
        self.sample_index = sample_index


class CauchyFailureError(ProxStormError):
    """Backtracking along the Cauchy arc exhausted its halvings."""

    def __init__(self, message: str, last_r: float):
        super().__init__(message)
        self.last_r = last_r


class FcdViolationError(ProxStormError):
    """A trial step does not meet the fraction of Cauchy decrease."""

    def __init__(self, pred: float, required: float):
        super().__init__(
            f"pred={pred:.6e} below the fraction of Cauchy decrease {required:.6e}"
        )
        self.pred = pred
        self.required = required


class DiagnosticError(ProxStormError):
    """A diagnostic needs trace columns that are missing."""


class RunAborted(ProxStormError):
    """A run stopped early; the partial trace is attached."""

    def __init__(self, message: str, trace: Any):
        super().__init__(message)
        self.trace = trace
