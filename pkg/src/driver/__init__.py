# Copyright (c) 2025 ProxSTORM

from .trust_region import (
    accept_and_update,
    accept_and_update_exponent,
    check_sampling_mode,
    computed_reduction,
    run,
)
from .types import TRACE_COLUMNS, FailureFlag, IterationRecord, Trace

__all__ = [
    "TRACE_COLUMNS",
    "FailureFlag",
    "IterationRecord",
    "Trace",
    "accept_and_update",
    "accept_and_update_exponent",
    "check_sampling_mode",
    "computed_reduction",
    "run",
]
