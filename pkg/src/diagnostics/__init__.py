# Copyright (c) 2025 ProxSTORM

from .events import AssumptionRates, assumption_rates, event_indicators
from .summability import SummabilityAccumulator, SummabilityReport, summability_report
from .theory import (
    TheoryConstants,
    lyapunov,
    lyapunov_increment,
    lyapunov_violations,
    theory_constants,
)

__all__ = [
    "AssumptionRates",
    "SummabilityAccumulator",
    "SummabilityReport",
    "TheoryConstants",
    "assumption_rates",
    "event_indicators",
    "lyapunov",
    "lyapunov_increment",
    "lyapunov_violations",
    "summability_report",
    "theory_constants",
]
