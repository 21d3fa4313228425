# Copyright (c) 2025 ProxSTORM


from dataclasses import dataclass, field
from typing import Iterable, Optional


@dataclass
class SummabilityAccumulator:
    """Streaming Σδ_k², Σ 1(‖h(x_k)‖ ≥ ε)δ_k and T_ε."""

    eps: float
    sum_delta_sq: float = 0.0
    sum_indicator_delta: float = 0.0
    t_eps: Optional[int] = None
    partial_sums: list[float] = field(default_factory=list)

    def update(self, k: int, delta: float, h_true_norm: Optional[float]) -> None:
        self.sum_delta_sq += delta**2
        self.partial_sums.append(self.sum_delta_sq)
        if h_true_norm is None:
            return
        if h_true_norm >= self.eps:
            self.sum_indicator_delta += delta
        if self.t_eps is None and h_true_norm <= self.eps:
            self.t_eps = k

    def report(self) -> "SummabilityReport":
        return SummabilityReport(self.sum_delta_sq, self.sum_indicator_delta, self.t_eps)


@dataclass(frozen=True)
class SummabilityReport:
    sum_delta_sq: float
    sum_indicator_delta: float
    t_eps: Optional[int]

    def to_dict(self) -> dict:
        return {
            "sum_delta_sq": self.sum_delta_sq,
            "sum_indicator_delta": self.sum_indicator_delta,
            "t_eps": self.t_eps,
        }


def summability_report(records: Iterable, eps: float) -> SummabilityReport:
    """Partial sums over a finished trace; rows without truth add only to Σδ²."""
    accumulator = SummabilityAccumulator(eps)
    for record in records:
        accumulator.update(record.k, record.delta, record.h_true_norm)
    return accumulator.report()
