# Copyright (c) 2025 ProxSTORM


from dataclasses import asdict, dataclass, field
from typing import Any, Iterator, Optional

import numpy as np

# Serialized column order of a trace.
TRACE_COLUMNS = (
    "k",
    "delta_exponent",
    "delta",
    "h_model_norm",
    "h_true_norm",
    "pred",
    "cred",
    "ared",
    "accepted",
    "gated",
    "n_model",
    "n_cred",
    "b_k",
    "cauchy_r",
    "f_plus_phi",
    "psi",
    "I_k",
    "J_k",
)

# Relative slack under which the fraction of Cauchy decrease counts as binding.
FCD_BINDING_SLACK = 0.1


class FailureFlag:
    CAUCHY = "cauchy_failure"
    FCD = "fcd_violation"
    ZERO_PRED = "zero_pred"


@dataclass(frozen=True)
class IterationRecord:
    """One row of a trace; truth-dependent fields are None without a true oracle."""

    k: int
    delta_exponent: int
    delta: float
    h_model_norm: float
    h_true_norm: Optional[float]
    pred: Optional[float]
    cred: Optional[float]
    ared: Optional[float]
    accepted: bool
    gated: bool
    n_model: int
    n_cred: int
    b_k: float
    cauchy_r: Optional[float]
    f_plus_phi: Optional[float]
    psi: Optional[float]
    I_k: Optional[bool]
    J_k: Optional[bool]
    refine_iters: Optional[int] = None
    failure: Optional[str] = None
    fcd_ratio: Optional[float] = None
    cap_hit: bool = False

    def as_row(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in TRACE_COLUMNS}

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class Trace:
    """Iteration records of one run together with its final iterate."""

    x0: np.ndarray
    x_final: np.ndarray
    kappa_fcd: float
    records: list[IterationRecord] = field(default_factory=list)
    projected_x0: bool = False
    t_eps: Optional[int] = None
    stop_reason: str = "max_iters"
    delta_sq_partial_sums: list[float] = field(default_factory=list)
    final_h_true_norm: Optional[float] = None
    final_objective: Optional[float] = None
    final_delta: Optional[float] = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[IterationRecord]:
        return iter(self.records)

    def __getitem__(self, index: int) -> IterationRecord:
        return self.records[index]

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    @property
    def has_truth(self) -> bool:
        return any(r.h_true_norm is not None for r in self.records)

    @property
    def acceptance_rate(self) -> float:
        if not self.records:
            return 0.0
        return sum(r.accepted for r in self.records) / len(self.records)

    @property
    def fcd_infimum(self) -> Optional[float]:
        ratios = [r.fcd_ratio for r in self.records if r.fcd_ratio is not None]
        return min(ratios) if ratios else None

    @property
    def fcd_binds(self) -> bool:
        """Whether some step came within FCD_BINDING_SLACK of the κ_fcd floor."""
        infimum = self.fcd_infimum
        return infimum is not None and infimum <= (1.0 + FCD_BINDING_SLACK) * self.kappa_fcd

    def next_deltas(self) -> list[float]:
        """δ_{k+1} for every recorded k; the last one is the radius the run stopped with."""
        if not self.records:
            return []
        return [r.delta for r in self.records[1:]] + [self.final_delta]

    def deltas(self) -> np.ndarray:
        return np.array([r.delta for r in self.records], dtype=float)

    def head_tail_delta(self, fraction: float = 0.1) -> tuple[Optional[float], Optional[float]]:
        """Mean δ over the first and the last `fraction` of iterations."""
        deltas = self.deltas()
        if deltas.size == 0:
            return None, None
        width = max(1, int(round(fraction * deltas.size)))
        return float(deltas[:width].mean()), float(deltas[-width:].mean())

    def summary(self) -> dict[str, Any]:
        head, tail = self.head_tail_delta()
        last = self.records[-1] if self.records else None
        return {
            "iterations": len(self.records),
            "stop_reason": self.stop_reason,
            "projected_x0": self.projected_x0,
            "accepted": sum(r.accepted for r in self.records),
            "acceptance_rate": self.acceptance_rate,
            "gated": sum(r.gated for r in self.records),
            "cauchy_failures": sum(r.failure == FailureFlag.CAUCHY for r in self.records),
            "fcd_violations": sum(r.failure == FailureFlag.FCD for r in self.records),
            "zero_pred": sum(r.failure == FailureFlag.ZERO_PRED for r in self.records),
            "dynamic_cap_hits": sum(r.cap_hit for r in self.records),
            "fcd_infimum": self.fcd_infimum,
            "fcd_binds": self.fcd_binds,
            "final_h_model_norm": last.h_model_norm if last else None,
            "final_h_true_norm": self.final_h_true_norm,
            "final_objective": self.final_objective,
            "t_eps": self.t_eps,
            "sum_delta_sq": (
                self.delta_sq_partial_sums[-1] if self.delta_sq_partial_sums else 0.0
            ),
            "head_mean_delta": head,
            "tail_mean_delta": tail,
        }
