# Copyright (c) 2025 ProxSTORM


from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.utils.errors import DiagnosticError

from .theory import TheoryConstants


def event_indicators(
    true_grad: np.ndarray,
    model_grad: np.ndarray,
    delta: float,
    kappa_grad: float,
    ared: Optional[float],
    cred: Optional[float],
    pred: Optional[float],
    eta: float,
) -> tuple[bool, bool]:
    """
    I: the model gradient is within κ_grad·δ of the true gradient.
    J: |ared − cred| ≤ η·pred; vacuously true when no step was computed.
    """
    accurate_model = bool(
        np.linalg.norm(np.asarray(model_grad) - np.asarray(true_grad))
        <= kappa_grad * delta
    )
    if pred is None or ared is None or cred is None or not pred > 0.0:
        return accurate_model, True
    return accurate_model, bool(abs(ared - cred) <= eta * pred)


@dataclass(frozen=True)
class AssumptionRates:
    alpha_hat: float
    beta_hat: float
    n_rows: int
    product_above_half: bool
    rates_feasible: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "alpha_hat": self.alpha_hat,
            "beta_hat": self.beta_hat,
            "n_rows": self.n_rows,
            "product_above_half": self.product_above_half,
            "rates_feasible": self.rates_feasible,
        }


def assumption_rates(
    records: Sequence,
    constants: Optional[TheoryConstants] = None,
    smooth: bool = False,
) -> AssumptionRates:
    """Empirical frequencies of the model (I_k) and reduction (J_k) accuracy events."""
    if len(records) == 0:
        raise DiagnosticError("cannot estimate accuracy rates from an empty trace")
    i_flags = [r.I_k for r in records if r.I_k is not None]
    j_flags = [r.J_k for r in records if r.J_k is not None]
    if not i_flags or not j_flags:
        raise DiagnosticError("trace carries no I_k/J_k columns; a true oracle is required")
    alpha_hat = float(np.mean(i_flags))
    beta_hat = float(np.mean(j_flags))
    return AssumptionRates(
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
        n_rows=len(i_flags),
        product_above_half=alpha_hat * beta_hat > 0.5,
        rates_feasible=(
            constants.rates_feasible(alpha_hat, beta_hat, smooth)
            if constants is not None
            else None
        ),
    )
