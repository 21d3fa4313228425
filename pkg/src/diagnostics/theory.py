# Copyright (c) 2025 ProxSTORM


from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from src.config.configuration import TrustRegionConfig, nu_ratio_lower_bound
from src.utils.errors import ParameterError


@dataclass(frozen=True)
class TheoryConstants:
    """
    Analysis-side constants derived from the algorithm parameters.

    They are reported and checked, never fed back into the iteration.
    """

    kappa_val: float
    zeta: float
    nu_rhs: float
    theta_lower: float
    nu: float
    L: float
    kappa_bmh: float
    kappa_grad: float
    kappa_fcd: float
    eta: float
    eta1: float
    eta2: float
    gamma: float
    deterministic: bool = False

    @property
    def nu_admissible(self) -> bool:
        return self.nu / (1.0 - self.nu) > self.nu_rhs

    def ledger(self, beta: float, smooth: bool) -> dict[str, Optional[float]]:
        """
        Proof constants given an accuracy rate β for the computed reduction.

        c₁ and c₂ are only known for φ ≡ 0 and are None otherwise.
        """
        nu, gamma = self.nu, self.gamma
        return {
            "c1": 0.5 * self.L * (1.0 - beta) if smooth else None,
            "c2": (1.0 - beta) if smooth else None,
            "c4": (1.0 - nu) * (1.0 - gamma**-2),
            "c5": 2.0 * nu * self.kappa_val + (1.0 - nu) * (gamma**2 - 1.0),
            "c6": self.kappa_fcd
            - (2.0 * self.kappa_val + self.kappa_fcd * self.kappa_grad) / self.zeta,
        }

    def rates_feasible(
        self, alpha: float, beta: float, smooth: bool
    ) -> Optional[bool]:
        """
        Whether (α, β) satisfy (αβ − ½)/(1 − α) > (c₁ + c₂ζ)/(c₆ζ).

        None when c₁, c₂ are unknown (nonsmooth φ).
        """
        ledger = self.ledger(beta, smooth)
        if ledger["c1"] is None or ledger["c6"] <= 0.0:
            return None
        slack = alpha * beta - 0.5
        if alpha >= 1.0:
            return slack > 0.0
        rhs = (ledger["c1"] + ledger["c2"] * self.zeta) / (ledger["c6"] * self.zeta)
        return slack / (1.0 - alpha) > rhs

    def to_dict(self) -> dict:
        return {**asdict(self), "nu_admissible": self.nu_admissible}


def theory_constants(
    config: TrustRegionConfig, L: float, deterministic: bool = False
) -> TheoryConstants:
    """
    κ_val, the smallest admissible ζ, the ν bound and Θ's lower bound.

    With exact models (deterministic) κ_val is taken as 0.
    """
    if config.eta1 + config.eta >= 1.0:
        raise ParameterError(
            f"eta1 + eta = {config.eta1 + config.eta} >= 1 makes zeta undefined"
        )
    if L is None or not L >= 0.0:
        raise ParameterError(f"Lipschitz constant must be known and >= 0, got {L}")
    kappa_val = (
        0.0
        if deterministic
        else 0.25 * (L + config.kappa_bmh + 2.0 * config.kappa_grad)
    )
    zeta = config.kappa_grad + max(
        config.eta2,
        4.0
        * kappa_val
        / ((1.0 - config.eta1 - config.eta) * min(config.kappa_fcd, 1.0)),
    )
    return TheoryConstants(
        kappa_val=kappa_val,
        zeta=zeta,
        nu_rhs=nu_ratio_lower_bound(
            config.gamma,
            config.eta1,
            config.eta,
            config.kappa_fcd,
            config.eta2,
            config.kappa_bmh,
        ),
        theta_lower=0.5 * (1.0 - config.nu) * (1.0 - config.gamma**-2),
        nu=config.nu,
        L=L,
        kappa_bmh=config.kappa_bmh,
        kappa_grad=config.kappa_grad,
        kappa_fcd=config.kappa_fcd,
        eta=config.eta,
        eta1=config.eta1,
        eta2=config.eta2,
        gamma=config.gamma,
        deterministic=deterministic,
    )


def lyapunov(f_plus_phi: float, delta: float, nu: float) -> float:
    """Ψ = ν(f + φ) + (1 − ν)δ²."""
    if not 0.0 < nu < 1.0:
        raise ParameterError(f"nu must lie in (0, 1), got {nu}")
    return nu * f_plus_phi + (1.0 - nu) * delta**2


def lyapunov_increment(
    objective_change: float, delta: float, delta_next: float, nu: float
) -> float:
    """Ψ_{k+1} − Ψ_k from its parts, without cancellation against ν(f + φ)."""
    if not 0.0 < nu < 1.0:
        raise ParameterError(f"nu must lie in (0, 1), got {nu}")
    return nu * objective_change + (1.0 - nu) * (delta_next**2 - delta**2)


def lyapunov_violations(
    records: Iterable, deltas_next: Iterable[float], nu: float, theta: float
) -> list[int]:
    """
    Iterations where Ψ_{k+1} − Ψ_k > −Θδ_k².

    The objective change of iteration k is −ared_k on accepted steps and 0
    otherwise, so this needs the true reduction.
    """
    violations = []
    for record, delta_next in zip(records, deltas_next):
        if record.accepted:
            if record.ared is None:
                raise ParameterError("pointwise Lyapunov check needs ared")
            change = -record.ared
        else:
            change = 0.0
        increment = lyapunov_increment(change, record.delta, delta_next, nu)
        if increment > -theta * record.delta**2:
            violations.append(record.k)
    return violations


