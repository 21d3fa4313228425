# Copyright (c) 2025 ProxSTORM


import enum
import math
import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping, Optional

from src.utils.errors import ParameterError
from src.utils.logger import get_logger

logger = get_logger("config")

ENV_PREFIX = "PROXSTORM_"


class CredMode(str, enum.Enum):
    SHARED = "shared"  # reuse the model's samples
    INDEPENDENT = "independent"  # fresh samples from a separate stream


class SamplingMode(str, enum.Enum):
    FIXED = "fixed"
    DYNAMIC = "dynamic"
    FULL_POOL = "full_pool"
    SAA = "saa"  # one batch drawn at k = 0, reused every iteration


def nu_ratio_lower_bound(
    gamma: float,
    eta1: float,
    eta: float,
    kappa_fcd: float,
    eta2: float,
    kappa_bmh: float,
) -> float:
    """Right-hand side of the bound ν/(1−ν) > (γ²−γ⁻²)/((η₁−η)κ_fcd·min{η₂/κ_bmh, 1})."""
    return (gamma**2 - gamma**-2) / (
        (eta1 - eta) * kappa_fcd * min(eta2 / kappa_bmh, 1.0)
    )


@dataclass(kw_only=True, frozen=True)
class TrustRegionConfig:
    """Parameters of the stochastic proximal trust-region loop."""

    eta1: float = 0.5  # acceptance threshold on cred/pred
    eta2: float = 5e-5  # gate: ‖h_k‖ ≥ eta2·δ_k
    gamma: float = 5.0  # radius expansion/contraction factor
    ell: int = 15  # δ_max = gamma**ell * delta0
    delta0: float = 0.32768  # with gamma=5, ell=15: δ_max = 1e10
    delta_min: float = 1e-100  # the run stops once δ_k falls below this
    eta: float = 0.1  # cred accuracy tolerance, < min{eta1, 1 - eta1}
    r: float = 1.0  # proximal gradient parameter
    kappa_fcd: float = 0.05
    kappa_bmh: float = 1e6
    kappa_grad: float = 1.0
    nu: Optional[float] = None  # derived from the Lyapunov bound when omitted
    max_iters: int = 300
    epsilon_stop: float = 0.0
    n_samples_model: int = 100
    n_samples_cred: int = 100
    cred_mode: CredMode = CredMode.SHARED
    sampling_mode: SamplingMode = SamplingMode.FIXED
    alpha: float = 0.9  # dynamic sampling target probability
    n_max: int = 100_000  # dynamic sampling cap
    spg_max_iters: int = 2
    diagnostics: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cred_mode", CredMode(self.cred_mode))
        object.__setattr__(self, "sampling_mode", SamplingMode(self.sampling_mode))
        self._validate()
        self._resolve_nu()

    def _validate(self) -> None:
        checks = [
            (0.0 < self.eta1 < 1.0, "0 < eta1 < 1"),
            (self.eta2 > 0.0, "eta2 > 0"),
            (self.gamma > 1.0, "gamma > 1"),
            (isinstance(self.ell, int) and self.ell >= 0, "ell is a nonnegative integer"),
            (self.delta0 > 0.0, "delta0 > 0"),
            (0.0 < self.delta_min <= self.delta0, "0 < delta_min <= delta0"),
            (
                0.0 < self.eta < min(self.eta1, 1.0 - self.eta1),
                "0 < eta < min{eta1, 1 - eta1}",
            ),
            (self.r > 0.0, "r > 0"),
            (self.kappa_fcd > 0.0, "kappa_fcd > 0"),
            (self.kappa_bmh > 1.0, "kappa_bmh > 1"),
            (self.kappa_grad > 0.0, "kappa_grad > 0"),
            (self.nu is None or 0.0 < self.nu < 1.0, "0 < nu < 1"),
            (self.max_iters >= 0, "max_iters >= 0"),
            (self.epsilon_stop >= 0.0, "epsilon_stop >= 0"),
            (self.n_samples_model >= 1, "n_samples_model >= 1"),
            (self.n_samples_cred >= 1, "n_samples_cred >= 1"),
            (0.0 < self.alpha < 1.0, "0 < alpha < 1"),
            (self.n_max >= 1, "n_max >= 1"),
            (self.spg_max_iters >= 0, "spg_max_iters >= 0"),
        ]
        for ok, inequality in checks:
            if not ok:
                raise ParameterError(f"invalid trust-region configuration: {inequality}")
        if self.sampling_mode is SamplingMode.DYNAMIC and self.n_samples_model < 2:
            raise ParameterError(
                "invalid trust-region configuration: dynamic sampling needs n_samples_model >= 2"
            )

    def _resolve_nu(self) -> None:
        bound = self.nu_ratio_bound
        if self.nu is None:
            ratio = 2.0 * bound
            nu = ratio / (1.0 + ratio)
            if nu >= 1.0:
                logger.warning(
                    "Lyapunov weight rounds to 1 in double precision",
                    ratio_bound=bound,
                )
                nu = math.nextafter(1.0, 0.0)
            object.__setattr__(self, "nu", nu)
            return
        if self.nu / (1.0 - self.nu) > bound:
            return
        message = (
            f"nu={self.nu} violates nu/(1-nu) > {bound:.6e} "
            "(gamma^2-gamma^-2)/((eta1-eta)*kappa_fcd*min{eta2/kappa_bmh,1})"
        )
        if self.diagnostics:
            raise ParameterError(message)
        logger.warning(message)

    @property
    def nu_ratio_bound(self) -> float:
        return nu_ratio_lower_bound(
            self.gamma, self.eta1, self.eta, self.kappa_fcd, self.eta2, self.kappa_bmh
        )

    @property
    def delta_max(self) -> float:
        return self.delta_at(self.ell)

    def delta_at(self, exponent: int) -> float:
        """Radius δ₀·γ^j on the lattice of admissible radii."""
        return self.delta0 * self.gamma ** int(exponent)

    def to_dict(self) -> dict[str, Any]:
        return {
            k: (v.value if isinstance(v, enum.Enum) else v)
            for k, v in asdict(self).items()
        }

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.init]

    @classmethod
    def from_mapping(
        cls, values: Optional[Mapping[str, Any]] = None, use_env: bool = True
    ) -> "TrustRegionConfig":
        """Create a config from a mapping; PROXSTORM_<FIELD> variables take precedence."""
        values = dict(values or {})
        unknown = set(values) - set(cls.field_names())
        if unknown:
            raise ParameterError(f"unknown trust-region parameters: {sorted(unknown)}")
        defaults = cls()
        if use_env:
            for name in cls.field_names():
                raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
                if raw is not None:
                    values[name] = _coerce(raw, getattr(defaults, name))
        return cls(**values)


def _coerce(raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, enum.Enum):
        return type(default)(raw)
    if isinstance(default, int):
        return int(raw)
    return float(raw)
