# Copyright (c) 2025 ProxSTORM


import abc
import enum
from dataclasses import dataclass, field

import numpy as np

from src.utils.errors import DomainError, ParameterError

from .projection import project_box_budget

# Slack used when testing membership of dom φ; steps are built from convex
# combinations of feasible points and carry rounding of this order.
DOMAIN_TOL = 1e-10


class ProxKind(str, enum.Enum):
    ZERO = "zero"
    L1 = "l1"
    BOX = "box"
    BOX_BUDGET = "box_budget"


class ProxFunction(abc.ABC):
    """
    A proper, closed, convex term φ with an exactly computable proximal map.
    """

    kind: ProxKind
    dimension: int

    @abc.abstractmethod
    def value(self, y: np.ndarray) -> float:
        """φ(y); +inf outside dom φ."""

    @abc.abstractmethod
    def prox(self, x: np.ndarray, r: float) -> np.ndarray:
        """argmin_y φ(y) + ‖y − x‖² / (2r), assuming r > 0 was checked."""

    def decrement(self, x: np.ndarray, s: np.ndarray) -> float:
        """φ(x) − φ(x+s); −inf when x+s leaves dom φ."""
        trial = self.value(x + s)
        if not np.isfinite(trial):
            return float("-inf")
        return self.value(x) - trial

    def in_domain(self, y: np.ndarray) -> bool:
        return bool(np.isfinite(self.value(y)))

    def describe(self) -> dict:
        return {"kind": self.kind.value, "dimension": self.dimension}


def _check_dimension(dimension: int) -> None:
    if int(dimension) < 1:
        raise ParameterError(f"dimension must be a positive integer, got {dimension}")


@dataclass(frozen=True)
class Zero(ProxFunction):
    dimension: int
    kind: ProxKind = field(default=ProxKind.ZERO, init=False)

    def __post_init__(self):
        _check_dimension(self.dimension)

    def value(self, y: np.ndarray) -> float:
        return 0.0

    def prox(self, x: np.ndarray, r: float) -> np.ndarray:
        return np.array(x, dtype=float, copy=True)


@dataclass(frozen=True)
class L1(ProxFunction):
    """φ(y) = λ‖y‖₁."""

    dimension: int
    weight: float
    kind: ProxKind = field(default=ProxKind.L1, init=False)

    def __post_init__(self):
        _check_dimension(self.dimension)
        if not np.isfinite(self.weight) or self.weight < 0:
            raise ParameterError(f"L1 weight must be >= 0, got {self.weight}")

    def value(self, y: np.ndarray) -> float:
        return float(self.weight * np.sum(np.abs(y)))

    def prox(self, x: np.ndarray, r: float) -> np.ndarray:
        # |x_i| == rλ maps to 0 through the max
        return np.sign(x) * np.maximum(np.abs(x) - r * self.weight, 0.0)

    def decrement(self, x: np.ndarray, s: np.ndarray) -> float:
        # coordinatewise, so a short step is not lost against a large ‖x‖₁
        x = np.asarray(x, dtype=float)
        return float(self.weight * np.sum(np.abs(x) - np.abs(x + s)))

    def describe(self) -> dict:
        return {**super().describe(), "weight": self.weight}


def _as_bounds(values, dimension: int) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(values, dtype=float), (dimension,)).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BoxIndicator(ProxFunction):
    """Indicator of {lo ≤ y ≤ hi}."""

    dimension: int
    lo: np.ndarray
    hi: np.ndarray
    kind: ProxKind = field(default=ProxKind.BOX, init=False)

    def __post_init__(self):
        _check_dimension(self.dimension)
        object.__setattr__(self, "lo", _as_bounds(self.lo, self.dimension))
        object.__setattr__(self, "hi", _as_bounds(self.hi, self.dimension))
        if np.any(self.lo > self.hi):
            raise DomainError("BoxIndicator requires lo <= hi in every coordinate")

    def _slack(self) -> np.ndarray:
        return DOMAIN_TOL * np.maximum(1.0, np.maximum(np.abs(self.lo), np.abs(self.hi)))

    def value(self, y: np.ndarray) -> float:
        slack = self._slack()
        if np.all(y >= self.lo - slack) and np.all(y <= self.hi + slack):
            return 0.0
        return float("inf")

    def prox(self, x: np.ndarray, r: float) -> np.ndarray:
        return np.clip(x, self.lo, self.hi)

    def describe(self) -> dict:
        return {**super().describe(), "lo": self.lo.tolist(), "hi": self.hi.tolist()}


@dataclass(frozen=True, eq=False)
class BoxBudgetIndicator(ProxFunction):
    """Indicator of {lo ≤ y ≤ hi, wᵀy = c}."""

    dimension: int
    lo: np.ndarray
    hi: np.ndarray
    weights: np.ndarray
    budget: float
    kind: ProxKind = field(default=ProxKind.BOX_BUDGET, init=False)

    def __post_init__(self):
        _check_dimension(self.dimension)
        object.__setattr__(self, "lo", _as_bounds(self.lo, self.dimension))
        object.__setattr__(self, "hi", _as_bounds(self.hi, self.dimension))
        object.__setattr__(
            self, "weights", _as_bounds(self.weights, self.dimension)
        )
        if np.any(self.lo > self.hi):
            raise DomainError("BoxBudgetIndicator requires lo <= hi in every coordinate")
        if np.any(self.weights <= 0):
            raise ParameterError("BoxBudgetIndicator requires positive weights")
        low = float(self.weights @ self.lo)
        high = float(self.weights @ self.hi)
        if not low <= self.budget <= high:
            raise DomainError(
                f"empty domain: budget {self.budget} outside [{low}, {high}]"
            )

    def value(self, y: np.ndarray) -> float:
        slack = DOMAIN_TOL * np.maximum(
            1.0, np.maximum(np.abs(self.lo), np.abs(self.hi))
        )
        if np.any(y < self.lo - slack) or np.any(y > self.hi + slack):
            return float("inf")
        if abs(float(self.weights @ y) - self.budget) > DOMAIN_TOL * max(
            1.0, abs(self.budget)
        ):
            return float("inf")
        return 0.0

    def prox(self, x: np.ndarray, r: float) -> np.ndarray:
        return project_box_budget(x, self.weights, self.budget, self.lo, self.hi)

    def describe(self) -> dict:
        return {
            **super().describe(),
            "lo": self.lo.tolist(),
            "hi": self.hi.tolist(),
            "weights": self.weights.tolist(),
            "budget": self.budget,
        }
