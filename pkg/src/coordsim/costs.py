"""Closed-form coordination cost terms.

Everything here is a pure function of its arguments. Costs are dimensionless
"cost units".
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional


class ConfigError(ValueError):
    """Invalid parameter value. ``field`` is a dotted path to the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")

    def prefixed(self, prefix: str) -> "ConfigError":
        if not prefix:
            return self
        return ConfigError(f"{prefix}.{self.field}", self.message)


def _check(cond: bool, field: str, message: str) -> None:
    if not cond:
        raise ConfigError(field, message)


def _finite(x) -> bool:
    try:
        return math.isfinite(x)
    except TypeError:
        return False


class CouplingForm(str, enum.Enum):
    DEFAULT = "default"  # d * q * k^2
    STRICT_PAIRWISE = "strict"  # d * m^2


@dataclass(frozen=True)
class CostParams:
    a: float = 1.0  # per maintained integration edge, per period
    b: float = 1.0
    gamma: float = 0.5
    d: float = 1.0
    g: float = 1.0  # governance, per task

    def __post_init__(self):
        for name in ("a", "b", "d", "g"):
            v = getattr(self, name)
            _check(_finite(v) and v >= 0, name, f"must be a finite number >= 0, got {v!r}")
        _check(_finite(self.gamma) and 0 <= self.gamma <= 2, "gamma",
               f"must lie in [0, 2], got {self.gamma!r}")


@dataclass(frozen=True)
class TaskSample:
    """One task: its width k, the number of coupled providers m, and optionally
    the coupling intensity q it was drawn with.

    When ``intensity`` is None, q is m/k. A drawn intensity is kept separately
    because rounding q*k to an integer would otherwise quantize the coupling
    term, and because linearly scaling coupling models can push q above 1.
    """

    id: int
    width: int
    coupled: int
    intensity: Optional[float] = None
    providers: tuple = ()

    def __post_init__(self):
        _check(int(self.width) == self.width and self.width >= 0, "width",
               f"must be an integer >= 0, got {self.width!r}")
        _check(int(self.coupled) == self.coupled and 0 <= self.coupled <= self.width,
               "coupled", f"must satisfy 0 <= coupled <= width, got {self.coupled!r}")
        if self.intensity is not None:
            _check(_finite(self.intensity) and self.intensity >= 0, "intensity",
                   f"must be finite and >= 0, got {self.intensity!r}")

    @property
    def q(self) -> float:
        if self.intensity is not None:
            return float(self.intensity)
        if self.width == 0:
            return 0.0
        return self.coupled / self.width


@dataclass(frozen=True)
class CostBreakdown:
    integration: float = 0.0
    verification_local: float = 0.0
    verification_coupling: float = 0.0
    governance: float = 0.0

    @property
    def total(self) -> float:
        return (self.integration + self.verification_local
                + self.verification_coupling + self.governance)

    @property
    def verification(self) -> float:
        return self.verification_local + self.verification_coupling

    def __add__(self, other: "CostBreakdown") -> "CostBreakdown":
        if not isinstance(other, CostBreakdown):
            return NotImplemented
        return CostBreakdown(
            self.integration + other.integration,
            self.verification_local + other.verification_local,
            self.verification_coupling + other.verification_coupling,
            self.governance + other.governance,
        )

    def as_dict(self) -> dict:
        return {
            "integration": self.integration,
            "verification_local": self.verification_local,
            "verification_coupling": self.verification_coupling,
            "governance": self.governance,
            "total": self.total,
        }


@dataclass(frozen=True)
class LiabilityParams:
    c_compute: float
    r: float  # cost of an error
    p: float  # probability of incorrect execution

    def __post_init__(self):
        _check(_finite(self.c_compute) and self.c_compute >= 0, "c_compute", "must be >= 0")
        _check(_finite(self.r) and self.r >= 0, "r", "must be >= 0")
        _check(_finite(self.p) and 0 <= self.p <= 1, "p", "must lie in [0, 1]")


def integration_cost(edge_count: int, params: CostParams) -> float:
    return params.a * edge_count


def local_verification_cost(width: int, params: CostParams) -> float:
    # 0**gamma is taken as 0 for every gamma, including gamma == 0
    if width == 0:
        return 0.0
    return params.b * width ** params.gamma


def coupling_verification_cost(task: TaskSample, params: CostParams,
                               form: CouplingForm = CouplingForm.DEFAULT) -> float:
    """Cross-provider invariant checking cost of one task.

    ``DEFAULT`` is d*q*k^2 (equal to d*m*k when q = m/k); ``STRICT_PAIRWISE``
    charges d*m^2, one unit per coupled pair.
    """
    form = CouplingForm(form)
    if form is CouplingForm.STRICT_PAIRWISE:
        return params.d * task.coupled ** 2
    return params.d * task.q * task.width ** 2


def total_cost(edge_count: int, tasks: Iterable[TaskSample], params: CostParams,
               form: CouplingForm = CouplingForm.DEFAULT) -> CostBreakdown:
    local = []
    coupling = []
    count = 0
    for t in tasks:
        local.append(local_verification_cost(t.width, params))
        coupling.append(coupling_verification_cost(t, params, form))
        count += 1
    return CostBreakdown(
        integration=integration_cost(edge_count, params),
        verification_local=math.fsum(local),
        verification_coupling=math.fsum(coupling),
        governance=params.g * count,
    )


def cost_per_task(breakdown: CostBreakdown, task_count: int) -> float:
    if task_count <= 0:
        raise ValueError("undefined ratio for empty period")
    return breakdown.total / task_count


def marginal_cost_of_action(liab: LiabilityParams) -> float:
    """Compute cost plus expected liability; the r*p term does not shrink with compute."""
    return liab.c_compute + liab.r * liab.p
