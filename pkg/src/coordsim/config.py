"""Scenario configuration: task-width laws, coupling laws and the run config."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple, Union

import numpy as np

from .costs import ConfigError, CostParams, CouplingForm, _check, _finite
from .ecosystem import Activation, DriftParams, Regime
from .harness import CheckVocabulary, HarnessParams


class VerificationMode(str, enum.Enum):
    PARAMETRIC = "parametric"
    MECHANISTIC = "mechanistic"


# --- task width laws; every draw is capped at the current provider count ---

@dataclass(frozen=True)
class ConstantWidth:
    k: int = 4
    type = "constant"

    def __post_init__(self):
        _check(isinstance(self.k, (int, np.integer)) and self.k >= 1, "k",
               f"must be an integer >= 1, got {self.k!r}")

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(size, min(self.k, n), dtype=np.int64)

    def mean(self, n: int) -> float:
        return float(min(self.k, n))


@dataclass(frozen=True)
class PoissonPlusOne:
    lam: float = 2.0
    type = "poisson_plus_one"

    def __post_init__(self):
        _check(_finite(self.lam) and self.lam > 0, "lam", f"must be > 0, got {self.lam!r}")

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        return np.minimum(rng.poisson(self.lam, size) + 1, n).astype(np.int64)


@dataclass(frozen=True)
class TruncatedZipf:
    """P(k) proportional to k**-s on 1..n."""
    s: float = 2.0
    type = "truncated_zipf"

    def __post_init__(self):
        _check(_finite(self.s) and self.s > 0, "s", f"must be > 0, got {self.s!r}")

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        w = np.arange(1, n + 1, dtype=float) ** -self.s
        cdf = np.cumsum(w / w.sum())
        cdf[-1] = 1.0
        return (np.searchsorted(cdf, rng.random(size), side="right") + 1).astype(np.int64)


# --- coupling intensity laws ---

@dataclass(frozen=True)
class ConstantQ:
    q: float = 0.0
    type = "constant"

    def __post_init__(self):
        _check(_finite(self.q) and 0 <= self.q <= 1, "q", f"must lie in [0, 1], got {self.q!r}")

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(size, float(self.q))


@dataclass(frozen=True)
class BetaQ:
    alpha: float = 1.0
    beta: float = 9.0
    type = "beta"

    def __post_init__(self):
        _check(_finite(self.alpha) and self.alpha > 0, "alpha", "must be > 0")
        _check(_finite(self.beta) and self.beta > 0, "beta", "must be > 0")

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        return rng.beta(self.alpha, self.beta, size)


@dataclass(frozen=True)
class ScalingLinear:
    """q(n) = c_q * n / n_ref, optionally capped.

    Uncapped by default so the coupling term keeps growing in proportion to n;
    ``cap=1`` keeps q a probability.
    """
    c_q: float = 1.0
    n_ref: float = 100.0
    cap: Optional[float] = None
    type = "scaling_linear"

    def __post_init__(self):
        _check(_finite(self.c_q) and self.c_q >= 0, "c_q", "must be >= 0")
        _check(_finite(self.n_ref) and self.n_ref >= 1, "n_ref", f"must be >= 1, got {self.n_ref!r}")
        if self.cap is not None:
            _check(_finite(self.cap) and self.cap >= 0, "cap", "must be >= 0")

    def intensity(self, n: int) -> float:
        q = self.c_q * n / self.n_ref
        return q if self.cap is None else min(self.cap, q)

    def sample(self, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(size, self.intensity(n))


WidthDist = Union[ConstantWidth, PoissonPlusOne, TruncatedZipf]
CouplingModel = Union[ConstantQ, BetaQ, ScalingLinear]
WIDTH_TYPES = {c.type: c for c in (ConstantWidth, PoissonPlusOne, TruncatedZipf)}
COUPLING_TYPES = {c.type: c for c in (ConstantQ, BetaQ, ScalingLinear)}


@dataclass(frozen=True)
class ScenarioConfig:
    regime: Regime = Regime.HOURGLASS
    activation: Activation = Activation.EAGER
    periods: int = 10
    initial_providers: int = 0
    growth: Union[int, Tuple[int, ...]] = 1
    tasks_per_period: int = 100
    width_dist: WidthDist = field(default_factory=ConstantWidth)
    coupling_model: CouplingModel = field(default_factory=ConstantQ)
    verification_mode: VerificationMode = VerificationMode.PARAMETRIC
    cost_params: CostParams = field(default_factory=CostParams)
    drift: DriftParams = field(default_factory=DriftParams)
    vocab: CheckVocabulary = field(default_factory=CheckVocabulary)
    harness: HarnessParams = field(default_factory=HarnessParams)
    coupling_form: CouplingForm = CouplingForm.DEFAULT
    seed: int = 0

    def __post_init__(self):
        try:
            for name, enum_cls in (("regime", Regime), ("activation", Activation),
                                   ("verification_mode", VerificationMode),
                                   ("coupling_form", CouplingForm)):
                object.__setattr__(self, name, enum_cls(getattr(self, name)))
        except ValueError as exc:
            raise ConfigError(name, str(exc)) from None
        if isinstance(self.growth, (list, tuple)):
            object.__setattr__(self, "growth", tuple(int(g) for g in self.growth))
            _check(all(g >= 0 for g in self.growth), "growth", "entries must be >= 0")
        else:
            _check(isinstance(self.growth, (int, np.integer)) and self.growth >= 0, "growth",
                   f"must be a nonnegative integer or list of them, got {self.growth!r}")
        for name in ("periods", "initial_providers", "tasks_per_period"):
            v = getattr(self, name)
            _check(isinstance(v, (int, np.integer)) and not isinstance(v, bool), name,
                   f"must be an integer, got {v!r}")
        _check(self.periods >= 1, "periods", "must be >= 1")
        _check(self.initial_providers >= 0, "initial_providers", "must be >= 0")
        _check(self.tasks_per_period >= 0, "tasks_per_period", "must be >= 0")
        _check(isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2 ** 64, "seed",
               "must be an unsigned 64-bit integer")
        _check(isinstance(self.width_dist, tuple(WIDTH_TYPES.values())), "width_dist",
               "unknown width distribution")
        _check(isinstance(self.coupling_model, tuple(COUPLING_TYPES.values())),
               "coupling_model", "unknown coupling model")
        if self.tasks_per_period > 0:
            _check(self.initial_providers + self.growth_at(0) >= 1, "growth",
                   "no providers exist when the first tasks are sampled")

    def growth_at(self, period: int) -> int:
        if isinstance(self.growth, tuple):
            return self.growth[period] if period < len(self.growth) else 0
        return int(self.growth)

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


def with_path(config, path: str, value):
    """Copy of a nested frozen dataclass with the dotted ``path`` set to ``value``."""
    head, _, rest = path.partition(".")
    if not hasattr(config, head):
        raise ConfigError(path, "no such field")
    if rest:
        try:
            value = with_path(getattr(config, head), rest, value)
        except ConfigError as exc:
            raise exc.prefixed(head) from None
    return replace(config, **{head: value})
