"""Firm boundaries under knowledge decay.

A firm holds S capability units in a domain with knowledge velocity lam.
Keeping them current costs ``kappa * lam * S**phi`` per period (phi > 1), and
the alternative is buying a unit from an external specialist at the
delegation price ``c_del``. Every period each firm compares the marginal
internal cost of its last unit (and of one more unit) with ``c_del`` and
sheds, absorbs or holds one unit. Fast domains settle at small sizes, slow
ones keep consolidating, and the firm-size power law moves accordingly.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional

import numpy as np

from . import rng as rngmod
from .config import ScenarioConfig
from .costs import ConfigError, _check, _finite
from .powerlaw import PowerLawFit, fit_power_law


@dataclass(frozen=True)
class Firm:
    id: int
    size: int
    velocity: float

    def __post_init__(self):
        _check(self.size >= 0, "size", "must be >= 0")
        _check(_finite(self.velocity) and self.velocity >= 0, "velocity", "must be >= 0")


@dataclass(frozen=True)
class SectorConfig:
    """One sector. ``delegation_cost`` may be given directly; otherwise it is
    the steady-state cost per task of ``reference`` times ``units_per_task``."""

    initial_firms: int = 1000
    alpha0: float = 2.0
    velocity: float = 1.0
    velocity_high: Optional[float] = None  # set for a two-point mixture
    high_share: float = 0.0
    kappa: float = 1.0
    phi: float = 1.3
    delegation_cost: Optional[float] = None
    reference: Optional[ScenarioConfig] = None
    units_per_task: float = 1.0
    entry_rate: float = 5.0
    periods: int = 200
    fit_xmin: float = 1.0

    def __post_init__(self):
        _check(isinstance(self.initial_firms, (int, np.integer)) and self.initial_firms >= 0,
               "initial_firms", "must be an integer >= 0")
        _check(_finite(self.alpha0) and self.alpha0 > 1, "alpha0", "must be > 1")
        _check(_finite(self.velocity) and self.velocity >= 0, "velocity", "must be >= 0")
        if self.velocity_high is not None:
            _check(_finite(self.velocity_high) and self.velocity_high >= 0, "velocity_high",
                   "must be >= 0")
        _check(_finite(self.high_share) and 0 <= self.high_share <= 1, "high_share",
               "must lie in [0, 1]")
        _check(_finite(self.kappa) and self.kappa > 0, "kappa", "must be > 0")
        _check(_finite(self.phi) and self.phi > 1, "phi", "must be > 1")
        if self.delegation_cost is not None:
            _check(_finite(self.delegation_cost) and self.delegation_cost >= 0,
                   "delegation_cost", "must be >= 0")
        elif self.reference is None:
            raise ConfigError("delegation_cost", "give delegation_cost or a reference scenario")
        _check(_finite(self.units_per_task) and self.units_per_task >= 0, "units_per_task",
               "must be >= 0")
        _check(_finite(self.entry_rate) and self.entry_rate >= 0, "entry_rate", "must be >= 0")
        _check(isinstance(self.periods, (int, np.integer)) and self.periods >= 1, "periods",
               "must be an integer >= 1")
        _check(_finite(self.fit_xmin) and self.fit_xmin > 0, "fit_xmin", "must be > 0")

    def c_del(self) -> float:
        if self.delegation_cost is not None:
            return float(self.delegation_cost)
        return reference_delegation_cost(self.reference, self.units_per_task)


@functools.lru_cache(maxsize=64)
def reference_delegation_cost(reference: ScenarioConfig, units_per_task: float) -> float:
    """Mean cost per task over the post-warm-up periods of ``reference``, times ``units_per_task``."""
    from .engine import run

    trace = run(reference)
    skip = int(math.floor(0.1 * len(trace.records)))
    recs = [r for r in trace.records[skip:] if r.T > 0]
    if not recs:
        raise ValueError("reference scenario has no tasks to price delegation")
    return units_per_task * float(np.mean([r.breakdown.total / r.T for r in recs]))


def internal_cost(size, velocity, kappa: float, phi: float):
    return kappa * velocity * np.power(size, phi)


def marginal_internal_cost(size, velocity, kappa: float, phi: float):
    """Cost added by the size-th unit: c(S) - c(S-1). Zero for S <= 0."""
    s = np.asarray(size, dtype=float)
    out = kappa * np.asarray(velocity, dtype=float) * (
        np.power(s, phi) - np.power(np.maximum(s - 1, 0), phi))
    out = np.where(s <= 0, 0.0, out)
    return out if out.ndim else float(out)


def step_sizes(sizes: np.ndarray, velocities: np.ndarray, kappa: float, phi: float,
               c_del: float) -> np.ndarray:
    """Vectorized ``firm_step`` over many firms (synchronous)."""
    s = np.asarray(sizes, dtype=np.int64)
    m_now = marginal_internal_cost(s, velocities, kappa, phi)
    m_next = marginal_internal_cost(s + 1, velocities, kappa, phi)
    new = np.where(m_now > c_del, s - 1, np.where(m_next < c_del, s + 1, s))
    return np.where(s <= 0, 0, new)


def firm_step(firm: Firm, sector: SectorConfig, c_del: Optional[float] = None) -> Firm:
    """Shed, absorb or hold one unit. Ties hold; exited firms stay at 0."""
    c = sector.c_del() if c_del is None else c_del
    S = firm.size
    if S <= 0:
        return firm
    if marginal_internal_cost(S, firm.velocity, sector.kappa, sector.phi) > c:
        return replace(firm, size=S - 1)
    if marginal_internal_cost(S + 1, firm.velocity, sector.kappa, sector.phi) < c:
        return replace(firm, size=S + 1)
    return firm


def equilibrium_size(velocity: float, kappa: float, phi: float, c_del: float) -> float:
    """Size S* at which a firm holds: marginal(S*) <= c_del <= marginal(S*+1).

    0 when even one unit costs more than delegation; inf when internal
    maintenance is free (velocity 0) and delegation is not.
    """
    if velocity == 0:
        return math.inf if c_del > 0 else 0.0
    if kappa * velocity > c_del:
        return 0.0
    # marginal(S) ~ kappa*lam*phi*S^(phi-1); start below the root and walk up
    s = max(1, int((c_del / (kappa * velocity * phi)) ** (1 / (phi - 1))) - 2)
    while s > 1 and marginal_internal_cost(s, velocity, kappa, phi) > c_del:
        s -= 1
    while marginal_internal_cost(s + 1, velocity, kappa, phi) < c_del:
        s += 1
    return float(s)


def _draw_velocities(sector: SectorConfig, count: int, gen) -> np.ndarray:
    if sector.velocity_high is None:
        return np.full(count, float(sector.velocity))
    high = gen.random(count) < sector.high_share
    return np.where(high, float(sector.velocity_high), float(sector.velocity))


def initial_sizes(sector: SectorConfig, gen) -> np.ndarray:
    """Integer sizes floor(x) with x drawn from a continuous power law on [1, inf)."""
    u = gen.random(sector.initial_firms)
    x = (1.0 - u) ** (-1.0 / (sector.alpha0 - 1.0))
    return np.floor(np.minimum(x, 2.0 ** 62)).astype(np.int64)


@dataclass
class SectorRun:
    snapshots: List[np.ndarray]  # sizes after each period; index 0 is the initial state
    velocities: np.ndarray  # velocities of the firms alive at the end
    c_del: float


def sector_run(sector: SectorConfig, rng: np.random.Generator,
               c_del: Optional[float] = None) -> SectorRun:
    c = sector.c_del() if c_del is None else c_del
    sizes = initial_sizes(sector, rng)
    vel = _draw_velocities(sector, len(sizes), rng)
    snaps = [sizes.copy()]
    for _ in range(sector.periods):
        sizes = step_sizes(sizes, vel, sector.kappa, sector.phi, c)
        alive = sizes > 0
        sizes, vel = sizes[alive], vel[alive]
        k = int(rng.poisson(sector.entry_rate)) if sector.entry_rate > 0 else 0
        if k:
            sizes = np.concatenate([sizes, np.ones(k, dtype=np.int64)])
            vel = np.concatenate([vel, _draw_velocities(sector, k, rng)])
        snaps.append(sizes.copy())
    return SectorRun(snaps, vel, c)


def log2_histogram(sizes) -> Dict[str, int]:
    """Counts per bin [2^j, 2^(j+1))."""
    s = np.asarray(sizes)
    s = s[s > 0]
    if len(s) == 0:
        return {}
    bins = np.floor(np.log2(s)).astype(int)
    out = {}
    for j in range(int(bins.max()) + 1):
        out[f"{2 ** j}-{2 ** (j + 1) - 1}"] = int(np.count_nonzero(bins == j))
    return out


_VELOCITY_FIELDS = ("velocity", "velocity_high", "high_share")


def _check_paired(low: SectorConfig, high: SectorConfig):
    for f in fields(SectorConfig):
        if f.name in _VELOCITY_FIELDS:
            continue
        if getattr(low, f.name) != getattr(high, f.name):
            raise ValueError(f"sectors must differ only in velocity (field {f.name!r} differs)")


@dataclass
class SectorOutcome:
    label: str
    before: List[PowerLawFit]
    after: List[PowerLawFit]
    deltas: List[float]
    mean_delta: float
    ci: tuple
    histogram_before: Dict[str, int]
    histogram_after: Dict[str, int]
    mean_size_before: float
    mean_size_after: float


@dataclass
class UnbundlingResult:
    low: SectorOutcome
    high: SectorOutcome
    c_del: float
    bifurcation: bool
    seeds: List[int] = field(default_factory=list)


def unbundling_experiment(low_velocity: SectorConfig, high_velocity: SectorConfig, seeds,
                          n_boot: int = 2000) -> UnbundlingResult:
    """Fit the size exponent before and after each sector run.

    Both sectors of a seed share one random stream, so they start from the
    same firms. The bifurcation verdict requires the fast sector's mean change
    in exponent to be positive with a 95% bootstrap interval above 0, and the
    slow sector's change not to exceed it.
    """
    from .experiments import bootstrap_mean_ci

    _check_paired(low_velocity, high_velocity)
    seeds = [int(s) for s in seeds]
    c = low_velocity.c_del()
    outcomes = {}
    for label, sector in (("low", low_velocity), ("high", high_velocity)):
        before, after, finals, firsts = [], [], [], []
        for s in seeds:
            res = sector_run(sector, rngmod.substream(s, rngmod.SECTOR), c)
            before.append(fit_power_law(res.snapshots[0], sector.fit_xmin))
            after.append(fit_power_law(res.snapshots[-1], sector.fit_xmin))
            firsts.append(res.snapshots[0])
            finals.append(res.snapshots[-1])
        deltas = [a.alpha_hat - b.alpha_hat for a, b in zip(after, before)]
        ci = bootstrap_mean_ci(deltas, seed=seeds[0], n_boot=n_boot)
        first_all = np.concatenate(firsts)
        final_all = np.concatenate(finals)
        outcomes[label] = SectorOutcome(
            label, before, after, deltas, float(np.mean(deltas)), ci,
            log2_histogram(first_all), log2_histogram(final_all),
            float(first_all.mean()), float(final_all.mean()) if len(final_all) else 0.0)
    lo, hi = outcomes["low"], outcomes["high"]
    bif = hi.mean_delta > 0 and hi.ci[0] > 0 and lo.mean_delta <= hi.mean_delta
    return UnbundlingResult(lo, hi, c, bool(bif), seeds)
