"""Seeded sweeps that check the model's scaling claims.

Every experiment fans out one independent run per (grid point, seed) and
reduces in (n, seed) order, so results do not depend on ``workers``.

Classification thresholds are conventions, not derived values. They live in
``Thresholds`` and are echoed into every report.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import rng as rngmod
from .config import ConstantWidth, PoissonPlusOne, ScalingLinear, ScenarioConfig, with_path
from .costs import CostBreakdown, cost_per_task
from .ecosystem import Activation, EcosystemState, Regime, add_provider, touch_pair
from .engine import run, sample_tasks
from .harness import CheckVocabulary, HarnessParams, effective_gamma, reuse_trace

COMPLEXITY_MEASURE = "n (number of execution providers)"


class Scaling(str, enum.Enum):
    CONSTANT = "Constant"
    LINEAR = "Linear"
    SUPERLINEAR = "Superlinear"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Thresholds:
    constant_rel_variation: float = 0.1
    r_squared: float = 0.9
    linear_slope_low: float = 0.8
    linear_slope_high: float = 1.2
    stable_slope: float = 0.2
    collapse_slope: float = 0.8
    collapse_share: float = 0.5
    warmup_fraction: float = 0.1

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class ScalingFit:
    points: List[Tuple[float, float]]
    linear_slope: float
    intercept: float
    r_squared: float
    loglog_slope: float | None
    loglog_intercept: float | None
    loglog_r_squared: float | None
    rel_variation: float
    classification: Scaling

    def as_dict(self) -> dict:
        d = asdict(self)
        d["classification"] = self.classification.value
        d["points"] = [list(p) for p in self.points]
        return d


def _ols(x: np.ndarray, y: np.ndarray):
    xc = x - x.mean()
    slope = float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum((y - (intercept + slope * x)) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res <= 1e-24 else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return slope, intercept, r2


def loglog_slope(xs, ys) -> float:
    return _ols(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)))[0]


def classify_scaling(points, thresholds: Thresholds = Thresholds()) -> ScalingFit:
    """Fit raw and log-log OLS lines to ``(x, y)`` points and name the growth law.

    Constant when (max - min) / median(y) < 0.1; Linear when the raw fit has
    r^2 >= 0.9 and the log-log slope is in [0.8, 1.2]; Superlinear when the
    log-log slope exceeds 1.2 with log-log r^2 >= 0.9; Indeterminate otherwise.
    """
    pts = sorted((float(x), float(y)) for x, y in points)
    if len(pts) < 3:
        raise ValueError("classify_scaling needs at least 3 points")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if len(np.unique(x)) != len(x):
        raise ValueError("classify_scaling needs distinct x values")
    if np.any(x <= 0) or np.any(y < 0):
        raise ValueError("classify_scaling needs x > 0 and y >= 0")
    slope, intercept, r2 = _ols(x, y)
    ll = (None, None, None)
    if np.all(y > 0):
        ll = _ols(np.log(x), np.log(y))
    med = float(np.median(y))
    spread = float(y.max() - y.min())
    rel = 0.0 if spread == 0 else (spread / med if med > 0 else math.inf)

    th = thresholds
    ll_slope, _, ll_r2 = ll
    if rel < th.constant_rel_variation:
        cls = Scaling.CONSTANT
    elif (ll_slope is not None and r2 >= th.r_squared
          and th.linear_slope_low <= ll_slope <= th.linear_slope_high):
        cls = Scaling.LINEAR
    elif ll_slope is not None and ll_slope > th.linear_slope_high and ll_r2 >= th.r_squared:
        cls = Scaling.SUPERLINEAR
    else:
        cls = Scaling.INDETERMINATE
    return ScalingFit(pts, slope, intercept, r2, ll[0], ll[1], ll[2], rel, cls)


# --- parallel plumbing ---

def _fan_out(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _steady_config(base: ScenarioConfig, n: int, seed: int, **changes) -> ScenarioConfig:
    return base.with_(initial_providers=int(n), growth=0, seed=int(seed), **changes)


def _measured(records, warmup_fraction: float):
    skip = int(math.floor(warmup_fraction * len(records)))
    return records[skip:] if skip < len(records) else records[-1:]


# --- marginal integration cost of one more provider ---

VARIANTS = {
    "hourglass": (Regime.HOURGLASS, Activation.EAGER),
    "mesh-eager": (Regime.MESH, Activation.EAGER),
    "mesh-lazy": (Regime.MESH, Activation.LAZY),
}


def marginal_integration_delta(base: ScenarioConfig, variant: str, n: int, seed: int) -> float:
    """Integration charge caused by adding provider n+1 to an ecosystem of n.

    Lazy meshes charge nothing on arrival, so there the delta is the creation
    cost of edges to the newcomer materialized by one round of
    ``tasks_per_period`` tasks, after an equal warm-up round at size n.
    """
    regime, activation = VARIANTS[variant]
    drift = base.drift
    state = EcosystemState.with_providers(regime, n, activation)
    if activation is Activation.EAGER or regime is Regime.HOURGLASS:
        _, _, delta = add_provider(state, drift)
        return float(delta)
    gen = rngmod.substream(seed, rngmod.EXPERIMENT, n)
    T = base.tasks_per_period
    cfg = base.with_(regime=regime, activation=activation, initial_providers=n, growth=0)
    _touch_tasks(state, cfg, gen, T)
    newcomer = state.next_id
    state, _, delta = add_provider(state, drift)
    before = {p for p in state.pairs if newcomer in p}
    _touch_tasks(state, cfg, gen, T)
    created = [p for p in state.pairs if newcomer in p and p not in before]
    return float(delta + len(created) * drift.create_cost)


def _touch_tasks(state, cfg, gen, T):
    ids = np.array(sorted(state.providers), dtype=np.int64)
    for t in sample_tasks(state.n, T, cfg, gen, ids):
        m = t.providers
        for x in range(len(m)):
            for y in range(x + 1, len(m)):
                touch_pair(state, m[x], m[y], cfg.drift)


def _p1_job(args):
    base, variant, n, seed = args
    return marginal_integration_delta(base, variant, n, seed)


@dataclass
class Prediction1Result:
    fits: Dict[str, ScalingFit]
    observations: List[Tuple[str, int, int, float]]  # variant, n, seed, delta
    thresholds: Thresholds

    @property
    def verdicts(self) -> Dict[str, str]:
        return {v: f.classification.value for v, f in self.fits.items()}

    @property
    def reproduced(self) -> bool:
        ok = True
        if "hourglass" in self.fits:
            ok &= self.fits["hourglass"].classification is Scaling.CONSTANT
        if "mesh-eager" in self.fits:
            ok &= self.fits["mesh-eager"].classification is Scaling.LINEAR
        return ok


def prediction1_experiment(base: ScenarioConfig, n_grid: Sequence[int], seeds: Sequence[int],
                           variants: Sequence[str] = ("hourglass", "mesh-eager"),
                           thresholds: Thresholds = Thresholds(), workers: int = 1):
    n_grid = [int(n) for n in n_grid]
    if min(n_grid) < 2:
        raise ValueError("n_grid values must be >= 2")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("n_grid must be strictly increasing")
    for v in variants:
        if v not in VARIANTS:
            raise ValueError(f"unknown variant {v!r}; choose from {sorted(VARIANTS)}")
    jobs = [(base, v, n, s) for v in variants for n in n_grid for s in seeds]
    deltas = _fan_out(_p1_job, jobs, workers)
    obs = [(v, n, s, d) for (_, v, n, s), d in zip(jobs, deltas)]
    fits = {}
    for v in variants:
        pts = [(n, float(np.mean([d for vv, nn, _, d in obs if vv == v and nn == n])))
               for n in n_grid]
        fits[v] = classify_scaling(pts, thresholds)
    return Prediction1Result(fits, obs, thresholds)


# --- steady-state runs at fixed n (cost per task, instability, sublinearity) ---

def _steady_job(args):
    base, n, seed, warmup = args
    trace = run(_steady_config(base, n, seed))
    recs = _measured(trace.records, warmup)
    return {
        "cost_per_task": float(np.mean([cost_per_task(r.breakdown, r.T) for r in recs])),
        "total": float(np.mean([r.breakdown.total for r in recs])),
        "local": float(np.mean([r.breakdown.verification_local for r in recs])),
        "coupling": float(np.mean([r.breakdown.verification_coupling for r in recs])),
    }


def steady_state(base, n_grid, seeds, thresholds: Thresholds = Thresholds(), workers=1):
    """Mean per-period metrics for every (n, seed), warm-up periods discarded."""
    jobs = [(base, int(n), int(s), thresholds.warmup_fraction) for n in n_grid for s in seeds]
    out = _fan_out(_steady_job, jobs, workers)
    return [(n, s, m) for (_, n, s, _), m in zip(jobs, out)]


@dataclass
class Prediction2Result:
    fit: ScalingFit
    cv: float
    verdict: str  # stable | collapse | growing
    observations: List[Tuple[int, int, float]]  # n, seed, C/T
    thresholds: Thresholds


def prediction2_experiment(base: ScenarioConfig, n_grid, seeds,
                           thresholds: Thresholds = Thresholds(), workers: int = 1):
    """Track C/T against n. ``tasks_per_period == 0`` raises from ``cost_per_task``."""
    if base.tasks_per_period == 0:
        cost_per_task(CostBreakdown(), 0)
    rows = steady_state(base, n_grid, seeds, thresholds, workers)
    obs = [(n, s, m["cost_per_task"]) for n, s, m in rows]
    pts = [(n, float(np.mean([c for nn, _, c in obs if nn == n]))) for n in dict.fromkeys(
        int(n) for n in n_grid)]
    fit = classify_scaling(pts, thresholds)
    ys = np.array([p[1] for p in pts])
    cv = float(ys.std() / ys.mean()) if ys.mean() > 0 else 0.0
    slope = fit.loglog_slope if fit.loglog_slope is not None else 0.0
    if fit.classification is Scaling.CONSTANT or slope < thresholds.stable_slope:
        verdict = "stable"
    elif slope >= thresholds.collapse_slope:
        verdict = "collapse"
    else:
        verdict = "growing"
    return Prediction2Result(fit, cv, verdict, obs, thresholds)


@dataclass
class InstabilityResult:
    n_grid: List[int]
    shares: List[float]
    flags: List[bool]
    first_flag_n: int | None
    collapse: bool
    observations: List[Tuple[int, int, float, float]]  # n, seed, local, coupling
    thresholds: Thresholds


def instability_probe(base: ScenarioConfig, n_grid, seeds,
                      thresholds: Thresholds = Thresholds(), workers: int = 1):
    """Share of verification spent on cross-provider coupling, per n.

    A grid point is flagged when its share exceeds ``collapse_share`` while
    the share series is increasing over the grid; ``collapse`` is raised when
    any point is flagged.
    """
    if not isinstance(base.coupling_model, ScalingLinear):
        raise ValueError("instability_probe needs a scaling_linear coupling model")
    n_grid = [int(n) for n in n_grid]
    rows = steady_state(base, n_grid, seeds, thresholds, workers)
    obs = [(n, s, m["local"], m["coupling"]) for n, s, m in rows]
    shares = []
    for n in n_grid:
        loc = np.mean([o[2] for o in obs if o[0] == n])
        cpl = np.mean([o[3] for o in obs if o[0] == n])
        shares.append(float(cpl / (loc + cpl)) if loc + cpl > 0 else 0.0)
    increasing = (len(shares) >= 2 and all(b >= a for a, b in zip(shares, shares[1:]))
                  and shares[-1] > shares[0])
    flags = [increasing and s > thresholds.collapse_share for s in shares]
    first = next((n for n, f in zip(n_grid, flags) if f), None)
    return InstabilityResult(n_grid, shares, flags, first, any(flags), obs, thresholds)


@dataclass
class SublinearityResult:
    regime: str
    exponent: float
    ci_low: float
    ci_high: float
    per_seed: List[float]
    fit: ScalingFit
    verdict: str  # sublinear | not sublinear
    observations: List[Tuple[int, int, float]]  # n, seed, total cost per period


def bootstrap_mean_ci(values, seed: int = 0, n_boot: int = 2000, level: float = 0.95):
    """Percentile bootstrap interval for the mean of ``values``."""
    v = np.asarray(values, dtype=float)
    gen = rngmod.substream(seed, rngmod.BOOTSTRAP)
    idx = gen.integers(len(v), size=(n_boot, len(v)))
    means = v[idx].mean(axis=1)
    lo, hi = np.quantile(means, [(1 - level) / 2, (1 + level) / 2])
    return float(lo), float(hi)


def sublinearity_check(base: ScenarioConfig, n_grid, seeds,
                       variants: Sequence[str] = ("hourglass", "mesh-eager"),
                       thresholds: Thresholds = Thresholds(), workers: int = 1,
                       n_boot: int = 2000):
    """Fit the exponent of total cost per period in n, one regime at a time.

    The task law must not depend on n (constant or Poisson+1 widths), so any
    growth in cost comes from the ecosystem itself.
    """
    if not isinstance(base.width_dist, (ConstantWidth, PoissonPlusOne)):
        raise ValueError("sublinearity_check needs a constant or poisson_plus_one width law")
    n_grid = [int(n) for n in n_grid]
    seeds = [int(s) for s in seeds]
    results = {}
    for v in variants:
        regime, activation = VARIANTS[v]
        cfg = base.with_(regime=regime, activation=activation)
        rows = steady_state(cfg, n_grid, seeds, thresholds, workers)
        obs = [(n, s, m["total"]) for n, s, m in rows]
        pts = [(n, float(np.mean([c for nn, _, c in obs if nn == n]))) for n in n_grid]
        fit = classify_scaling(pts, thresholds)
        per_seed = [loglog_slope(n_grid, [c for nn, ss, c in obs if ss == s]) for s in seeds]
        exponent = float(np.mean(per_seed))
        lo, hi = bootstrap_mean_ci(per_seed, seed=seeds[0], n_boot=n_boot)
        verdict = "sublinear" if exponent < 1 and hi < 1 else "not sublinear"
        results[v] = SublinearityResult(v, exponent, lo, hi, per_seed, fit, verdict, obs)
    return results


# --- harness reuse ---

def _reuse_job(args):
    vocab, params, widths, n_tasks, seed, reuse = args
    gen = rngmod.substream(seed, rngmod.EXPERIMENT)
    return effective_gamma(reuse_trace(vocab, params, widths, n_tasks, gen, reuse))


def reuse_experiment(vocab: CheckVocabulary, params: HarnessParams, widths, n_tasks: int,
                     seeds, reuse: bool = True, workers: int = 1) -> List[float]:
    """Fitted local-verification exponent for each seed."""
    jobs = [(vocab, params, tuple(widths), n_tasks, int(s), reuse) for s in seeds]
    return _fan_out(_reuse_job, jobs, workers)


# --- generic sweep ---

@dataclass
class SweepRun:
    index: int
    value: object
    seed: int
    trace: object = field(repr=False)


def _sweep_job(args):
    return run(args)


def sweep(base: ScenarioConfig, param: str, values, seeds, workers: int = 1) -> List[SweepRun]:
    """One run per (value, seed), ``param`` being a dotted field path."""
    configs, keys = [], []
    for v in values:
        for s in seeds:
            configs.append(with_path(base, param, v).with_(seed=int(s)))
            keys.append((v, int(s)))
    traces = _fan_out(_sweep_job, configs, workers)
    return [SweepRun(i, v, s, t) for i, ((v, s), t) in enumerate(zip(keys, traces))]
