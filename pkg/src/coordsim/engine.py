"""Discrete-period simulation loop.

Each period runs, in order:

1. scheduled providers join (marginal integration deltas are recorded);
2. drift breaks and repairs edges, repair cost goes to integration;
3. T tasks are sampled; in a lazy mesh every pair inside a task is touched;
4. local verification (parametric b*k^gamma, or the harness library) plus the
   coupling term;
5. governance g*T;
6. maintenance a*E on the end-of-period edge count.

Period p draws from ``rng.substream(config.seed, rng.PERIOD, p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import rng as rngmod
from .config import ScenarioConfig, VerificationMode
from .costs import CostBreakdown, CouplingForm, TaskSample
from .ecosystem import (Activation, EcosystemState, Regime, add_provider, apply_drift,
                        edge_count, touch_pair)
from .harness import HarnessLibrary, _Sampler, verify_task


@dataclass
class TaskRecord:
    period: int
    task: TaskSample
    local_cost: float
    coupling_cost: float
    touch_cost: float = 0.0
    checks: Tuple[int, ...] = ()


@dataclass
class PeriodRecord:
    period: int
    n: int
    E: int
    T: int
    breakdown: CostBreakdown
    marginal_events: List[Tuple[int, float]] = field(default_factory=list)
    broken_count: int = 0
    maintenance_cost: float = 0.0
    creation_cost: float = 0.0
    repair_cost: float = 0.0
    touch_cost: float = 0.0
    tasks: Optional[List[TaskRecord]] = None

    @property
    def cost_per_task(self) -> Optional[float]:
        if self.T == 0:
            return None
        return self.breakdown.total / self.T


@dataclass
class RunTrace:
    config: ScenarioConfig
    records: List[PeriodRecord]
    detail: bool = False

    @property
    def tasks(self) -> Optional[List[TaskRecord]]:
        if not self.detail:
            return None
        return [t for r in self.records for t in r.tasks]

    def totals(self) -> CostBreakdown:
        return CostBreakdown(
            math.fsum(r.breakdown.integration for r in self.records),
            math.fsum(r.breakdown.verification_local for r in self.records),
            math.fsum(r.breakdown.verification_coupling for r in self.records),
            math.fsum(r.breakdown.governance for r in self.records),
        )

    @property
    def final(self) -> PeriodRecord:
        return self.records[-1]


def _coupled_counts(q: np.ndarray, widths: np.ndarray) -> np.ndarray:
    # half-up rounding of q*k, clipped to [0, k]
    return np.clip(np.floor(q * widths + 0.5), 0, widths).astype(np.int64)


def sample_tasks(n: int, count: int, config: ScenarioConfig, rng: np.random.Generator,
                 provider_ids=None, first_id: int = 0) -> List[TaskSample]:
    """Draw ``count`` tasks at ecosystem size ``n``.

    Provider identities are only drawn when ``provider_ids`` is given (the
    engine passes them for lazy meshes, where they decide which edges appear).
    """
    if n < 1:
        raise ValueError("sample_task needs at least one provider")
    widths = np.minimum(config.width_dist.sample(n, count, rng), n)
    widths = np.maximum(widths, 1)
    q = config.coupling_model.sample(n, count, rng)
    coupled = _coupled_counts(q, widths)
    out = []
    for i in range(count):
        k = int(widths[i])
        members = ()
        if provider_ids is not None:
            members = tuple(sorted(rng.choice(provider_ids, size=k, replace=False).tolist()))
        out.append(TaskSample(first_id + i, k, int(coupled[i]), float(q[i]), members))
    return out


def sample_task(n: int, config: ScenarioConfig, rng: np.random.Generator,
                provider_ids=None, task_id: int = 0) -> TaskSample:
    return sample_tasks(n, 1, config, rng, provider_ids, task_id)[0]


def step_period(state: EcosystemState, config: ScenarioConfig, rng: np.random.Generator,
                period: int = 0, library: Optional[HarnessLibrary] = None,
                detail: bool = False, first_task_id: int = 0):
    """Advance one period. Returns ``(state, PeriodRecord)``.

    ``library`` carries harnesses across periods in mechanistic mode; a fresh
    one is created when omitted.
    """
    params = config.cost_params
    drift = config.drift

    events = []
    for _ in range(config.growth_at(period)):
        pid = state.next_id
        state, _, delta = add_provider(state, drift, period)
        events.append((pid, float(delta)))

    state, repair, broken = apply_drift(state, drift, rng)

    T = config.tasks_per_period
    lazy = state.lazy_mesh
    mechanistic = config.verification_mode is VerificationMode.MECHANISTIC
    ids = np.array(sorted(state.providers), dtype=np.int64) if lazy else None
    tasks = sample_tasks(state.n, T, config, rng, ids, first_task_id) if T else []

    touch_costs = np.zeros(len(tasks))
    check_lists: List[Tuple[int, ...]] = [()] * len(tasks)
    if mechanistic:
        if library is None:
            library = HarnessLibrary.from_params(config.harness)
        sampler = _Sampler(config.vocab)
        local = np.zeros(len(tasks))
    for i, t in enumerate(tasks):
        if lazy:
            c = 0.0
            m = t.providers
            for x in range(len(m)):
                for y in range(x + 1, len(m)):
                    state, dc = touch_pair(state, m[x], m[y], drift)
                    c += dc
            touch_costs[i] = c
        if mechanistic:
            checks = sampler.draw(t.width, rng)
            local[i], library = verify_task(library, checks)
            check_lists[i] = checks

    if tasks:
        widths = np.array([t.width for t in tasks], dtype=float)
        if not mechanistic:
            local = params.b * widths ** params.gamma
        if config.coupling_form is CouplingForm.STRICT_PAIRWISE:
            coupling = params.d * np.array([t.coupled for t in tasks], dtype=float) ** 2
        else:
            coupling = params.d * np.array([t.q for t in tasks]) * widths ** 2
    else:
        local = coupling = np.zeros(0)

    E = edge_count(state)
    maintenance = params.a * E
    creation = math.fsum(d for _, d in events)
    touch = math.fsum(touch_costs)
    breakdown = CostBreakdown(
        integration=math.fsum([maintenance, creation, repair, touch]),
        verification_local=math.fsum(local),
        verification_coupling=math.fsum(coupling),
        governance=params.g * T,
    )
    record = PeriodRecord(period, state.n, E, T, breakdown, events, broken,
                          maintenance, creation, repair, touch)
    if detail:
        record.tasks = [TaskRecord(period, t, float(local[i]), float(coupling[i]),
                                   float(touch_costs[i]), check_lists[i])
                        for i, t in enumerate(tasks)]
    return state, record


def initial_state(config: ScenarioConfig) -> EcosystemState:
    return EcosystemState.with_providers(config.regime, config.initial_providers,
                                         config.activation, period=-1)


def run(config: ScenarioConfig, detail: bool = False) -> RunTrace:
    state = initial_state(config)
    library = HarnessLibrary.from_params(config.harness)
    records = []
    task_id = 0
    for p in range(config.periods):
        gen = rngmod.substream(config.seed, rngmod.PERIOD, p)
        state, rec = step_period(state, config, gen, p, library, detail, task_id)
        task_id += rec.T
        records.append(rec)
    return RunTrace(config, records, detail)


def oracle_total_cost(trace: RunTrace) -> CostBreakdown:
    """Rebuild every cost component from logged tasks and events alone.

    Edge counts, creation charges, lazy edge materialization and the harness
    library are all replayed here with plain Python, independently of the
    engine's bookkeeping.
    """
    if not trace.detail:
        raise ValueError("oracle_total_cost needs a trace recorded with detail=True")
    cfg = trace.config
    pr, dr, hp = cfg.cost_params, cfg.drift, cfg.harness
    mesh = cfg.regime is Regime.MESH
    lazy = mesh and cfg.activation is Activation.LAZY

    integration, local, coupling, governance = [], [], [], []
    pairs = set()
    built = set()
    for rec in trace.records:
        n_start = rec.n - len(rec.marginal_events)
        for j in range(len(rec.marginal_events)):
            if not mesh:
                integration.append(dr.create_cost)
            elif not lazy:
                integration.append((n_start + j) * dr.create_cost)
        integration.append(rec.broken_count * dr.repair_cost)
        for tr in rec.tasks:
            t = tr.task
            if lazy:
                for x in t.providers:
                    for y in t.providers:
                        if x < y and (x, y) not in pairs:
                            pairs.add((x, y))
                            integration.append(dr.create_cost)
            if cfg.verification_mode is VerificationMode.MECHANISTIC:
                for c in set(tr.checks):
                    local.append(hp.apply_cost if c in built else hp.create_cost + hp.apply_cost)
                    built.add(c)
            else:
                local.append(pr.b * math.pow(t.width, pr.gamma) if t.width else 0.0)
            if cfg.coupling_form is CouplingForm.STRICT_PAIRWISE:
                coupling.append(pr.d * t.coupled * t.coupled)
            else:
                coupling.append(pr.d * t.q * t.width * t.width)
            governance.append(pr.g)
        if lazy:
            e = len(pairs)
        elif mesh:
            e = rec.n * (rec.n - 1) // 2
        else:
            e = rec.n
        integration.append(pr.a * e)
    return CostBreakdown(math.fsum(integration), math.fsum(local),
                         math.fsum(coupling), math.fsum(governance))


__all__ = [
    "TaskRecord", "PeriodRecord", "RunTrace", "sample_task", "sample_tasks",
    "step_period", "run", "initial_state", "oracle_total_cost",
]
