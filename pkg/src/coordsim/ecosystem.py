"""Provider population and integration edges under mesh and hourglass regimes.

An ``EcosystemState`` is owned by a single run and updated in place; every
operation also returns the state so calls read as input -> output transitions.
Use ``EcosystemState.copy`` when an untouched original is needed.

Eager mesh edges are implicit (all pairs), so a mesh of n providers costs O(n)
memory. Lazy mesh edges are stored as sorted ``(i, j)`` tuples with ``i < j``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Set, Tuple

import numpy as np

from .costs import ConfigError, _check, _finite


class Regime(str, enum.Enum):
    MESH = "mesh"
    HOURGLASS = "hourglass"


class Activation(str, enum.Enum):
    EAGER = "eager"
    LAZY = "lazy"


@dataclass(frozen=True)
class DriftParams:
    break_prob: float = 0.0
    repair_cost: float = 1.0
    create_cost: float = 1.0

    def __post_init__(self):
        _check(_finite(self.break_prob) and 0 <= self.break_prob <= 1, "break_prob",
               f"must lie in [0, 1], got {self.break_prob!r}")
        _check(_finite(self.repair_cost) and self.repair_cost >= 0, "repair_cost", "must be >= 0")
        _check(_finite(self.create_cost) and self.create_cost >= 0, "create_cost", "must be >= 0")


@dataclass
class EcosystemState:
    regime: Regime
    activation: Activation = Activation.EAGER
    providers: Dict[int, int] = field(default_factory=dict)  # id -> join period
    pairs: Set[Tuple[int, int]] = field(default_factory=set)  # lazy mesh only
    next_id: int = 0

    def __post_init__(self):
        self.regime = Regime(self.regime)
        self.activation = Activation(self.activation)

    @classmethod
    def with_providers(cls, regime, n: int, activation=Activation.EAGER, period: int = 0):
        """A state holding providers 0..n-1 with every required edge in place."""
        state = cls(Regime(regime), Activation(activation))
        for i in range(n):
            state.providers[i] = period
        state.next_id = n
        return state

    @property
    def n(self) -> int:
        return len(self.providers)

    @property
    def lazy_mesh(self) -> bool:
        return self.regime is Regime.MESH and self.activation is Activation.LAZY

    def copy(self) -> "EcosystemState":
        return EcosystemState(self.regime, self.activation, dict(self.providers),
                              set(self.pairs), self.next_id)


def edge_count(state: EcosystemState) -> int:
    n = state.n
    if state.regime is Regime.HOURGLASS:
        return n
    if state.activation is Activation.EAGER:
        return n * (n - 1) // 2
    return len(state.pairs)


def add_provider(state: EcosystemState, drift: DriftParams, period: int = 0):
    """Add one provider. Returns ``(state, new_edge_count, delta_integration)``.

    Hourglass: one waist contract. Eager mesh: an edge to every existing
    provider. Lazy mesh: nothing yet; edges appear when tasks touch pairs.
    """
    n_prev = state.n
    pid = state.next_id
    state.providers[pid] = period
    state.next_id += 1
    if state.regime is Regime.HOURGLASS:
        new = 1
    elif state.activation is Activation.EAGER:
        new = n_prev
    else:
        new = 0
    return state, new, new * drift.create_cost


def touch_pair(state: EcosystemState, i: int, j: int, drift: DriftParams):
    """Materialize the lazy-mesh edge {i, j} if absent. Returns ``(state, delta)``."""
    if i not in state.providers:
        raise KeyError(f"unknown provider id {i}")
    if j not in state.providers:
        raise KeyError(f"unknown provider id {j}")
    if i == j:
        raise ValueError("touch_pair needs two distinct providers")
    if not state.lazy_mesh:
        return state, 0.0
    key = (i, j) if i < j else (j, i)
    if key in state.pairs:
        return state, 0.0
    state.pairs.add(key)
    return state, drift.create_cost


def apply_drift(state: EcosystemState, drift: DriftParams, rng: np.random.Generator):
    """Break each edge/contract independently with ``drift.break_prob``.

    Broken items are repaired in place. One uniform draw per item, in canonical
    order (contracts by provider id, edges by sorted id pair). Since every item
    consumes exactly one draw and repairs leave the topology unchanged, only
    the item count affects the generator.

    Returns ``(state, repair_cost_total, broken_count)``.
    """
    e = edge_count(state)
    if e == 0:
        return state, 0.0, 0
    u = rng.random(e)
    broken = int(np.count_nonzero(u < drift.break_prob))
    return state, broken * drift.repair_cost, broken


def canonical_edges(state: EcosystemState):
    """Edges in draw order: provider ids (hourglass) or sorted id pairs (mesh)."""
    ids = sorted(state.providers)
    if state.regime is Regime.HOURGLASS:
        return [(i,) for i in ids]
    if state.activation is Activation.LAZY:
        return sorted(state.pairs)
    return [(ids[x], ids[y]) for x in range(len(ids)) for y in range(x + 1, len(ids))]


__all__ = [
    "Regime", "Activation", "DriftParams", "EcosystemState", "ConfigError",
    "edge_count", "add_provider", "touch_pair", "apply_drift", "canonical_edges",
]
