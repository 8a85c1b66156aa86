import numpy as np
import pytest
from hypothesis import given, strategies as st

from coordsim.ecosystem import (Activation, DriftParams, EcosystemState, Regime, add_provider,
                                apply_drift, canonical_edges, edge_count, touch_pair)
from coordsim.costs import ConfigError
from coordsim.rng import substream

D1 = DriftParams(create_cost=1)


def test_add_provider_examples():
    s = EcosystemState.with_providers(Regime.HOURGLASS, 7)
    s, new, delta = add_provider(s, D1)
    assert (s.n, new, delta) == (8, 1, 1)

    s = EcosystemState.with_providers(Regime.MESH, 10)
    s, new, delta = add_provider(s, D1)
    assert (s.n, new, delta) == (11, 10, 10)

    s = EcosystemState.with_providers(Regime.MESH, 0)
    s, new, delta = add_provider(s, D1)
    assert (s.n, new, delta) == (1, 0, 0)


def test_add_provider_lazy_creates_nothing():
    s = EcosystemState.with_providers(Regime.MESH, 4, Activation.LAZY)
    s, new, delta = add_provider(s, D1)
    assert (s.n, new, delta, edge_count(s)) == (5, 0, 0, 0)


def test_touch_pair_examples():
    s = EcosystemState.with_providers(Regime.MESH, 3, Activation.LAZY)
    d2 = DriftParams(create_cost=2)
    s, delta = touch_pair(s, 1, 2, d2)
    assert delta == 2
    s, delta = touch_pair(s, 2, 1, d2)
    assert delta == 0
    assert edge_count(s) == 1

    h = EcosystemState.with_providers(Regime.HOURGLASS, 3)
    before = h.copy()
    h, delta = touch_pair(h, 0, 1, d2)
    assert delta == 0 and h == before


def test_touch_pair_errors():
    s = EcosystemState.with_providers(Regime.MESH, 3, Activation.LAZY)
    with pytest.raises(KeyError):
        touch_pair(s, 0, 99, D1)
    with pytest.raises(ValueError):
        touch_pair(s, 1, 1, D1)


def test_edge_count_examples():
    assert edge_count(EcosystemState.with_providers(Regime.MESH, 4)) == 6
    assert edge_count(EcosystemState.with_providers(Regime.HOURGLASS, 7)) == 7
    s = EcosystemState.with_providers(Regime.MESH, 5, Activation.LAZY)
    for i, j in [(0, 1), (1, 2), (3, 4), (1, 0)]:
        touch_pair(s, i, j, D1)
    assert edge_count(s) == 3


def test_drift_certain_and_none():
    s = EcosystemState.with_providers(Regime.MESH, 3)
    _, cost, broken = apply_drift(s, DriftParams(break_prob=1, repair_cost=2), substream(0))
    assert (cost, broken) == (6, 3)
    _, cost, broken = apply_drift(s, DriftParams(break_prob=0), substream(0))
    assert (cost, broken) == (0, 0)


def test_drift_preserves_topology():
    s = EcosystemState.with_providers(Regime.MESH, 6, Activation.LAZY)
    touch_pair(s, 0, 5, D1)
    before = s.copy()
    apply_drift(s, DriftParams(break_prob=1), substream(1))
    assert s == before


def test_drift_binomial_concentration():
    # Binomial(1000, 0.5): [450, 550] holds with probability ~0.9986
    s = EcosystemState.with_providers(Regime.HOURGLASS, 1000)
    drift = DriftParams(break_prob=0.5, repair_cost=1)
    inside = sum(450 <= apply_drift(s, drift, substream(seed))[1] <= 550 for seed in range(100))
    assert inside >= 95


def test_drift_params_validation():
    with pytest.raises(ConfigError):
        DriftParams(break_prob=1.5)
    with pytest.raises(ConfigError):
        DriftParams(repair_cost=-1)


def test_canonical_edges_sorted():
    s = EcosystemState.with_providers(Regime.MESH, 4)
    e = canonical_edges(s)
    assert e == sorted(e) and len(e) == edge_count(s)


ops = st.lists(st.tuples(st.sampled_from(["add", "touch", "drift"]), st.integers(0, 10 ** 6)),
               max_size=40)


@given(ops, st.sampled_from([(Regime.HOURGLASS, Activation.EAGER),
                             (Regime.MESH, Activation.EAGER), (Regime.MESH, Activation.LAZY)]))
def test_edge_invariants_under_any_sequence(seq, variant):
    regime, act = variant
    s = EcosystemState.with_providers(regime, 0, act)
    drift = DriftParams(break_prob=0.3)
    last = 0
    for op, x in seq:
        if op == "add":
            add_provider(s, drift)
        elif op == "touch" and s.n >= 2:
            ids = sorted(s.providers)
            i, j = ids[x % len(ids)], ids[(x // 7) % len(ids)]
            if i != j:
                touch_pair(s, i, j, drift)
        elif op == "drift":
            apply_drift(s, drift, substream(x))
        n, E = s.n, edge_count(s)
        if regime is Regime.HOURGLASS:
            assert E == n
        elif act is Activation.EAGER:
            assert E == n * (n - 1) // 2
        else:
            assert last <= E <= n * (n - 1) // 2
        last = E


@given(st.integers(0, 300), st.floats(0, 10))
def test_marginal_cost_contrast(n, c):
    drift = DriftParams(create_cost=c)
    _, _, dm = add_provider(EcosystemState.with_providers(Regime.MESH, n), drift)
    _, _, dh = add_provider(EcosystemState.with_providers(Regime.HOURGLASS, n), drift)
    assert dm == n * c
    assert dh == c


@given(st.integers(0, 2 ** 64 - 1), st.integers(0, 200), st.floats(0, 1))
def test_drift_determinism(seed, n, p):
    s = EcosystemState.with_providers(Regime.MESH, n)
    drift = DriftParams(break_prob=p)
    assert apply_drift(s, drift, substream(seed))[1:] == apply_drift(s, drift, substream(seed))[1:]
