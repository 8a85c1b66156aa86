import math

import pytest
from hypothesis import given, strategies as st

from coordsim.costs import (ConfigError, CostBreakdown, CostParams, CouplingForm,
                            LiabilityParams, TaskSample, cost_per_task,
                            coupling_verification_cost, integration_cost,
                            local_verification_cost, marginal_cost_of_action, total_cost)

nonneg = st.floats(0, 1e3, allow_nan=False)
gammas = st.floats(0, 2, allow_nan=False)


def task_strategy(max_k=50):
    return st.integers(0, max_k).flatmap(
        lambda k: st.integers(0, k).map(lambda m: TaskSample(0, k, m)))


@pytest.mark.parametrize("E,a,expected", [(6, 1, 6), (0, 5, 0), (100, 0.25, 25)])
def test_integration_cost_examples(E, a, expected):
    assert integration_cost(E, CostParams(a=a)) == expected


def test_local_verification_examples():
    assert local_verification_cost(2, CostParams(b=1, gamma=0.5)) == pytest.approx(1.41421356)
    assert local_verification_cost(0, CostParams(b=7, gamma=0.5)) == 0
    assert local_verification_cost(4, CostParams(b=2, gamma=1)) == 8


def test_zero_width_costs_nothing_even_at_gamma_zero():
    assert local_verification_cost(0, CostParams(gamma=0)) == 0


def test_coupling_examples():
    assert coupling_verification_cost(TaskSample(0, 3, 3), CostParams(d=2)) == 18
    assert coupling_verification_cost(TaskSample(0, 5, 0), CostParams(d=9)) == 0
    t = TaskSample(0, 4, 2)
    assert coupling_verification_cost(t, CostParams(d=1), CouplingForm.STRICT_PAIRWISE) == 4
    assert coupling_verification_cost(t, CostParams(d=1), CouplingForm.DEFAULT) == 8


def test_default_coupling_equals_d_m_k():
    t = TaskSample(0, 7, 3)
    assert coupling_verification_cost(t, CostParams(d=1.5)) == pytest.approx(1.5 * 3 * 7)


def test_total_cost_empty_period():
    b = total_cost(0, [], CostParams(a=3, b=2, d=4, g=5))
    assert b.as_dict() == {"integration": 0, "verification_local": 0,
                           "verification_coupling": 0, "governance": 0, "total": 0}


def test_total_cost_single_task():
    b = total_cost(2, [TaskSample(0, 1, 0)], CostParams(a=1, b=1, gamma=0.5, d=1, g=0.5))
    assert (b.integration, b.verification_local, b.verification_coupling, b.governance,
            b.total) == (2, 1, 0, 0.5, 3.5)


def test_total_cost_twenty_tasks_hand_sum():
    tasks = [TaskSample(i, 2, 1) for i in range(20)]
    p = CostParams(a=1, b=1, gamma=1, d=1, g=0)
    b = total_cost(3, tasks, p)
    # hand sum: local 20*2, coupling 20*(1/2)*4
    local = sum(1 * 2 ** 1 for _ in tasks)
    coupling = sum(1 * 0.5 * 2 ** 2 for _ in tasks)
    assert (b.integration, b.verification_local, b.verification_coupling, b.total) == \
        (3, local, coupling, 3 + local + coupling)
    assert b.total == 83


def test_cost_per_task():
    assert cost_per_task(CostBreakdown(83, 0, 0, 0), 20) == pytest.approx(4.15)
    assert cost_per_task(CostBreakdown(), 5) == 0
    with pytest.raises(ValueError, match="undefined ratio for empty period"):
        cost_per_task(CostBreakdown(10, 0, 0, 0), 0)


def test_marginal_cost_examples():
    assert marginal_cost_of_action(LiabilityParams(0.001, 1000, 0.01)) == pytest.approx(10.001)
    assert marginal_cost_of_action(LiabilityParams(3.5, 1000, 0)) == 3.5
    assert marginal_cost_of_action(LiabilityParams(0, 500, 0.002)) == pytest.approx(1.0)


@pytest.mark.parametrize("kw,field", [
    ({"a": -1}, "a"), ({"gamma": 2.5}, "gamma"), ({"gamma": -0.1}, "gamma"),
    ({"g": float("nan")}, "g"),
])
def test_cost_params_validation(kw, field):
    with pytest.raises(ConfigError) as e:
        CostParams(**kw)
    assert e.value.field == field


def test_task_sample_validation():
    with pytest.raises(ConfigError):
        TaskSample(0, 2, 3)
    with pytest.raises(ConfigError):
        TaskSample(0, -1, 0)
    assert TaskSample(0, 0, 0).q == 0


def test_liability_validation():
    with pytest.raises(ConfigError):
        LiabilityParams(0, 1, 1.5)


# --- properties ---

@given(st.integers(0, 1000), st.integers(0, 1000), nonneg)
def test_integration_monotone(e1, e2, a):
    lo, hi = sorted((e1, e2))
    p = CostParams(a=a)
    assert integration_cost(lo, p) <= integration_cost(hi, p)


@given(st.integers(0, 200), st.integers(0, 200), st.floats(0.01, 100), gammas)
def test_local_monotone_in_width(k1, k2, b, g):
    lo, hi = sorted((k1, k2))
    p = CostParams(b=b, gamma=g)
    assert local_verification_cost(lo, p) <= local_verification_cost(hi, p)


@given(task_strategy(), st.integers(0, 50), nonneg)
def test_coupling_monotone_in_width_and_coupled(t, extra, d):
    p = CostParams(d=d)
    wider = TaskSample(0, t.width + extra, t.coupled)
    for form in CouplingForm:
        if t.width > 0:
            # fixed q, larger k
            bigger = TaskSample(0, 2 * t.width, 2 * t.coupled)
            assert coupling_verification_cost(t, p, form) <= coupling_verification_cost(bigger, p, form)
        if t.coupled < t.width:
            more = TaskSample(0, t.width, t.coupled + 1)
            assert coupling_verification_cost(t, p, form) <= coupling_verification_cost(more, p, form)
    assert coupling_verification_cost(wider, p, CouplingForm.STRICT_PAIRWISE) == \
        coupling_verification_cost(t, p, CouplingForm.STRICT_PAIRWISE)


@given(st.integers(1, 10_000), st.floats(0.01, 100), gammas)
def test_sublinearity_characterization(k, b, g):
    p = CostParams(b=b, gamma=g)
    two_k, k2 = local_verification_cost(2 * k, p), 2 * local_verification_cost(k, p)
    if g == 1:
        assert two_k == pytest.approx(k2, rel=1e-12)
    elif g < 1:
        assert two_k < k2
    else:
        assert two_k > k2


@given(st.lists(task_strategy(), max_size=20), st.integers(0, 100), st.floats(0.01, 100),
       st.sampled_from(["a", "b", "d", "g"]))
def test_linearity_in_coefficients(tasks, E, lam, coef):
    base = CostParams(a=1.3, b=0.7, gamma=0.6, d=2.1, g=0.4)
    scaled = CostParams(**{**base.__dict__, coef: getattr(base, coef) * lam})
    b0, b1 = total_cost(E, tasks, base), total_cost(E, tasks, scaled)
    comp = {"a": "integration", "b": "verification_local", "d": "verification_coupling",
            "g": "governance"}[coef]
    assert getattr(b1, comp) == pytest.approx(lam * getattr(b0, comp), rel=1e-12, abs=1e-12)
    for other in {"integration", "verification_local", "verification_coupling", "governance"} - {comp}:
        assert getattr(b1, other) == getattr(b0, other)


@given(st.lists(task_strategy(), max_size=30), st.integers(0, 500),
       st.builds(CostParams, a=nonneg, b=nonneg, gamma=gammas, d=nonneg, g=nonneg),
       st.sampled_from(list(CouplingForm)))
def test_breakdown_additivity_and_nonneg(tasks, E, p, form):
    b = total_cost(E, tasks, p, form)
    parts = [b.integration, b.verification_local, b.verification_coupling, b.governance]
    assert all(x >= 0 for x in parts)
    assert b.total == pytest.approx(math.fsum(parts), rel=1e-9, abs=0)
    # independent per-task oracle
    assert b.verification_local == pytest.approx(
        math.fsum(p.b * t.width ** p.gamma if t.width else 0 for t in tasks), rel=1e-9, abs=1e-12)


@given(nonneg, nonneg, st.floats(0, 1))
def test_liability_floor(c, r, p):
    assert marginal_cost_of_action(LiabilityParams(0, r, p)) == r * p
    assert marginal_cost_of_action(LiabilityParams(c, r, p)) >= r * p


@given(nonneg, nonneg, nonneg, st.floats(0, 1), st.floats(0, 1))
def test_liability_monotone(c1, c2, r, p1, p2):
    lo, hi = sorted((c1, c2))
    assert marginal_cost_of_action(LiabilityParams(lo, r, p1)) <= \
        marginal_cost_of_action(LiabilityParams(hi, r, p1))
    lo, hi = sorted((p1, p2))
    assert marginal_cost_of_action(LiabilityParams(c1, r, lo)) <= \
        marginal_cost_of_action(LiabilityParams(c1, r, hi))
