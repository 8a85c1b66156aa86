import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coordsim.config import ConstantQ, ConstantWidth, PoissonPlusOne, ScalingLinear, ScenarioConfig
from coordsim.costs import CostParams
from coordsim.ecosystem import DriftParams
from coordsim.experiments import (Scaling, Thresholds, bootstrap_mean_ci, classify_scaling,
                                  instability_probe, loglog_slope, prediction1_experiment,
                                  prediction2_experiment, sublinearity_check, sweep)
from coordsim.scenario_io import preset


def test_classify_examples():
    assert classify_scaling([(10, 1), (20, 1), (40, 1)]).classification is Scaling.CONSTANT
    lin = classify_scaling([(10, 10), (20, 20), (40, 40)])
    assert lin.classification is Scaling.LINEAR and lin.loglog_slope == pytest.approx(1.0)
    sq = classify_scaling([(10, 100), (20, 400), (40, 1600)])
    assert sq.classification is Scaling.SUPERLINEAR and sq.loglog_slope == pytest.approx(2.0)


def test_classify_errors():
    with pytest.raises(ValueError):
        classify_scaling([(1, 1), (2, 2)])
    with pytest.raises(ValueError):
        classify_scaling([(1, 1), (1, 2), (3, 3)])


def test_thresholds_are_overridable():
    pts = [(10, 1.0), (20, 1.05), (40, 1.1)]
    assert classify_scaling(pts).classification is Scaling.CONSTANT
    strict = Thresholds(constant_rel_variation=0.01)
    assert classify_scaling(pts, strict).classification is not Scaling.CONSTANT


@given(st.lists(st.floats(1, 1e4), min_size=3, max_size=8, unique=True),
       st.floats(0.01, 100), st.sampled_from([(0, Scaling.CONSTANT), (1, Scaling.LINEAR),
                                              (2, Scaling.SUPERLINEAR)]))
def test_classifier_exact_on_power_laws(xs, c, case):
    p, expected = case
    xs = sorted(xs)
    if xs[-1] / xs[0] < 1.5:
        xs = [x * (1 + i) for i, x in enumerate(xs)]
    fit = classify_scaling([(x, c * x ** p) for x in xs])
    assert fit.classification is expected
    if p:
        assert fit.loglog_slope == pytest.approx(p, abs=1e-9)


def test_prediction1_mechanism():
    base = ScenarioConfig(drift=DriftParams(create_cost=1))
    res = prediction1_experiment(base, [10, 20, 40, 80], [0, 1])
    assert res.verdicts == {"hourglass": "Constant", "mesh-eager": "Linear"}
    assert [y for _, y in res.fits["hourglass"].points] == [1, 1, 1, 1]
    assert [y for _, y in res.fits["mesh-eager"].points] == [10, 20, 40, 80]
    assert res.fits["mesh-eager"].loglog_slope == pytest.approx(1.0)
    assert res.reproduced


@settings(max_examples=30)
@given(st.lists(st.integers(2, 500), min_size=3, max_size=6, unique=True),
       st.floats(0.1, 10))
def test_regime_contrast_any_grid(grid, c):
    base = ScenarioConfig(drift=DriftParams(create_cost=c))
    res = prediction1_experiment(base, sorted(grid), [0])
    assert res.verdicts == {"hourglass": "Constant", "mesh-eager": "Linear"}


def test_prediction1_lazy_mesh_band():
    # each newcomer pair lands in one width-2 task with probability 2/(n(n+1)),
    # so E[delta] = n * (1 - (1 - 2/(n(n+1)))**T); pilot means 10, 18.4, 18.1, 11.9
    T = 500
    base = ScenarioConfig(width_dist=ConstantWidth(2), tasks_per_period=T,
                          drift=DriftParams(create_cost=1))
    grid = [10, 20, 40, 80]
    res = prediction1_experiment(base, grid, range(30), variants=("mesh-lazy",))
    means = [y for _, y in res.fits["mesh-lazy"].points]
    for n, m in zip(grid, means):
        p = 1 - (1 - 2 / (n * (n + 1))) ** T
        se = np.sqrt(n * p * (1 - p) / 30)
        assert abs(m - n * p) <= max(4 * se, 1e-6)
    assert res.fits["mesh-lazy"].classification is Scaling.INDETERMINATE


def test_prediction1_bad_grid():
    with pytest.raises(ValueError):
        prediction1_experiment(ScenarioConfig(), [1, 2, 3], [0])


P2_BASE = ScenarioConfig(tasks_per_period=1000, initial_providers=10, growth=0,
                         width_dist=ConstantWidth(4), coupling_model=ConstantQ(0.0),
                         cost_params=CostParams(g=0.0))


def test_prediction2_stable():
    res = prediction2_experiment(P2_BASE, [10, 20, 40, 80], [0])
    assert res.verdict == "stable"
    assert res.cv < 0.1


@pytest.mark.parametrize("n", [200, 400, 800])
def test_prediction2_collapse_closed_form(n):
    base = P2_BASE.with_(coupling_model=ScalingLinear(1.0, 100.0))
    res = prediction2_experiment(base, [n, n + 1, n + 2], [0])
    expected = 2 + 16 * n / 100 + 1.0 * n / 1000
    simulated = res.fit.points[0][1]
    assert abs(simulated - expected) / expected < 0.02


def test_prediction2_collapse_verdict():
    base = P2_BASE.with_(coupling_model=ScalingLinear(1.0, 100.0))
    res = prediction2_experiment(base, [200, 400, 800], [0])
    assert res.verdict == "collapse" and res.fit.loglog_slope >= 0.8


def test_prediction2_zero_tasks():
    with pytest.raises(ValueError, match="undefined ratio"):
        prediction2_experiment(P2_BASE.with_(tasks_per_period=0), [10, 20, 40], [0])


INV = ScenarioConfig(initial_providers=1, growth=0, width_dist=ConstantWidth(4),
                     coupling_model=ScalingLinear(1.0, 100.0),
                     cost_params=CostParams(b=1, d=1, gamma=0.5))


def test_instability_closed_form_crossover():
    grid = list(range(1, 21))
    res = instability_probe(INV, grid, [0])
    for n, share in zip(grid, res.shares):
        k = min(4, n)
        c = (n / 100) * k ** 2
        assert share == pytest.approx(c / (k ** 0.5 + c), rel=1e-12)
    # 16n/100 = 2  <=>  n = 12.5
    assert res.first_flag_n == 13 and res.collapse


def test_instability_no_coupling():
    res = instability_probe(INV.with_(coupling_model=ScalingLinear(0.0, 100.0)), [5, 10, 20], [0])
    assert res.shares == [0, 0, 0] and not res.collapse
    res = instability_probe(INV.with_(cost_params=CostParams(d=0)), [5, 10, 20], [0])
    assert res.shares == [0, 0, 0] and not res.collapse


def test_instability_requires_scaling_linear():
    with pytest.raises(ValueError):
        instability_probe(P2_BASE, [5, 10, 20], [0])


def test_sublinearity_contrast():
    base = ScenarioConfig(tasks_per_period=100, initial_providers=10, growth=0,
                          width_dist=ConstantWidth(4))
    res = sublinearity_check(base, [50, 100, 200, 400], range(5))
    assert res["hourglass"].verdict == "sublinear" and res["hourglass"].exponent < 1
    assert res["mesh-eager"].verdict == "not sublinear" and res["mesh-eager"].exponent > 1.5
    # closed form: hourglass total = n + T*(2 + g)
    for n, _, total in res["hourglass"].observations:
        assert total == pytest.approx(n + 100 * 3)


def test_sublinearity_singleton_grid():
    with pytest.raises(ValueError):
        sublinearity_check(ScenarioConfig(initial_providers=1), [50], [0])


def test_bootstrap_ci():
    vals = np.linspace(0, 1, 31)
    lo, hi = bootstrap_mean_ci(vals, seed=4)
    assert lo < vals.mean() < hi
    assert (lo, hi) == bootstrap_mean_ci(vals, seed=4)
    assert bootstrap_mean_ci([2.0] * 10) == (2.0, 2.0)


def test_loglog_slope():
    assert loglog_slope([1, 2, 4], [3, 12, 48]) == pytest.approx(2.0)


def test_sweep_order_and_parallel_equivalence():
    base = ScenarioConfig(periods=2, tasks_per_period=20, width_dist=PoissonPlusOne(2.0))
    serial = sweep(base, "cost_params.gamma", [0.3, 0.9], [0, 1])
    par = sweep(base, "cost_params.gamma", [0.3, 0.9], [0, 1], workers=2)
    assert [(r.index, r.value, r.seed) for r in serial] == \
        [(0, 0.3, 0), (1, 0.3, 1), (2, 0.9, 0), (3, 0.9, 1)]
    assert [r.trace.totals() for r in serial] == [r.trace.totals() for r in par]


NOISY = ScenarioConfig(tasks_per_period=200, initial_providers=10, growth=0, periods=10,
                       width_dist=PoissonPlusOne(3.0), coupling_model=ConstantQ(0.0),
                       drift=DriftParams(break_prob=0.05))


def test_verdicts_stable_across_seed_sets():
    p1 = preset("predict1-default")
    sub = preset("sublinearity-default")
    v1, v2, vs = set(), set(), set()
    for k in range(10):
        seeds = range(1000 * k, 1000 * k + 30)
        v1.add(tuple(prediction1_experiment(p1.config, p1.experiment.n_grid, seeds)
                     .verdicts.items()))
        v2.add(prediction2_experiment(NOISY, [10, 20, 40, 80], seeds).verdict)
        vs.add(tuple((k_, r.verdict) for k_, r in
                     sublinearity_check(sub.config, sub.experiment.n_grid, seeds).items()))
    assert v1 == {(("hourglass", "Constant"), ("mesh-eager", "Linear"))}
    assert v2 == {"stable"}
    assert vs == {(("hourglass", "sublinear"), ("mesh-eager", "not sublinear"))}
