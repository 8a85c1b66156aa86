# coding: utf-8

# # Scaling experiments
#
# Marginal integration cost, cost per task, coupling share and total cost
# against ecosystem size n, classified by log-log fits.

from coordsim import (ScenarioConfig, instability_probe, prediction1_experiment,
                      prediction2_experiment, sublinearity_check)
from coordsim.config import ConstantQ, ConstantWidth, ScalingLinear
from coordsim.costs import CostParams

# ## Marginal integration cost of one more provider

res = prediction1_experiment(ScenarioConfig(), [10, 20, 40, 80, 160], range(5))
for variant, fit in res.fits.items():
    print(f"{variant:>11}: {[y for _, y in fit.points]} -> {fit.classification.value}")

# ## Cost per task as n grows

base = ScenarioConfig(tasks_per_period=1000, initial_providers=10, growth=0,
                      width_dist=ConstantWidth(4), cost_params=CostParams(g=0))
for label, cm, grid in (("q = 0", ConstantQ(0.0), [10, 20, 40, 80]),
                        ("q ~ n", ScalingLinear(1.0, 100.0), [200, 400, 800])):
    r = prediction2_experiment(base.with_(coupling_model=cm), grid, [0])
    print(f"{label}: C/T {[round(y, 2) for _, y in r.fit.points]} -> {r.verdict}")

# ## Coupling share

inv = base.with_(coupling_model=ScalingLinear(1.0, 100.0), tasks_per_period=100)
r = instability_probe(inv, range(1, 21), [0])
print("coupling share crosses 1/2 at n =", r.first_flag_n)

# ## Total cost exponent

r = sublinearity_check(base.with_(tasks_per_period=100, coupling_model=ConstantQ(0.0)),
                       [50, 100, 200, 400], range(10))
for v, s in r.items():
    print(f"{v:>11}: exponent {s.exponent:.3f} ({s.verdict})")
