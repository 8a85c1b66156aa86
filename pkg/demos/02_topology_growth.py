# coding: utf-8

# # Mesh versus hourglass growth
#
# Grow three ecosystems one provider per period and watch edge counts and
# the integration bill.

from coordsim import ScenarioConfig, run
from coordsim.ecosystem import DriftParams

# ## Edge counts

for regime, activation in (("hourglass", "eager"), ("mesh", "eager"), ("mesh", "lazy")):
    cfg = ScenarioConfig(regime=regime, activation=activation, periods=12, growth=1,
                         tasks_per_period=50, drift=DriftParams(break_prob=0.02))
    trace = run(cfg)
    print(f"{regime}/{activation}:")
    print("  E  ", [r.E for r in trace.records])
    print("  new", [round(r.creation_cost + r.touch_cost, 1) for r in trace.records])

# ## Where the money goes
#
# Totals over the run: the mesh pays for edges, the hourglass for tasks.

for regime in ("hourglass", "mesh"):
    trace = run(ScenarioConfig(regime=regime, periods=30, initial_providers=10, growth=1))
    t = trace.totals()
    print(f"{regime:>9}: integration {t.integration:8.1f}  verification {t.verification:7.1f}"
          f"  governance {t.governance:6.1f}")
