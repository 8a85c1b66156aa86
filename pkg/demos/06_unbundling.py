# coding: utf-8

# # Firm boundaries under knowledge decay
#
# Two sectors start from the same firm sizes and differ only in how fast
# their knowledge decays. Fast sectors shed units to the external market.

from coordsim import equilibrium_size, unbundling_experiment
from coordsim.scenario_io import preset

sc = preset("unbundle-canonical")
low, high = sc.low_velocity, sc.high_velocity
c_del = low.c_del()
print(f"delegation price {c_del:.3f}")
for s in (low, high):
    print(f"velocity {s.velocity}: hold size {equilibrium_size(s.velocity, s.kappa, s.phi, c_del)}")

res = unbundling_experiment(low, high, range(10), n_boot=1000)
for o in (res.low, res.high):
    print(f"{o.label:>4}: d_alpha {o.mean_delta:+.3f}  CI ({o.ci[0]:+.3f}, {o.ci[1]:+.3f})"
          f"  mean size {o.mean_size_before:.1f} -> {o.mean_size_after:.1f}")
print("bifurcation:", res.bifurcation)

# ## The whole distribution
#
# A single exponent hides shape; the log2 histogram shows where mass went.

print("fast sector after:", res.high.histogram_after)
