# coding: utf-8

# # Cost formulas
#
# Integration, verification and governance costs for one period, plus the
# marginal cost of a single autonomous action.

import numpy as np

from coordsim import (CostParams, CouplingForm, LiabilityParams, TaskSample, cost_per_task,
                      local_verification_cost, marginal_cost_of_action, total_cost)

# ## Local verification and the reuse exponent
#
# With gamma < 1 doubling a task's width less than doubles its verification bill.

for gamma in (0.5, 1.0, 1.5):
    p = CostParams(gamma=gamma)
    widths = np.array([1, 2, 4, 8])
    costs = [local_verification_cost(int(k), p) for k in widths]
    print(f"gamma={gamma}: " + ", ".join(f"{c:.2f}" for c in costs))

# ## Two coupling forms
#
# The default charges d*q*k^2 (equal to d*m*k); the strict form charges d*m^2.

task = TaskSample(id=0, width=4, coupled=2)
for form in CouplingForm:
    b = total_cost(0, [task], CostParams(g=0), form)
    print(f"{form.value:>8}: coupling {b.verification_coupling}")

# ## A period
#
# 20 identical tasks over 3 maintained edges.

tasks = [TaskSample(i, 2, 1) for i in range(20)]
breakdown = total_cost(3, tasks, CostParams(a=1, b=1, gamma=1, d=1, g=0))
print(breakdown.as_dict(), "C/T =", cost_per_task(breakdown, len(tasks)))

# ## Liability floor
#
# Even free compute leaves the expected error cost r*p.

for c in (0.0, 0.001, 0.1):
    print(f"compute {c}: marginal cost {marginal_cost_of_action(LiabilityParams(c, 500, 0.002))}")
