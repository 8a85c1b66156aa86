# coding: utf-8

# # Verification harness reuse
#
# A library of outcome tests over a 50-type vocabulary. How fast does the
# verification bill grow with task width?

import numpy as np

from coordsim import CheckVocabulary, HarnessParams, effective_gamma
from coordsim.harness import reuse_trace
from coordsim.rng import substream

params = HarnessParams(create_cost=1.0, apply_cost=0.05)
widths = [1, 2, 4, 8, 16]

# ## One distinct check per provider (the default)
#
# Once every harness exists, a width-k task pays apply_cost * k: linear.

for mode in ("distinct", "iid"):
    vocab = CheckVocabulary(size=50, popularity_exponent=1.2, sampling=mode)
    trace = reuse_trace(vocab, params, widths, 10_000, substream(0))
    means = {k: np.mean([c for kk, c in trace if kk == k]) for k in widths}
    print(f"{mode:>8}: gamma_hat={effective_gamma(trace):.3f}  "
          + "  ".join(f"k={k}:{m:.3f}" for k, m in means.items()))

# ## Reuse switched off
#
# Every test is built from scratch, so cost is exactly (c_h + eps) * k.

trace = reuse_trace(CheckVocabulary(), params, widths, 2_000, substream(1), reuse=False)
print("no reuse: gamma_hat =", round(effective_gamma(trace), 6))
