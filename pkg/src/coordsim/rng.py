"""Seeded random streams.

All randomness comes from numpy's PCG64 bit generator (PCG-XSL-RR 128/64).
A stream is identified by the run seed plus an integer key path; the key path
becomes the ``spawn_key`` of a ``numpy.random.SeedSequence``, so

    substream(seed, PERIOD, 7)

is the generator for period 7 of a run seeded with ``seed``. Streams with
different keys are statistically independent, and none of them depends on how
many draws another stream consumed. Stream tags below keep the key spaces of
different consumers apart.

Bit streams are stable across platforms. Non-uniform variates (poisson, beta)
are stable within a numpy feature release.
"""

from __future__ import annotations

import numpy as np

PERIOD = 0
EXPERIMENT = 1
SECTOR = 2
BOOTSTRAP = 3

ALGORITHM = "numpy PCG64 seeded by SeedSequence(seed, spawn_key=key path)"


def substream(seed: int, *key: int) -> np.random.Generator:
    if seed < 0 or seed >= 2 ** 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))
