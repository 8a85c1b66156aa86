"""Continuous power-law tail fitting.

Maximum-likelihood exponent for p(x) ~ x^-alpha on x >= x_min, with a
Kolmogorov-Smirnov goodness of fit and KS-minimizing cutoff selection.
Integer firm sizes are fitted with the continuous form; expect some bias for
x_min below about 5.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class PowerLawFit:
    alpha_hat: float
    x_min: float
    n_tail: int
    ks_distance: float

    def as_dict(self) -> dict:
        return asdict(self)


def _alpha(tail: np.ndarray, x_min: float) -> float:
    return 1.0 + len(tail) / np.sum(np.log(tail / x_min))


def ks_distance(tail: np.ndarray, x_min: float, alpha: float) -> float:
    """Sup distance between the empirical CDF of ``tail`` and the fitted CDF.

    Ties are handled by checking both sides of every jump of the empirical CDF.
    """
    x = np.sort(np.asarray(tail, dtype=float))
    n = len(x)
    vals, first = np.unique(x, return_index=True)
    counts = np.diff(np.append(first, n))
    below = first / n
    above = (first + counts) / n
    cdf = 1.0 - (vals / x_min) ** (1.0 - alpha)
    return float(max(np.max(np.abs(above - cdf)), np.max(np.abs(below - cdf))))


def fit_power_law(sizes, x_min: float) -> PowerLawFit:
    x = np.asarray(sizes, dtype=float)
    if x_min <= 0:
        raise ValueError("x_min must be positive")
    tail = x[x >= x_min]
    if len(tail) < 2:
        raise ValueError(f"need at least 2 values >= x_min, got {len(tail)}")
    if np.all(tail == x_min):
        raise ValueError("degenerate tail: every tail value equals x_min")
    alpha = float(_alpha(tail, x_min))
    return PowerLawFit(alpha, float(x_min), int(len(tail)), ks_distance(tail, x_min, alpha))


def xmin_scan(sizes, min_tail: int = 10):
    """Fits for every observed value usable as a cutoff, in increasing x_min."""
    x = np.sort(np.asarray(sizes, dtype=float))
    x = x[x > 0]
    if len(np.unique(x)) < 10:
        raise ValueError("select_xmin needs at least 10 distinct positive values")
    fits = []
    for c in np.unique(x):
        tail = x[np.searchsorted(x, c, side="left"):]
        if len(tail) < min_tail:
            break
        if tail[-1] == c:
            continue
        alpha = float(_alpha(tail, c))
        fits.append(PowerLawFit(alpha, float(c), int(len(tail)), ks_distance(tail, c, alpha)))
    if not fits:
        raise ValueError(f"no candidate x_min leaves at least {min_tail} tail values")
    return fits


def select_xmin(sizes, min_tail: int = 10) -> float:
    """Observed value minimizing the KS distance of the resulting tail fit."""
    return fit_power_law_auto(sizes, min_tail).x_min


def fit_power_law_auto(sizes, min_tail: int = 10) -> PowerLawFit:
    fits = xmin_scan(sizes, min_tail)
    return min(fits, key=lambda f: (f.ks_distance, f.x_min))


def sample_power_law(alpha: float, x_min: float, size: int, rng: np.random.Generator):
    """Inverse-CDF draws from the continuous power law."""
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    u = rng.random(size)
    return x_min * (1.0 - u) ** (-1.0 / (alpha - 1.0))
