"""Reusable outcome-test library over a finite check vocabulary.

A task of width k needs k outcome tests. Each test is one of V check types,
picked with Zipf popularity ``rank**-s``. Building the harness for a check type
costs ``create_cost`` once per library; each task then applies every distinct
harness it needs once, at ``apply_cost`` each. Harnesses persist across the
tasks of a run. The local verification exponent comes out of this process
instead of being assumed.

Two sampling modes:

``distinct``  k distinct types, one per provider; all V when k >= V (default).
``iid``       k independent draws, so providers needing the same check share
              one application and repeats cost nothing extra.

In ``distinct`` mode a warm library charges exactly ``apply_cost * k``, so the
fitted exponent settles near 1 however skewed popularity is. Only ``iid``
sampling yields a clearly sublinear exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Set, Tuple

import numpy as np

from .costs import TaskSample, _check, _finite

SAMPLING_MODES = ("iid", "distinct")


@dataclass(frozen=True)
class CheckVocabulary:
    size: int = 50
    popularity_exponent: float = 1.2
    sampling: str = "distinct"

    def __post_init__(self):
        _check(isinstance(self.size, (int, np.integer)) and self.size >= 1, "size",
               f"must be an integer >= 1, got {self.size!r}")
        _check(_finite(self.popularity_exponent) and self.popularity_exponent >= 0,
               "popularity_exponent", "must be >= 0")
        _check(self.sampling in SAMPLING_MODES, "sampling",
               f"must be one of {SAMPLING_MODES}, got {self.sampling!r}")

    def probabilities(self) -> np.ndarray:
        ranks = np.arange(1, self.size + 1, dtype=float)
        w = ranks ** -float(self.popularity_exponent)
        return w / w.sum()


@dataclass(frozen=True)
class HarnessParams:
    create_cost: float = 1.0
    apply_cost: float = 0.05

    def __post_init__(self):
        _check(_finite(self.create_cost) and self.create_cost >= 0, "create_cost", "must be >= 0")
        _check(_finite(self.apply_cost) and self.apply_cost >= 0, "apply_cost", "must be >= 0")


@dataclass
class HarnessLibrary:
    create_cost: float = 1.0
    apply_cost: float = 0.05
    built: Set[int] = field(default_factory=set)

    @classmethod
    def from_params(cls, params: HarnessParams) -> "HarnessLibrary":
        return cls(params.create_cost, params.apply_cost)


class _Sampler:
    """Cached draw tables for one vocabulary."""

    def __init__(self, vocab: CheckVocabulary):
        self.vocab = vocab
        p = vocab.probabilities()
        self.cdf = np.cumsum(p)
        self.cdf[-1] = 1.0
        self.logp = np.log(p)

    def draw(self, k: int, rng: np.random.Generator) -> Tuple[int, ...]:
        V = self.vocab.size
        if k <= 0:
            return ()
        if self.vocab.sampling == "iid":
            idx = np.searchsorted(self.cdf, rng.random(k), side="right")
            return tuple((idx + 1).tolist())
        if k >= V:
            return tuple(range(1, V + 1))
        # Gumbel top-k: successive weighted sampling without replacement
        keys = self.logp - np.log(-np.log(rng.random(V)))
        top = np.argsort(-keys, kind="stable")[:k]
        return tuple((top + 1).tolist())


def required_checks(task: TaskSample, vocab: CheckVocabulary,
                    rng: np.random.Generator) -> Tuple[int, ...]:
    """Check-type ids (1..V) needed by ``task``, in draw order."""
    return _Sampler(vocab).draw(int(task.width), rng)


def verify_task(library: HarnessLibrary, checks: Iterable[int], reuse: bool = True):
    """Charge one task's local verification. Returns ``(cost, library)``.

    With ``reuse=False`` the library is treated as empty for every test,
    repeats included, so the cost is ``len(checks) * (create_cost + apply_cost)``
    and the library is left untouched.
    """
    checks = list(checks)
    if not reuse:
        return len(checks) * (library.create_cost + library.apply_cost), library
    cost = 0.0
    for c in dict.fromkeys(checks):
        if c in library.built:
            cost += library.apply_cost
        else:
            cost += library.create_cost + library.apply_cost
            library.built.add(c)
    return cost, library


def effective_gamma(trace: Iterable[Tuple[int, float]]) -> float:
    """Log-log OLS slope of mean local cost per width on width."""
    sums = {}
    for k, cost in trace:
        if k < 1:
            continue
        s = sums.setdefault(int(k), [0.0, 0])
        s[0] += cost
        s[1] += 1
    if len(sums) < 2:
        raise ValueError("exponent unidentifiable: need at least 2 distinct widths >= 1")
    widths = np.array(sorted(sums), dtype=float)
    means = np.array([sums[int(k)][0] / sums[int(k)][1] for k in widths])
    if np.any(means <= 0):
        raise ValueError("exponent unidentifiable: mean cost <= 0 at some width")
    x = np.log(widths)
    y = np.log(means)
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))


def reuse_trace(vocab: CheckVocabulary, params: HarnessParams, widths: Sequence[int],
                n_tasks: int, rng: np.random.Generator, reuse: bool = True):
    """Run ``n_tasks`` tasks with widths drawn uniformly from ``widths`` against
    one persistent library. Returns a list of ``(width, cost)``."""
    sampler = _Sampler(vocab)
    library = HarnessLibrary.from_params(params)
    widths = np.asarray(widths, dtype=int)
    ks = widths[rng.integers(len(widths), size=n_tasks)]
    out = []
    for k in ks.tolist():
        cost, library = verify_task(library, sampler.draw(k, rng), reuse=reuse)
        out.append((k, cost))
    return out


def cumulative_creation_bound(vocab: CheckVocabulary, params: HarnessParams) -> float:
    return vocab.size * params.create_cost


__all__ = [
    "CheckVocabulary", "HarnessParams", "HarnessLibrary", "required_checks",
    "verify_task", "effective_gamma", "reuse_trace", "cumulative_creation_bound",
]
