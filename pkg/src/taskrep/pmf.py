"""Discrete execution-time distributions."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    InvalidOrder,
    LengthMismatch,
    NonpositiveSupport,
    ProbOutOfRange,
    ProbSumMismatch,
    UnsortedSupport,
)

# Tolerance for "same time" comparisons everywhere downstream.
TIME_EPS = 1e-9
PROB_SUM_TOL = 1e-9


@dataclass(frozen=True)
class DiscretePMF:
    """Execution time X taking value ``support[i]`` with probability ``probs[i]``.

    Build through :func:`new_pmf` or :func:`bimodal`; direct construction
    skips validation.
    """

    support: tuple[float, ...]
    probs: tuple[float, ...]

    @property
    def max_time(self) -> float:
        """Largest support point; a start at this time means "never launched"."""
        return self.support[-1]

    @property
    def min_time(self) -> float:
        return self.support[0]

    def __len__(self) -> int:
        return len(self.support)

    def mean(self) -> float:
        return math.fsum(a * p for a, p in zip(self.support, self.probs))

    def cdf(self, x: float) -> float:
        return math.fsum(p for a, p in zip(self.support, self.probs) if a <= x + TIME_EPS)

    def items(self):
        return zip(self.support, self.probs)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.support, dtype=float), np.asarray(self.probs, dtype=float)

    def to_dict(self) -> dict:
        return {"support": list(self.support), "probs": list(self.probs)}


def new_pmf(support, probs) -> DiscretePMF:
    support = [float(a) for a in support]
    probs = [float(p) for p in probs]
    if len(support) != len(probs) or not support:
        raise LengthMismatch(
            f"support and probs must be nonempty and equal length, got {len(support)} and {len(probs)}"
        )
    if any(a <= 0 for a in support):
        raise NonpositiveSupport(f"support values must be > 0: {support}")
    if any(b <= a for a, b in zip(support, support[1:])):
        raise UnsortedSupport(f"support must be strictly increasing: {support}")
    if any(not (0.0 < p <= 1.0) for p in probs):
        raise ProbOutOfRange(f"each probability must lie in (0, 1]: {probs}")
    total = math.fsum(probs)
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ProbSumMismatch(f"probabilities sum to {total!r}, expected 1")
    if total != 1.0:
        probs = [p / total for p in probs]
    return DiscretePMF(tuple(support), tuple(probs))


def bimodal(a1: float, a2: float, p1: float) -> DiscretePMF:
    """Two-point distribution: ``a1`` w.p. ``p1`` (normal machine), ``a2`` otherwise (straggler)."""
    if not a1 < a2:
        raise InvalidOrder(f"need a1 < a2, got a1={a1}, a2={a2}")
    if not 0.0 < p1 < 1.0:
        raise ProbOutOfRange(f"p1 must lie in (0, 1), got {p1}")
    if a1 <= 0:
        raise NonpositiveSupport(f"support values must be > 0, got a1={a1}")
    return DiscretePMF((float(a1), float(a2)), (float(p1), 1.0 - float(p1)))


def load_pmf(path) -> DiscretePMF:
    with open(Path(path)) as fh:
        data = json.load(fh)
    return pmf_from_dict(data)


def pmf_from_dict(data: dict) -> DiscretePMF:
    if set(data) != {"support", "probs"}:
        raise LengthMismatch(f"pmf JSON must have exactly the keys 'support' and 'probs', got {sorted(data)}")
    return new_pmf(data["support"], data["probs"])


def dump_pmf(pmf: DiscretePMF, path) -> None:
    with open(Path(path), "w") as fh:
        json.dump(pmf.to_dict(), fh)


def merge_atoms(values, weights) -> DiscretePMF:
    """Collapse (value, weight) pairs into a PMF, merging values closer than TIME_EPS."""
    order = np.argsort(values, kind="stable")
    vals = np.asarray(values, dtype=float)[order]
    wts = np.asarray(weights, dtype=float)[order]
    support: list[float] = []
    probs: list[float] = []
    for v, w in zip(vals, wts):
        if w <= 0:
            continue
        if support and v - support[-1] <= TIME_EPS:
            probs[-1] += float(w)
        else:
            support.append(float(v))
            probs.append(float(w))
    return DiscretePMF(tuple(support), tuple(probs))
