"""Exact evaluation of single-task policies by enumerating every joint outcome."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, ShapeMismatch, TimeOutOfRange, ValidationError
from .pmf import TIME_EPS, DiscretePMF, merge_atoms
from .policy import StartVector

DEFAULT_OUTCOME_BUDGET = 10**7
# outcome rows x candidate vectors processed per numpy block
_BLOCK_CELLS = 1 << 21


@dataclass(frozen=True)
class CostWeights:
    lam: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValidationError(f"lambda must lie in [0, 1], got {self.lam}")


@dataclass(frozen=True)
class PolicyEvaluation:
    expected_T: float
    expected_C: float
    t_pmf: DiscretePMF
    policy: StartVector

    def cost(self, w: CostWeights | float) -> float:
        return cost(self, w)


def cost(e, w: CostWeights | float) -> float:
    """``lam * E[T] + (1 - lam) * E[C]``; ``e`` is anything with ``expected_T``/``expected_C``."""
    lam = w.lam if isinstance(w, CostWeights) else CostWeights(float(w)).lam
    return lam * e.expected_T + (1.0 - lam) * e.expected_C


def weighted(et, ec, lam: float):
    return lam * et + (1.0 - lam) * ec


def outcome_count(pmf: DiscretePMF, m: int) -> int:
    return len(pmf) ** m


def check_budget(pmf: DiscretePMF, m: int, budget: int = DEFAULT_OUTCOME_BUDGET) -> None:
    n = outcome_count(pmf, m)
    if n > budget:
        raise BudgetExceeded(
            f"{len(pmf)}^{m} = {n} joint outcomes exceeds the budget of {budget}; use the simulator"
        )


def outcome_blocks(pmf: DiscretePMF, m: int, block: int):
    """Yield ``(X, P)`` blocks covering all ``l**m`` outcomes in a fixed order.

    ``X`` has shape (rows, m) with realized run times; ``P`` the joint probabilities.
    """
    support, probs = pmf.as_arrays()
    l = len(support)
    total = l**m
    block = max(1, block)
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        digits = np.empty((idx.size, m), dtype=np.int64)
        rest = idx.copy()
        for j in range(m - 1, -1, -1):
            rest, digits[:, j] = np.divmod(rest, l)
        yield support[digits], np.prod(probs[digits], axis=1)


def _validate_times(times, pmf: DiscretePMF) -> np.ndarray:
    arr = np.asarray(times, dtype=float)
    hi = pmf.max_time
    if arr.size == 0:
        raise ValidationError("a start vector needs at least one machine")
    if np.any(arr < -TIME_EPS) or np.any(arr > hi + TIME_EPS):
        raise TimeOutOfRange(f"start times {arr.tolist()} outside [0, {hi}]")
    return arr


def moments(pmf: DiscretePMF, starts, budget: int = DEFAULT_OUTCOME_BUDGET):
    """Exact ``(E[T], E[C])`` for a batch of equal-length start vectors.

    ``starts`` has shape (K, m). Returns two arrays of length K.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    k, m = starts.shape
    check_budget(pmf, m, budget)
    rows = max(1, _BLOCK_CELLS // max(1, k * m))
    # blocks are visited in a fixed order, so the sums are reproducible
    et = np.zeros(k)
    ec = np.zeros(k)
    for x, p in outcome_blocks(pmf, m, rows):
        finish = starts[:, None, :] + x[None, :, :]
        t = finish.min(axis=2)
        c = np.maximum(t[:, :, None] - starts[:, None, :], 0.0).sum(axis=2)
        et += t @ p
        ec += c @ p
    return et, ec


def eval_single(pmf: DiscretePMF, v, budget: int = DEFAULT_OUTCOME_BUDGET) -> PolicyEvaluation:
    """Exact evaluation of one start vector.

    For every outcome ``x`` of the ``m`` i.i.d. run times,
    ``T = min_j (t_j + x_j)`` and ``C = sum_j max(0, T - t_j)``; a copy whose
    start is not strictly before ``T`` contributes nothing.
    """
    if not isinstance(v, StartVector):
        v = StartVector(tuple(float(t) for t in v))
    starts = _validate_times(v.times, pmf)
    m = starts.size
    check_budget(pmf, m, budget)
    t_vals, t_wts = [], []
    et_sum, ec_sum = [], []
    for x, p in outcome_blocks(pmf, m, _BLOCK_CELLS // m):
        t = (starts + x).min(axis=1)
        c = np.maximum(t[:, None] - starts, 0.0).sum(axis=1)
        t_vals.append(t)
        t_wts.append(p)
        et_sum.append(float(t @ p))
        ec_sum.append(float(c @ p))
    t_pmf = merge_atoms(np.concatenate(t_vals), np.concatenate(t_wts))
    return PolicyEvaluation(math.fsum(et_sum), math.fsum(ec_sum), t_pmf, v)


def eval_trace(starts, realized) -> tuple[float, float]:
    """Completion time and total (un-normalized) machine time of one realization.

    ``starts[i][j]`` is when copy ``j`` of task ``i`` is scheduled and
    ``realized[i][j]`` its run time if it were launched. Copies scheduled at or
    after their task's completion never run.
    """
    if len(starts) != len(realized) or not starts:
        raise ShapeMismatch("starts and realized must list the same, nonzero number of tasks")
    t_job = -math.inf
    c_total = []
    for i, (ts, xs) in enumerate(zip(starts, realized)):
        if len(ts) != len(xs) or not ts:
            raise ShapeMismatch(f"task {i}: {len(ts)} start times but {len(xs)} run times")
        t_i = min(t + x for t, x in zip(ts, xs))
        t_job = max(t_job, t_i)
        c_total.extend(max(0.0, t_i - t) for t in ts)
    return t_job, math.fsum(c_total)
