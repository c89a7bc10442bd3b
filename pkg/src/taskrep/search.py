"""Policy search: exhaustive lattice search, the k-step heuristic, and Pareto frontiers."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Callable

import numpy as np

from .corners import corner_points, lattice_set
from .errors import BudgetExceeded, ValidationError
from .evaluate import CostWeights, eval_single, moments, weighted
from .pmf import TIME_EPS, DiscretePMF
from .policy import StartVector, format_policy

DEFAULT_CANDIDATE_BUDGET = 10**6
COST_TIE_TOL = 1e-9


@dataclass(frozen=True)
class FrontierPoint:
    expected_C: float
    expected_T: float
    policy: StartVector


@dataclass(frozen=True)
class Frontier:
    points: tuple[FrontierPoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(["expected_C", "expected_T", "policy"])
        for pt in self.points:
            writer.writerow([f"{pt.expected_C:.9g}", f"{pt.expected_T:.9g}", format_policy(pt.policy)])
        return buf.getvalue()


def _lam(w) -> float:
    return w.lam if isinstance(w, CostWeights) else CostWeights(float(w)).lam


def candidate_starts(pmf: DiscretePMF, m: int) -> list[float]:
    """Lattice values a non-first machine may use once pruning is applied."""
    hi = pmf.max_time
    cut = hi - pmf.min_time
    return [v for v in lattice_set(pmf, m).values if not (cut - TIME_EPS <= v < hi)]


def candidate_vectors(pmf: DiscretePMF, m: int, budget: int = DEFAULT_CANDIDATE_BUDGET) -> np.ndarray:
    """Every nondecreasing, pruned, lattice-restricted vector with ``t_1 = 0``, in lexicographic order."""
    if m < 1:
        raise ValidationError(f"machine count must be >= 1, got {m}")
    allowed = candidate_starts(pmf, m)
    count = comb(len(allowed) + m - 2, m - 1)
    if count > budget:
        raise BudgetExceeded(f"{count} candidate vectors exceeds the budget of {budget}")
    rows = [(0.0, *tail) for tail in combinations_with_replacement(allowed, m - 1)]
    return np.array(rows, dtype=float).reshape(len(rows), m)


def evaluate_candidates(pmf: DiscretePMF, m: int, budget: int = DEFAULT_CANDIDATE_BUDGET):
    cands = candidate_vectors(pmf, m, budget)
    et, ec = moments(pmf, cands)
    return cands, et, ec


def _argmin_first(costs: np.ndarray) -> int:
    best = costs.min()
    return int(np.flatnonzero(costs <= best + COST_TIE_TOL)[0])


def exhaustive_search(pmf: DiscretePMF, m: int, w, budget: int = DEFAULT_CANDIDATE_BUDGET):
    """Minimize the weighted cost over all lattice-restricted vectors.

    Returns ``(StartVector, cost)``. Among vectors within COST_TIE_TOL of the
    optimum the lexicographically smallest wins.
    """
    lam = _lam(w)
    cands, et, ec = evaluate_candidates(pmf, m, budget)
    costs = weighted(et, ec, lam)
    i = _argmin_first(costs)
    return StartVector(tuple(float(t) for t in cands[i])), float(costs[i])


def pareto_points(ec, et, policies) -> list[FrontierPoint]:
    """Nondominated ``(E[C], E[T])`` points; near-duplicates keep the first witness."""
    order = sorted(range(len(ec)), key=lambda i: (ec[i], et[i]))
    out: list[FrontierPoint] = []
    for i in order:
        if out and et[i] >= out[-1].expected_T - TIME_EPS:
            continue
        if out and abs(ec[i] - out[-1].expected_C) <= TIME_EPS:
            # same cost, strictly better time: replaces the previous point
            out.pop()
        out.append(FrontierPoint(float(ec[i]), float(et[i]), policies[i]))
    return out


def frontier(pmf: DiscretePMF, m: int, budget: int = DEFAULT_CANDIDATE_BUDGET) -> Frontier:
    cands, et, ec = evaluate_candidates(pmf, m, budget)
    policies = [StartVector(tuple(float(t) for t in row)) for row in cands]
    return Frontier(tuple(pareto_points(ec, et, policies)))


def single_cost(pmf: DiscretePMF, lam: float) -> Callable[[StartVector], float]:
    def step_cost(v: StartVector) -> float:
        e = eval_single(pmf, v)
        return weighted(e.expected_T, e.expected_C, lam)

    return step_cost


def heuristic_k(pmf: DiscretePMF, m: int, k: int, w, step_cost=None) -> StartVector:
    """Greedy construction of a start vector, one machine at a time.

    At each step the options are leaving the machine unused or starting it at
    one of the first ``k`` corner points not earlier than the previous start.
    Once "unused" wins, every later machine stays unused too.
    ``step_cost`` overrides the single-task weighted cost (used for multi-task).
    """
    if k < 1 or m < 1:
        raise ValidationError(f"need k >= 1 and m >= 1, got k={k}, m={m}")
    lam = _lam(w)
    if step_cost is None:
        step_cost = single_cost(pmf, lam)
    hi = pmf.max_time
    t = StartVector((0.0,))
    for _ in range(2, m + 1):
        upper = [u for u in corner_points(t.times, pmf) if u >= t.times[-1] - TIME_EPS]
        options = [hi] + upper[:k]
        costs = [step_cost(t.extend(u)) for u in options]
        best = min(costs)
        # ties go to the earliest start time
        pick = min(u for u, c in zip(options, costs) if c <= best + COST_TIE_TOL)
        if pick >= hi - TIME_EPS:
            remaining = m - len(t)
            return StartVector(t.times + (hi,) * remaining)
        t = t.extend(pick)
    return t
