"""Multi-task policies: a shared start vector applied to every unfinished task."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bimodal import BimodalParams
from .errors import PreconditionViolated, ValidationError
from .evaluate import CostWeights, eval_single, weighted
from .pmf import DiscretePMF
from .policy import StartVector
from .search import heuristic_k


@dataclass(frozen=True)
class MultiTaskEvaluation:
    n: int
    expected_T_max: float
    expected_C: float
    expected_C_total: float
    per_task_T_pmf: DiscretePMF
    policy: StartVector

    @property
    def expected_T(self) -> float:
        return self.expected_T_max


def expected_max(pmf: DiscretePMF, n: int) -> float:
    """``E[max]`` of ``n`` i.i.d. draws: ``sum_w w * (F(w)^n - F(w-)^n)``."""
    terms = []
    below = 0.0
    for w, p in pmf.items():
        upto = min(1.0, below + p)
        terms.append(w * (upto**n - below**n))
        below = upto
    return math.fsum(terms)


def eval_replicated(pmf: DiscretePMF, v, n: int) -> MultiTaskEvaluation:
    """Exact metrics when each of ``n`` tasks independently follows ``v``.

    Machine time is averaged over tasks, so ``expected_C`` equals the
    single-task value for every ``n``.
    """
    if n < 1:
        raise ValidationError(f"task count must be >= 1, got {n}")
    single = eval_single(pmf, v)
    t_max = single.expected_T if n == 1 else expected_max(single.t_pmf, n)
    return MultiTaskEvaluation(
        n=n,
        expected_T_max=t_max,
        expected_C=single.expected_C,
        expected_C_total=n * single.expected_C,
        per_task_T_pmf=single.t_pmf,
        policy=single.policy,
    )


def multi_cost(pmf: DiscretePMF, n: int, lam: float):
    def step_cost(v: StartVector) -> float:
        e = eval_replicated(pmf, v, n)
        return weighted(e.expected_T_max, e.expected_C, lam)

    return step_cost


def heuristic_multi(pmf: DiscretePMF, m: int, n: int, k: int, w) -> StartVector:
    lam = w.lam if isinstance(w, CostWeights) else CostWeights(float(w)).lam
    return heuristic_k(pmf, m, k, lam, step_cost=multi_cost(pmf, n, lam))


# -- joint versus separate scheduling of two bimodal tasks ----------------------------


@dataclass(frozen=True)
class PolicyMetrics:
    ET: float
    EC: float
    EC_total: float

    @property
    def expected_T(self) -> float:
        return self.ET

    @property
    def expected_C(self) -> float:
        return self.EC

    def to_dict(self) -> dict:
        return {"ET": self.ET, "EC": self.EC, "EC_total": self.EC_total}


def _separate_leaf(b: BimodalParams, x1: float, x2: float, _extra: float):
    # each task runs [0, a2]; the a2 copy is never launched since T_i <= a2
    return max(x1, x2), x1 + x2


def _joint_leaf(b: BimodalParams, x1: float, x2: float, extra: float):
    a1 = b.a1
    fast1, fast2 = x1 <= a1, x2 <= a1
    if fast1 == fast2:
        return max(x1, x2), x1 + x2
    # one task done at a1, the other gets a copy launched at a1
    slow = x2 if fast1 else x1
    t_slow = min(slow, a1 + extra)
    machine = a1 + t_slow + (t_slow - a1)
    return max(a1, t_slow), machine


def _enumerate_two_tasks(b: BimodalParams, leaf) -> PolicyMetrics:
    outcomes = ((b.a1, b.p1), (b.a2, b.p2))
    et, ec = [], []
    for (x1, q1), (x2, q2), (x3, q3) in itertools.product(outcomes, repeat=3):
        q = q1 * q2 * q3
        t, c = leaf(b, x1, x2, x3)
        et.append(q * t)
        ec.append(q * c)
    total = math.fsum(ec)
    return PolicyMetrics(math.fsum(et), total / 2, total)


def separate_metrics(b: BimodalParams) -> PolicyMetrics:
    return _enumerate_two_tasks(b, _separate_leaf)


def joint_metrics(b: BimodalParams) -> PolicyMetrics:
    return _enumerate_two_tasks(b, _joint_leaf)


def separation_window(b: BimodalParams) -> tuple[float, float]:
    p1 = b.p1
    return (2 * p1 - 1) / (4 * p1 - 1), (2 * p1 - 1) / (3 * p1 - 1)


def in_window(b: BimodalParams) -> bool:
    lo, hi = separation_window(b)
    return 4 * b.p1 - 1 > 0 and 3 * b.p1 - 1 > 0 and lo < b.ratio < hi


def printed_separation_metrics(b: BimodalParams) -> tuple[PolicyMetrics, PolicyMetrics]:
    """Closed forms for both policies exactly as printed; diagnostics only."""
    a1, a2, p1 = b.a1, b.a2, b.p1
    s_t = p1**2 * a1 + (1 - p1**2) * a2
    s_c = 2 * p1**2 * a1 + 2 * p1 * (1 - p1) * (a1 + a2) + 2 * (1 - p1**2) * a2
    d_t = p1**2 * a1 + 2 * p1**2 * (1 - p1) * (2 * a1) + (1 - p1) ** 2 * (2 * p1 + 1) * a2
    d_c = p1**2 * (2 * a1) + 2 * p1**2 * (1 - p1) * (3 * a1) + (1 - p1) ** 2 * (2 * p1 + 1) * (2 * a2)
    return PolicyMetrics(s_t, s_c / 2, s_c), PolicyMetrics(d_t, d_c / 2, d_c)


@dataclass(frozen=True)
class SeparationReport:
    params: BimodalParams
    lam: float
    pi_s: PolicyMetrics
    pi_d: PolicyMetrics
    window: bool
    dominates_T: bool
    dominates_C: bool

    @property
    def J_s(self) -> float:
        return weighted(self.pi_s.ET, self.pi_s.EC, self.lam)

    @property
    def J_d(self) -> float:
        return weighted(self.pi_d.ET, self.pi_d.EC, self.lam)

    def to_dict(self) -> dict:
        return {
            "pi_s": self.pi_s.to_dict(),
            "pi_d": self.pi_d.to_dict(),
            "window": self.window,
            "dominates_T": self.dominates_T,
            "dominates_C": self.dominates_C,
            "J_s": self.J_s,
            "J_d": self.J_d,
        }


def separation_demo(b: BimodalParams, w) -> SeparationReport:
    """Compare per-task ``[0, a2]`` against the joint policy that hands a spare
    copy to whichever task is still running when the other finishes at ``a1``.

    Both are evaluated by enumerating all 8 joint outcomes of the two initial
    machines and the spare copy.
    """
    lam = w.lam if isinstance(w, CostWeights) else CostWeights(float(w)).lam
    if not 2 * b.a1 < b.a2:
        raise PreconditionViolated(f"needs 2*a1 < a2, got a1={b.a1}, a2={b.a2}")
    s = separate_metrics(b)
    d = joint_metrics(b)
    return SeparationReport(b, lam, s, d, in_window(b), d.ET < s.ET, d.EC < s.EC)
