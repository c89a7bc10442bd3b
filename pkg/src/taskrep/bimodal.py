"""Two-machine analysis for bimodal execution times.

Closed forms here were derived by conditioning on the first machine's outcome
and are checked against exact enumeration in the test suite. The expressions
as printed in the source analysis are kept in :func:`printed_closed_form_2m`
for diagnostics only; two of its branches disagree with enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateDenominator, InvalidOrder, ProbOutOfRange, TimeOutOfRange
from .evaluate import CostWeights, weighted
from .pmf import TIME_EPS, DiscretePMF, bimodal
from .policy import StartVector


@dataclass(frozen=True)
class BimodalParams:
    a1: float
    a2: float
    p1: float

    def __post_init__(self):
        if not 0 < self.a1 < self.a2:
            raise InvalidOrder(f"need 0 < a1 < a2, got a1={self.a1}, a2={self.a2}")
        if not 0 < self.p1 < 1:
            raise ProbOutOfRange(f"p1 must lie in (0, 1), got {self.p1}")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1

    @property
    def ratio(self) -> float:
        return self.a1 / self.a2

    def pmf(self) -> DiscretePMF:
        return bimodal(self.a1, self.a2, self.p1)


@dataclass(frozen=True)
class Thresholds:
    tau1: float
    tau2: float
    tau3: float


def _branch(b: BimodalParams, t2: float) -> str:
    if t2 + b.a1 < b.a2 - TIME_EPS:
        return "early-lt-a1" if t2 < b.a1 - TIME_EPS else "early-ge-a1"
    return "late-lt-a1" if t2 < b.a1 - TIME_EPS else "late-ge-a1"


def closed_form_2m(b: BimodalParams, t2: float) -> tuple[float, float]:
    """``(E[T], E[C])`` of the policy ``[0, t2]``."""
    if t2 < -TIME_EPS or t2 > b.a2 + TIME_EPS:
        raise TimeOutOfRange(f"t2={t2} outside [0, {b.a2}]")
    a1, a2, p1, p2 = b.a1, b.a2, b.p1, b.p2
    if t2 + a1 < a2 - TIME_EPS:
        # slow first machine is rescued by a fast second copy at t2 + a1
        et = p1 * a1 + p1 * p2 * (t2 + a1) + p2 * p2 * a2
    else:
        et = p1 * a1 + p2 * a2
    # second copy runs for (a1 - t2)^+ when the first is fast, (T - t2) otherwise
    ec = 2 * et - p1 * min(t2, a1) - p2 * t2
    return et, ec


def printed_closed_form_2m(b: BimodalParams, t2: float) -> tuple[float, float]:
    """The two-machine expressions exactly as printed, for mismatch diagnostics."""
    a1, a2, p1, p2 = b.a1, b.a2, b.p1, b.p2
    if t2 + a1 < a2:
        et = a1 * (p2 - p1) * p1 + a2 * p2**2 + t2 * p1 * p2
        if t2 < a1:
            ec = 2 * et - t2 * (p1**2 + p2**2)
        else:
            ec = 2 * et - a1 * p1 - t2 * p2
    else:
        et = a1 * p1 + a2 * p2
        ec = 2 * et - a1 * p1 - t2 * p2
    return et, ec


def closed_form_branch(b: BimodalParams, t2: float) -> str:
    return _branch(b, t2)


def thresholds(b: BimodalParams) -> Thresholds:
    a1, a2, p1 = b.a1, b.a2, b.p1
    d1 = (a2 - a1) * (1 - p1) * p1
    d2 = p1 * (1 - p1)
    d3 = (a2 - 2 * a1) * p1
    if abs(d1) <= TIME_EPS or abs(d2) <= TIME_EPS or abs(d3) <= TIME_EPS:
        raise DegenerateDenominator(f"threshold denominator vanishes for {b}")
    tau1 = (a1 * p1 * (3 - 2 * p1) + a2 * (1 - p1) * (1 - 2 * p1)) / d1
    tau2 = (1 + 2 * p1 * (1 - p1)) / d2
    tau3 = (a1 * (4 * p1 - 1) + a2 * (1 - 2 * p1)) / d3
    return Thresholds(tau1, tau2, tau3)


@dataclass(frozen=True)
class Suboptimality:
    sub_a: bool
    sub_b: bool
    sub_c: bool


def suboptimality_checks(b: BimodalParams) -> Suboptimality:
    """Sufficient conditions under which each non-trivial policy is never optimal.

    ``sub_a`` flags ``[0, a2 - a1]``, ``sub_b`` flags ``[0, a1]`` and ``sub_c``
    flags ``[0, a2]``. The ``sub_c`` bound is treated as vacuous for ``p1 <= 1/4``.
    """
    p1 = b.p1
    sub_b = b.ratio > p1 / (1 + p1)
    sub_c = (4 * p1 - 1) > 0 and b.ratio < (2 * p1 - 1) / (4 * p1 - 1)
    return Suboptimality(True, sub_b, sub_c)


def region(b: BimodalParams) -> str:
    """Parameter region label: ``"d"``, ``"e"`` or ``"f"``."""
    s = suboptimality_checks(b)
    if s.sub_b:
        return "d"
    if s.sub_c:
        return "f"
    return "e"


def candidates(b: BimodalParams) -> list[StartVector]:
    return [StartVector((0.0, 0.0)), StartVector((0.0, b.a1)), StartVector((0.0, b.a2))]


def threshold_prediction(b: BimodalParams, lam: float) -> StartVector | None:
    """The policy the threshold rule picks, or ``None`` when a threshold is undefined."""
    try:
        th = thresholds(b)
    except DegenerateDenominator:
        return None
    ratio = math.inf if lam == 0 else (1 - lam) / lam
    zero, early, late = candidates(b)
    reg = region(b)
    if reg == "d":
        return late if ratio <= th.tau1 else zero
    if reg == "f":
        return early if ratio <= th.tau2 else zero
    if ratio <= th.tau3:
        return late
    if ratio <= th.tau2:
        return early
    return zero


@dataclass(frozen=True)
class Classification:
    policy: StartVector
    region: str
    costs: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    predicted: StartVector | None = None

    @property
    def agrees_with_thresholds(self) -> bool | None:
        if self.predicted is None:
            return None
        best = self.costs[self.policy]
        return self.costs[self.predicted] <= best + 1e-9


def classify_optimal(b: BimodalParams, w) -> Classification:
    """Best of ``[0,0]``, ``[0,a1]``, ``[0,a2]`` by direct cost comparison.

    The threshold rule's choice is attached as ``predicted`` for comparison only.
    """
    lam = w.lam if isinstance(w, CostWeights) else CostWeights(float(w)).lam
    costs, metrics = {}, {}
    for v in candidates(b):
        et, ec = closed_form_2m(b, v[1])
        metrics[v] = (et, ec)
        costs[v] = weighted(et, ec, lam)
    best = min(costs.values())
    # ties resolve to the earliest second start
    pick = next(v for v in candidates(b) if costs[v] <= best + 1e-9)
    return Classification(pick, region(b), costs, metrics, threshold_prediction(b, lam))
