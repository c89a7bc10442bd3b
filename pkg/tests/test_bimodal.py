import itertools

import numpy as np
import pytest

from taskrep import BimodalParams, classify_optimal, closed_form_2m, eval_single, suboptimality_checks, thresholds
from taskrep.bimodal import closed_form_branch, printed_closed_form_2m, region, threshold_prediction
from taskrep.errors import DegenerateDenominator, InvalidOrder, ProbOutOfRange, TimeOutOfRange


def t2_grid(b):
    a1, a2 = b.a1, b.a2
    return [0.0, a1 / 2, a1, (a1 + a2) / 2, a2 - a1, a2]


@pytest.mark.parametrize("t2, expected", [(2, (2.23, 2.46)), (0, (2.05, 4.10)), (7, (2.5, 2.5))])
def test_closed_form_examples(t2, expected):
    assert closed_form_2m(BimodalParams(2, 7, 0.9), t2) == pytest.approx(expected, abs=1e-12)


GRID = list(
    itertools.product([1.0, 2.0, 3.0, 4.0, 5.0], [5.5, 7.0, 9.0, 12.0, 20.0], [0.1, 0.3, 0.5, 0.7, 0.9])
)


@pytest.mark.parametrize("a1, a2, p1", GRID)
def test_closed_form_matches_enumeration(a1, a2, p1):
    b = BimodalParams(a1, a2, p1)
    pmf = b.pmf()
    for t2 in t2_grid(b):
        e = eval_single(pmf, [0, t2])
        assert closed_form_2m(b, t2) == pytest.approx((e.expected_T, e.expected_C), abs=1e-9)


def test_printed_forms_disagree_off_the_late_branch():
    b = BimodalParams(2, 7, 0.9)
    # early branch, printed completion-time expression
    assert printed_closed_form_2m(b, 2)[0] == pytest.approx(-1.19)
    # late branch agrees with enumeration
    assert printed_closed_form_2m(b, 7) == pytest.approx(closed_form_2m(b, 7))
    assert closed_form_branch(b, 1) == "early-lt-a1"
    assert closed_form_branch(b, 5) == "late-ge-a1"


def test_closed_form_range():
    with pytest.raises(TimeOutOfRange):
        closed_form_2m(BimodalParams(2, 7, 0.9), 8)


def test_params_validation():
    with pytest.raises(InvalidOrder):
        BimodalParams(7, 2, 0.5)
    with pytest.raises(ProbOutOfRange):
        BimodalParams(2, 7, 1.0)


def test_thresholds_examples():
    th = thresholds(BimodalParams(2, 7, 0.9))
    assert th.tau2 == pytest.approx(1.18 / 0.09)
    assert th.tau1 == pytest.approx(1.6 / 0.45)
    assert th.tau3 == pytest.approx(-0.4 / 2.7)
    half = thresholds(BimodalParams(2, 7, 0.5))
    assert half.tau2 == pytest.approx(6.0)
    # with p1 = 1/2 the tau3 numerator reduces to a1
    assert half.tau3 * (7 - 4) * 0.5 == pytest.approx(2.0)
    th = thresholds(BimodalParams(3, 10, 0.8))
    assert (th.tau1, th.tau2, th.tau3) == pytest.approx((2.16 / 1.12, 8.25, 0.1875))


def test_thresholds_degenerate():
    with pytest.raises(DegenerateDenominator):
        thresholds(BimodalParams(5, 10, 0.5))


@pytest.mark.parametrize(
    "b, sub_b, sub_c, reg",
    [
        (BimodalParams(2, 7, 0.9), False, True, "f"),
        (BimodalParams(6, 20, 0.8), False, False, "e"),
        (BimodalParams(9, 10, 0.5), True, False, "d"),
        (BimodalParams(1, 10, 0.2), False, False, "e"),
    ],
)
def test_suboptimality_checks(b, sub_b, sub_c, reg):
    s = suboptimality_checks(b)
    assert s.sub_a
    assert (s.sub_b, s.sub_c) == (sub_b, sub_c)
    assert region(b) == reg


@pytest.mark.parametrize("lam, expected", [(0.5, (0, 2)), (1.0, (0, 0)), (0.0, (0, 2))])
def test_classify_examples(lam, expected):
    c = classify_optimal(BimodalParams(2, 7, 0.9), lam)
    assert c.policy.times == expected
    assert c.region == "f"
    assert c.costs[c.policy] == pytest.approx(min(c.costs.values()))


def test_classifier_considers_three_candidates():
    b = BimodalParams(2, 7, 0.9)
    c = classify_optimal(b, 0.5)
    assert {v.times for v in c.costs} == {(0, 0), (0, 2), (0, 7)}


PARAM_GRID = [
    (r, p, lam)
    for r in np.linspace(0.05, 0.95, 10)
    for p in np.linspace(0.05, 0.95, 10)
    for lam in np.linspace(0, 1, 10)
]


def test_region_structure_on_grid():
    for r, p, lam in PARAM_GRID:
        b = BimodalParams(10 * r, 10.0, p)
        c = classify_optimal(b, lam)
        if c.region == "f":
            assert c.policy[1] != b.a2
        if c.region == "d":
            assert c.policy[1] != b.a1


def test_threshold_prediction_is_a_candidate():
    b = BimodalParams(3, 10, 0.8)
    for lam in (0, 0.3, 1):
        assert threshold_prediction(b, lam) in classify_optimal(b, lam).costs
    assert threshold_prediction(BimodalParams(5, 10, 0.5), 0.5) is None
