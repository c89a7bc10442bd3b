import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taskrep import StartVector, canonicalize, eval_single, new_pmf, prune
from taskrep.errors import TimeOutOfRange, ValidationError
from taskrep.evaluate import eval_trace
from taskrep.policy import format_policy, parse_policy

from oracles import random_pmf


@pytest.mark.parametrize(
    "times, expected",
    [([2, 0], (0, 2)), ([1, 3], (0, 2)), ([0, 7, 7], (0, 7, 7))],
)
def test_canonicalize(motivating, times, expected):
    assert canonicalize(times, motivating).times == expected


def test_canonicalize_rejects_out_of_range(motivating):
    with pytest.raises(TimeOutOfRange):
        canonicalize([0, 9], motivating)
    with pytest.raises(TimeOutOfRange):
        canonicalize([-1, 2], motivating)


@pytest.mark.parametrize(
    "times, expected",
    [((0, 6), (0, 7)), ((0, 2), (0, 2)), ((0, 5), (0, 7)), ((0, 4.999), (0, 4.999))],
)
def test_prune(motivating, times, expected):
    assert prune(StartVector(times), motivating).times == expected


def test_prune_keeps_first_machine_for_single_atom():
    pmf = new_pmf([5], [1.0])
    assert prune(StartVector((0.0, 0.0)), pmf).times == (0.0, 5.0)


times_in_range = st.lists(st.floats(0, 7, allow_nan=False), min_size=1, max_size=5)


@given(times_in_range)
def test_canonicalize_idempotent(times):
    pmf = new_pmf([2, 7], [0.9, 0.1])
    once = canonicalize(times, pmf)
    assert canonicalize(once.times, pmf) == once
    assert once.times[0] == 0.0
    assert list(once.times) == sorted(once.times)


@given(times_in_range, st.lists(st.sampled_from([2.0, 7.0]), min_size=5, max_size=5))
def test_canonical_shift_only_moves_completion_time(times, xs):
    pmf = new_pmf([2, 7], [0.9, 0.1])
    canon = canonicalize(times, pmf)
    shift = min(times)
    t0, c0 = eval_trace([sorted(times)], [xs[: len(times)]])
    t1, c1 = eval_trace([list(canon.times)], [xs[: len(times)]])
    # canonicalize snaps values within 1e-9 of 0 or max_time
    assert t1 == pytest.approx(t0 - shift, abs=1e-8)
    assert c1 == pytest.approx(c0, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_prune_never_hurts(seed):
    rng = np.random.default_rng(seed)
    pmf = random_pmf(rng, int(rng.integers(1, 4)))
    m = int(rng.integers(1, 4))
    hi = pmf.max_time
    times = [0.0] + sorted(float(x) for x in rng.uniform(0, hi, m - 1))
    before = eval_single(pmf, canonicalize(times, pmf))
    after = eval_single(pmf, prune(canonicalize(times, pmf), pmf))
    assert after.expected_T <= before.expected_T + 1e-9
    assert after.expected_C <= before.expected_C + 1e-9


@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=6))
def test_policy_text_round_trip(times):
    v = StartVector(tuple(times))
    assert StartVector(parse_policy(format_policy(v))) == v


def test_parse_policy_errors():
    assert parse_policy("0,2,7") == (0.0, 2.0, 7.0)
    for bad in ("", "0,,2", "a,b"):
        with pytest.raises(ValidationError):
            parse_policy(bad)
