import numpy as np
import pytest

from taskrep import eval_replicated, eval_single, new_pmf, simulate_dynamic, simulate_static
from taskrep.simulate import draw_times, dynamic_outcomes, static_outcomes, uniforms

from oracles import random_pmf


def within(est_mean, se, exact, k=3.0):
    return abs(est_mean - exact) <= k * se + 1e-12


def test_motivating_estimate(motivating):
    est = simulate_static(motivating, [0, 2], 1, 10**6, seed=1)
    assert within(est.mean_T, est.se_T, 2.23)
    assert within(est.mean_C, est.se_C, 2.46)
    assert est.trials == 10**6


def test_degenerate_pmf_has_zero_error():
    est = simulate_static(new_pmf([5], [1.0]), [0], 1, 1000, seed=3)
    assert est.mean_T == 5 and est.se_T == 0
    assert est.mean_C == 5 and est.se_C == 0


def test_two_task_maximum(motivating):
    est = simulate_static(motivating, [0], 2, 10**6, seed=2)
    assert within(est.mean_T, est.se_T, 2.95)


def test_dynamic_matches_static(motivating):
    s = simulate_static(motivating, [0, 2], 1, 10**5, seed=4)
    d = simulate_dynamic(motivating, [0, 2], 10**5, seed=4)
    assert s == d


def test_dynamic_simultaneous_launch(motivating):
    d = simulate_dynamic(motivating, [0, 0], 50_000, seed=5)
    assert within(d.mean_T, d.se_T, 2.05)


def test_reproducible(x_l3):
    a = simulate_static(x_l3, [0, 4, 8], 3, 20_000, seed=9)
    b = simulate_static(x_l3, [0, 4, 8], 3, 20_000, seed=9)
    assert a == b
    c = simulate_static(x_l3, [0, 4, 8], 3, 20_000, seed=10)
    assert c != a


def test_counter_addressing():
    full = uniforms(42, 0, 1000)
    assert np.array_equal(full[500:600], uniforms(42, 500, 100))
    assert np.all((full >= 0) & (full < 1))
    assert abs(full.mean() - 0.5) < 0.05


def test_inverse_cdf_frequencies(x_l3):
    x = draw_times(x_l3, 200_000, 1, 1, seed=0).ravel()
    for a, p in x_l3.items():
        assert np.mean(x == a) == pytest.approx(p, abs=0.005)


def test_launch_at_completion_is_skipped():
    draws = np.array([[[2.0, 2.0]]])
    t, c = static_outcomes([0, 2], draws)
    assert (t[0], c[0]) == (2.0, 2.0)
    t, c = dynamic_outcomes([0, 2], draws)
    assert (t[0], c[0]) == (2.0, 2.0)


@pytest.mark.parametrize("seed", range(6))
def test_agrees_with_exact(seed):
    rng = np.random.default_rng(seed)
    pmf = random_pmf(rng, int(rng.integers(1, 4)), integer=bool(seed % 2))
    m = int(rng.integers(1, 4))
    n = int(rng.integers(1, 4))
    times = [0.0, *sorted(rng.uniform(0, pmf.max_time, m - 1).tolist())]
    exact = eval_replicated(pmf, times, n)
    est = simulate_static(pmf, times, n, 50_000, seed=seed)
    assert within(est.mean_T, est.se_T, exact.expected_T_max)
    assert within(est.mean_C, est.se_C, exact.expected_C)


def test_single_trial_has_zero_error(motivating):
    est = simulate_static(motivating, [0], 1, 1, seed=0)
    assert est.se_T == 0 and est.se_C == 0


def test_metadata(motivating):
    d = simulate_static(motivating, [0], 1, 10, seed=7).to_dict()
    assert d["seed"] == 7 and d["prng"].startswith("splitmix64")
    assert set(d) >= {"mean_T", "se_T", "mean_C", "se_C", "trials", "seed"}


def test_exact_single_vs_simulated(motivating):
    e = eval_single(motivating, [0, 0])
    est = simulate_static(motivating, [0, 0], 1, 200_000, seed=12)
    assert within(est.mean_C, est.se_C, e.expected_C)
