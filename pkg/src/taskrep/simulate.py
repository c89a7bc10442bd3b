"""Monte Carlo estimates of completion time and machine time.

Random run times come from a counter-based generator: the uniform for
``(trial, task, copy)`` is a SplitMix64 hash of the seed and that cell's flat
index, so any trial can be regenerated on its own and evaluation order never
changes the result.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ValidationError
from .pmf import DiscretePMF
from .policy import StartVector

PRNG_NAME = "splitmix64-counter"
PRNG_VERSION = 1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniforms in [0, 1) for flat counters ``start .. start+count-1``."""
    with np.errstate(over="ignore"):
        key = _mix(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) * _GOLDEN + _GOLDEN)
        ctr = np.arange(start, start + count, dtype=np.uint64)
        bits = _mix(key + (ctr + np.uint64(1)) * _GOLDEN)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def draw_times(pmf: DiscretePMF, trials: int, n: int, m: int, seed: int) -> np.ndarray:
    """Run times for every potential copy, shape (trials, n, m), by inverse-CDF lookup."""
    support, probs = pmf.as_arrays()
    cum = np.cumsum(probs)
    u = uniforms(seed, 0, trials * n * m)
    idx = np.minimum(np.searchsorted(cum, u, side="right"), len(support) - 1)
    return support[idx].reshape(trials, n, m)


@dataclass(frozen=True)
class SimEstimate:
    mean_T: float
    se_T: float
    mean_C: float
    se_C: float
    trials: int
    seed: int
    prng: str = f"{PRNG_NAME}/v{PRNG_VERSION}"

    def to_dict(self) -> dict:
        return asdict(self)


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    # fsum is correctly rounded, so the result does not depend on trial order
    mean = math.fsum(x) / x.size
    if x.size < 2:
        return mean, 0.0
    var = math.fsum((x - mean) ** 2) / (x.size - 1)
    return mean, math.sqrt(var / x.size)


def _summarize(t: np.ndarray, c: np.ndarray, seed: int) -> SimEstimate:
    mt, st = _mean_se(t)
    mc, sc = _mean_se(c)
    return SimEstimate(mt, st, mc, sc, int(t.size), int(seed))


def static_outcomes(v, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial ``(T, C)`` for a fixed start vector; ``draws`` is (trials, n, m).

    ``C`` is averaged over tasks.
    """
    starts = np.asarray(v.times if isinstance(v, StartVector) else v, dtype=float)
    if draws.ndim != 3 or draws.shape[2] != starts.size:
        raise ValidationError(f"draws of shape {draws.shape} do not match {starts.size} copies")
    t_task = (starts + draws).min(axis=2)
    c_task = np.maximum(t_task[:, :, None] - starts, 0.0).sum(axis=2)
    return t_task.max(axis=1), c_task.mean(axis=1)


def _dynamic_trial(starts, xs) -> tuple[float, float]:
    # event queue of (time, kind, copy); kind 0 = completion, 1 = scheduled launch,
    # so a completion at the same instant as a launch suppresses the launch
    events = [(t, 1, j) for j, t in enumerate(starts)]
    heapq.heapify(events)
    running: dict[int, float] = {}
    while events:
        now, kind, j = heapq.heappop(events)
        if kind == 0:
            return now, math.fsum(now - s for s in running.values())
        running[j] = now
        heapq.heappush(events, (now + xs[j], 0, j))
    raise RuntimeError("no copy was ever launched")


def dynamic_outcomes(v, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial ``(T, C)`` for a single task under feedback-driven launching.

    At each scheduled time the scheduler checks whether the task is still
    running and only then launches the next copy; the first completion
    terminates every running copy.
    """
    starts = list(v.times if isinstance(v, StartVector) else v)
    if draws.ndim != 3 or draws.shape[1] != 1 or draws.shape[2] != len(starts):
        raise ValidationError("dynamic simulation needs draws of shape (trials, 1, m)")
    out_t = np.empty(draws.shape[0])
    out_c = np.empty(draws.shape[0])
    for r in range(draws.shape[0]):
        out_t[r], out_c[r] = _dynamic_trial(starts, draws[r, 0].tolist())
    return out_t, out_c


def simulate_static(pmf: DiscretePMF, v, n: int, trials: int, seed: int) -> SimEstimate:
    if trials < 1 or n < 1:
        raise ValidationError(f"need trials >= 1 and n >= 1, got trials={trials}, n={n}")
    m = len(v)
    t, c = static_outcomes(v, draw_times(pmf, trials, n, m, seed))
    return _summarize(t, c, seed)


def simulate_dynamic(pmf: DiscretePMF, v, trials: int, seed: int) -> SimEstimate:
    if trials < 1:
        raise ValidationError(f"need trials >= 1, got {trials}")
    t, c = dynamic_outcomes(v, draw_times(pmf, trials, 1, len(v), seed))
    return _summarize(t, c, seed)
