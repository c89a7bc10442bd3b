"""Single-task replication policies as start-time vectors.

A vector ``[t_1, ..., t_m]`` launches copy ``j`` at ``t_j`` unless the task has
already finished. With ``t_1 = 0`` the task is always done by ``pmf.max_time``,
so an entry equal to ``max_time`` encodes an unused machine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TimeOutOfRange, ValidationError
from .pmf import TIME_EPS, DiscretePMF


@dataclass(frozen=True, order=True)
class StartVector:
    times: tuple[float, ...]

    def __post_init__(self):
        if not self.times:
            raise ValidationError("a start vector needs at least one machine")

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return iter(self.times)

    def __getitem__(self, idx):
        return self.times[idx]

    def extend(self, t: float) -> "StartVector":
        return StartVector(self.times + (float(t),))

    def launched(self, pmf: DiscretePMF) -> tuple[float, ...]:
        """Start times strictly before the sentinel."""
        return tuple(t for t in self.times if t < pmf.max_time - TIME_EPS)

    def __str__(self) -> str:
        return format_policy(self)


def _check_range(times, pmf: DiscretePMF) -> None:
    hi = pmf.max_time
    for t in times:
        if t < -TIME_EPS or t > hi + TIME_EPS:
            raise TimeOutOfRange(f"start time {t} outside [0, {hi}]")


def _snap(t: float, pmf: DiscretePMF) -> float:
    if abs(t) <= TIME_EPS:
        return 0.0
    if abs(t - pmf.max_time) <= TIME_EPS:
        return pmf.max_time
    return t


def canonicalize(times, pmf: DiscretePMF) -> StartVector:
    """Sort ascending and shift so the earliest copy starts at 0.

    The shift moves every completion time down by ``min(times)`` and leaves
    machine time unchanged, so the canonical vector is never worse.
    """
    times = [float(t) for t in times]
    if not times:
        raise ValidationError("a start vector needs at least one machine")
    _check_range(times, pmf)
    times.sort()
    lo = times[0]
    if lo > 0:
        times = [t - lo for t in times]
    return StartVector(tuple(_snap(t, pmf) for t in times))


def prune(v: StartVector, pmf: DiscretePMF) -> StartVector:
    """Mark machines started in ``[max_time - min_time, max_time)`` as unused.

    Such a copy cannot finish before the first machine (started at 0) does,
    so it only adds machine time. The first entry is never touched.
    """
    hi = pmf.max_time
    cut = hi - pmf.min_time
    out = [v.times[0]]
    for t in v.times[1:]:
        out.append(hi if cut - TIME_EPS <= t < hi else t)
    return StartVector(tuple(out))


def parse_policy(text: str) -> tuple[float, ...]:
    """Parse the comma-separated textual form, e.g. ``"0,2,7"``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValidationError(f"cannot parse policy {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"cannot parse policy {text!r}") from exc


def _fmt_time(t: float) -> str:
    # shortest repr round-trips exactly through float()
    s = repr(float(t))
    return s[:-2] if s.endswith(".0") else s


def format_policy(v) -> str:
    times = v.times if isinstance(v, StartVector) else v
    return ",".join(_fmt_time(t) for t in times)
