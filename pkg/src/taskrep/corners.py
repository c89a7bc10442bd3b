"""Finite candidate sets for optimal start times."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ValidationError
from .pmf import TIME_EPS, DiscretePMF


@dataclass(frozen=True)
class LatticeSet:
    values: tuple[float, ...]
    m: int

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, t) -> bool:
        return any(abs(t - v) <= TIME_EPS for v in self.values)


def dedup_sorted(values, lo: float, hi: float) -> list[float]:
    """Sort, clip-check against ``[lo, hi]``, snap near-endpoints and merge values within TIME_EPS."""
    kept = []
    for v in values:
        if v < lo - TIME_EPS or v > hi + TIME_EPS:
            continue
        if abs(v - lo) <= TIME_EPS:
            v = lo
        elif abs(v - hi) <= TIME_EPS:
            v = hi
        kept.append(v)
    kept.sort()
    out: list[float] = []
    for v in kept:
        if not out or v - out[-1] > TIME_EPS:
            out.append(v)
    return out


def lattice_bound(l: int, m: int) -> int:
    return 2**l * comb(m + l - 1, l - 1)


def lattice_set(pmf: DiscretePMF, m: int) -> LatticeSet:
    """All ``sum_j alpha_j w_j`` in ``[0, max_time]`` with integer ``w`` and ``sum |w_j| <= m``."""
    if m < 1:
        raise ValidationError(f"machine count must be >= 1, got {m}")
    alphas = pmf.support
    hi = pmf.max_time
    found: list[float] = []

    def walk(j: int, partial: float, left: int) -> None:
        if j == len(alphas):
            found.append(partial)
            return
        a = alphas[j]
        for w in range(-left, left + 1):
            walk(j + 1, partial + w * a, left - abs(w))

    walk(0, 0.0, m)
    return LatticeSet(tuple(dedup_sorted(found, 0.0, hi)), m)


def corner_points(prefix, pmf: DiscretePMF) -> list[float]:
    """Corner points for the next start time given the starts chosen so far.

    An empty prefix gives ``{0} | support``; each further start ``t`` maps the
    current set ``U`` to ``{u + t - b * alpha : u in U, alpha in support, b in {0, 1}}``
    restricted to ``[0, max_time]``.
    """
    hi = pmf.max_time
    current = dedup_sorted([0.0, *pmf.support], 0.0, hi)
    for t in prefix:
        nxt = [u + t for u in current]
        nxt += [u + t - a for u in current for a in pmf.support]
        current = dedup_sorted(nxt, 0.0, hi)
    return current
