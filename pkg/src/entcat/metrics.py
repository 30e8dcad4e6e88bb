"""Conversion probability and majorization distance."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .convertibility import pad_pair
from .search import oracle_catalyzes
from .vectors import ProbVector, as_vector, format_decimal, format_fraction, tensor


@dataclass(frozen=True)
class Probability:
    value: Fraction
    argmin_l: int


@dataclass(frozen=True)
class Distance:
    value: Fraction
    argmax_l: int


@dataclass(frozen=True)
class MetricReport:
    p_max: Fraction
    argmin_l: int
    delta: Fraction
    argmax_l: int

    def to_json(self) -> dict:
        return {
            "p_max": format_fraction(self.p_max),
            "p_max_decimal": format_decimal(self.p_max),
            "argmin_l": self.argmin_l,
            "delta": format_fraction(self.delta),
            "delta_decimal": format_decimal(self.delta),
            "argmax_l": self.argmax_l,
        }


def _tail_ratio_min(x: ProbVector, y: ProbVector) -> Probability:
    # E_l = 1 - (sum of the l-1 largest). Where the target tail vanishes the
    # ratio is 0/0 or +inf and imposes no constraint.
    best, best_l = Fraction(1), 1
    for l, (sx, sy) in enumerate(zip(accumulate(x), accumulate(y)), start=2):
        if l > x.dim:
            break
        ex, ey = 1 - sx, 1 - sy
        if ey == 0:
            continue
        if ex / ey < best:
            best, best_l = ex / ey, l
    return Probability(best, best_l)


def p_max_plain(p, q) -> Probability:
    """Largest probability of converting p into q by LOCC (tail-ratio minimum)."""
    p, q = pad_pair(p, q)
    return _tail_ratio_min(p, q)


def p_max_catalytic(p, q, r) -> Probability:
    """Same quantity for ``p (x) r -> q (x) r``."""
    p, q = pad_pair(p, q)
    r = as_vector(r)
    return _tail_ratio_min(tensor(p, r), tensor(q, r))


def majorization_distance(p, q, r) -> Distance:
    """Twice the largest prefix-sum excess of ``p (x) r`` over ``q (x) r``.

    The full-length prefix always contributes a gap of exactly zero, so the
    maximum is never negative.
    """
    p, q = pad_pair(p, q)
    r = as_vector(r)
    gaps = accumulate(a - b for a, b in zip(tensor(p, r), tensor(q, r)))
    best, best_l = None, 1
    for l, g in enumerate(gaps, start=1):
        if best is None or g > best:
            best, best_l = g, l
    return Distance(2 * max(best, Fraction(0)), best_l)


def metric_report(p, q, r=None) -> MetricReport:
    r = ProbVector((1,)) if r is None else as_vector(r)
    prob = p_max_catalytic(p, q, r)
    dist = majorization_distance(p, q, r)
    return MetricReport(prob.value, prob.argmin_l, dist.value, dist.argmax_l)


def prop2_check(p, q, r) -> bool:
    """``P_max = 1``, ``delta = 0`` and the oracle verdict all agree."""
    return (
        (p_max_catalytic(p, q, r).value == 1)
        == (majorization_distance(p, q, r).value == 0)
        == oracle_catalyzes(p, q, r)
    )
