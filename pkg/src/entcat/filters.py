"""Necessary conditions on entanglement catalysts.

Every filter here encodes an inequality that any catalyst ``r`` of a
solvable-incomparable pair ``(p, q)`` must satisfy. A rejection is a proof
that ``r`` does not catalyze; an acceptance proves nothing.

Ratio inequalities are decided in cross-multiplied form, e.g.
``q_d / q_{l+1} < r_k / r_{k-1}`` is evaluated as
``q_d * r_{k-1} < q_{l+1} * r_k``. This is exact, needs no division, and
gives the natural extended-order reading when a Schmidt coefficient of the
target is zero. Each inequality involves only one of p, q and r on each
factor, so all three may be scaled to integers independently.

Indices in witnesses and docstrings are 1-based, as in the usual notation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .convertibility import LSetReport, l_set, pad_pair
from .errors import DegenerateCatalyst, IndexOutOfRange, UnsolvablePair
from .vectors import ProbVector, as_vector, format_fraction

DEFAULT_T2_CAP = 10**6
INF = math.inf


class FilterId(str, Enum):
    T1_RATIO = "T1_RATIO"
    T2_SEQUENCE = "T2_SEQUENCE"
    COR1_TWOLEVEL = "COR1_TWOLEVEL"
    PROP1_TRIPLE = "PROP1_TRIPLE"
    PROP1_EDGE = "PROP1_EDGE"
    COR3_DUAL = "COR3_DUAL"
    REM2_HEAD = "REM2_HEAD"
    PRA99_BASELINE = "PRA99_BASELINE"


@dataclass(frozen=True)
class Comparison:
    """One strict inequality ``lhs < rhs`` with a readable form."""

    text: str
    lhs: Fraction
    rhs: Fraction

    def holds(self) -> bool:
        return self.lhs < self.rhs

    def to_json(self) -> dict:
        return {
            "inequality": self.text,
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
        }


@dataclass(frozen=True)
class Witness:
    """Why a filter rejected: a disjunction of inequalities, none of which holds."""

    indices: dict
    alternatives: tuple[Comparison, ...]

    def violated(self) -> bool:
        return not any(c.holds() for c in self.alternatives)

    def to_json(self) -> dict:
        return {
            "indices": {k: list(v) if isinstance(v, tuple) else v for k, v in self.indices.items()},
            "required_one_of": [c.to_json() for c in self.alternatives],
        }


@dataclass(frozen=True)
class FilterVerdict:
    filter_id: FilterId
    accepted: bool
    witness: Witness | None = None
    inconclusive: bool = False
    checked: int = 0

    def to_json(self) -> dict:
        return {
            "filter": self.filter_id.value,
            "accepted": self.accepted,
            "inconclusive": self.inconclusive,
            "checked": self.checked,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass(frozen=True)
class _Pair:
    p: ProbVector
    q: ProbVector
    report: LSetReport
    # 1-based integer views; index 0 is unused
    P: tuple[int, ...] = field(repr=False)
    Q: tuple[int, ...] = field(repr=False)

    @property
    def d(self) -> int:
        return self.report.d

    @property
    def L(self) -> tuple[int, ...]:
        return self.report.elements


@lru_cache(maxsize=512)
def _pair_cached(p: ProbVector, q: ProbVector) -> _Pair:
    report = l_set(p, q)
    if not report.solvable:
        raise UnsolvablePair(
            f"(p, q) is {report.classification.value}, not incomparable_solvable",
            classification=report.classification.value,
            L=list(report.elements),
        )
    return _Pair(p, q, report, (0,) + p.numerators, (0,) + q.numerators)


def prepare_pair(p, q) -> _Pair:
    """Validate that (p, q) is solvable-incomparable and cache integer views."""
    p, q = pad_pair(p, q)
    return _pair_cached(p, q)


def _catalyst(r) -> tuple[ProbVector, tuple[int, ...]]:
    r = as_vector(r)
    if r.dim < 2:
        raise DegenerateCatalyst("catalyst must have at least two Schmidt coefficients", k=r.dim)
    if r[-1] == 0:
        raise DegenerateCatalyst("catalyst entries must be strictly positive", k=r.dim)
    return r, (0,) + r.numerators


def _cmp(text: str, a: Fraction, b: Fraction, c: Fraction, e: Fraction) -> Comparison:
    """Build ``a*b < c*e`` from exact factors."""
    return Comparison(text, a * b, c * e)


# --------------------------------------------------------------------------
# single-inequality filters


def filter_t1(p, q, r) -> FilterVerdict:
    """``r_1/r_k > min(p_l/p_{l+1}, q_l/q_{l+1})`` for every ``l`` in L."""
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k = r.dim
    P, Q = pair.P, pair.Q
    for l in pair.L:
        if R[1] * P[l + 1] > R[k] * P[l] or R[1] * Q[l + 1] > R[k] * Q[l]:
            continue
        pe, qe, re = pair.p.entries, pair.q.entries, r.entries
        return FilterVerdict(
            FilterId.T1_RATIO,
            False,
            Witness(
                {"l": l},
                (
                    _cmp(f"r_{k}*p_{l} < r_1*p_{l + 1}", re[k - 1], pe[l - 1], re[0], pe[l]),
                    _cmp(f"r_{k}*q_{l} < r_1*q_{l + 1}", re[k - 1], qe[l - 1], re[0], qe[l]),
                ),
            ),
            checked=len(pair.L),
        )
    return FilterVerdict(FilterId.T1_RATIO, True, checked=len(pair.L))


def filter_cor3(p, q, r) -> FilterVerdict:
    """Tail test ``q_d/q_{M+1} < r_k/r_{k-1}`` with ``M`` the largest element of L."""
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k, d, M = r.dim, pair.d, pair.report.M_L
    Q = pair.Q
    if Q[d] * R[k - 1] < Q[M + 1] * R[k]:
        return FilterVerdict(FilterId.COR3_DUAL, True, checked=1)
    qe, re = pair.q.entries, r.entries
    w = Witness(
        {"M_L": M},
        (_cmp(f"q_{d}*r_{k - 1} < q_{M + 1}*r_{k}", qe[d - 1], re[k - 2], qe[M], re[k - 1]),),
    )
    return FilterVerdict(FilterId.COR3_DUAL, False, w, checked=1)


def filter_rem2(p, q, r) -> FilterVerdict:
    """Head test ``q_1/q_{m_L} > r_1/r_2``."""
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    mL = pair.report.m_L
    Q = pair.Q
    if Q[mL] * R[1] < Q[1] * R[2]:
        return FilterVerdict(FilterId.REM2_HEAD, True, checked=1)
    qe, re = pair.q.entries, r.entries
    w = Witness(
        {"m_L": mL},
        (_cmp(f"q_{mL}*r_1 < q_1*r_2", qe[mL - 1], re[0], qe[0], re[1]),),
    )
    return FilterVerdict(FilterId.REM2_HEAD, False, w, checked=1)


def filter_prop1(p, q, r) -> FilterVerdict:
    """Adjacent-component conditions on the catalyst.

    For every ``l`` in L:

    * edge clause: ``q_d/q_{l+1} < r_k/r_{k-1}`` and ``q_1/q_l > r_1/r_2``;
    * for each ``s = 2..k-1`` at least one of ``q_1/q_d > r_{s-1}/r_{s+1}``,
      ``q_1/q_l > r_s/r_{s+1}``, ``q_{l+1}/q_d > r_{s-1}/r_s``.

    The verdict's ``filter_id`` is PROP1_EDGE when the edge clause fails and
    PROP1_TRIPLE otherwise.
    """
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k, d = r.dim, pair.d
    Q = pair.Q
    qe, re = pair.q.entries, r.entries
    checked = 0
    for l in pair.L:
        checked += 2
        if not Q[d] * R[k - 1] < Q[l + 1] * R[k]:
            w = Witness(
                {"l": l},
                (_cmp(f"q_{d}*r_{k - 1} < q_{l + 1}*r_{k}", qe[d - 1], re[k - 2], qe[l], re[k - 1]),),
            )
            return FilterVerdict(FilterId.PROP1_EDGE, False, w, checked=checked)
        if not Q[l] * R[1] < Q[1] * R[2]:
            w = Witness(
                {"l": l},
                (_cmp(f"q_{l}*r_1 < q_1*r_2", qe[l - 1], re[0], qe[0], re[1]),),
            )
            return FilterVerdict(FilterId.PROP1_EDGE, False, w, checked=checked)
    for l in pair.L:
        for s in range(2, k):
            checked += 1
            if (
                Q[d] * R[s - 1] < Q[1] * R[s + 1]
                or Q[l] * R[s] < Q[1] * R[s + 1]
                or Q[d] * R[s - 1] < Q[l + 1] * R[s]
            ):
                continue
            w = Witness(
                {"l": l, "s": s},
                (
                    _cmp(f"q_{d}*r_{s - 1} < q_1*r_{s + 1}", qe[d - 1], re[s - 2], qe[0], re[s]),
                    _cmp(f"q_{l}*r_{s} < q_1*r_{s + 1}", qe[l - 1], re[s - 1], qe[0], re[s]),
                    _cmp(f"q_{d}*r_{s - 1} < q_{l + 1}*r_{s}", qe[d - 1], re[s - 2], qe[l], re[s - 1]),
                ),
            )
            return FilterVerdict(FilterId.PROP1_TRIPLE, False, w, checked=checked)
    return FilterVerdict(FilterId.PROP1_TRIPLE, True, checked=checked)


def filter_pra99(p, q, r) -> FilterVerdict:
    """Baseline bounds from earlier work, kept for comparison only.

    ``max_v r_v/r_{v+1} < min(q_1/q_{m_L}, q_{M+1}/q_d)`` and
    ``r_1/r_k > max_l q_l/q_{l+1}``. Never part of the battery.
    """
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k, d = r.dim, pair.d
    mL, M = pair.report.m_L, pair.report.M_L
    Q = pair.Q
    qe, re = pair.q.entries, r.entries
    checked = 0
    for v in range(1, k):
        checked += 2
        if not R[v] * Q[mL] < Q[1] * R[v + 1]:
            w = Witness(
                {"v": v},
                (_cmp(f"r_{v}*q_{mL} < q_1*r_{v + 1}", re[v - 1], qe[mL - 1], qe[0], re[v]),),
            )
            return FilterVerdict(FilterId.PRA99_BASELINE, False, w, checked=checked)
        if not R[v] * Q[d] < Q[M + 1] * R[v + 1]:
            w = Witness(
                {"v": v},
                (_cmp(f"r_{v}*q_{d} < q_{M + 1}*r_{v + 1}", re[v - 1], qe[d - 1], qe[M], re[v]),),
            )
            return FilterVerdict(FilterId.PRA99_BASELINE, False, w, checked=checked)
    for l in pair.L:
        checked += 1
        if not R[k] * Q[l] < R[1] * Q[l + 1]:
            w = Witness(
                {"l": l},
                (_cmp(f"r_{k}*q_{l} < r_1*q_{l + 1}", re[k - 1], qe[l - 1], re[0], qe[l]),),
            )
            return FilterVerdict(FilterId.PRA99_BASELINE, False, w, checked=checked)
    return FilterVerdict(FilterId.PRA99_BASELINE, True, checked=checked)


# --------------------------------------------------------------------------
# index-sequence family


def _sequence_check(Q, R, k, ls, js):
    """Evaluate one index sequence; returns (min_term, max_term) as integers.

    ``ls`` is ``(l_0=0, l_1, ..., l_{m'}, d)`` and ``js`` is
    ``(j_1, ..., j_{m'+1})``. Terms referencing r_0 or r_{k+1} are dropped.
    """
    lo = hi = None
    for tau, j in enumerate(js, start=1):
        if j >= 1:
            v = R[j] * Q[ls[tau]]
            if lo is None or v < lo:
                lo = v
        if j + 1 <= k:
            v = R[j + 1] * Q[ls[tau - 1] + 1]
            if hi is None or v > hi:
                hi = v
    return lo, hi


def _sequence_witness(q: ProbVector, r: ProbVector, ls, js) -> Witness:
    k = r.dim
    qe, re = q.entries, r.entries
    lo_terms, hi_terms = [], []
    for tau, j in enumerate(js, start=1):
        if j >= 1:
            lo_terms.append((f"r_{j}*q_{ls[tau]}", re[j - 1] * qe[ls[tau] - 1]))
        if j + 1 <= k:
            l_prev = ls[tau - 1] + 1
            hi_terms.append((f"r_{j + 1}*q_{l_prev}", re[j] * qe[l_prev - 1]))
    lo_name, lo = min(lo_terms, key=lambda t: t[1])
    hi_name, hi = max(hi_terms, key=lambda t: t[1])
    return Witness(
        {"l": tuple(ls[1:-1]), "j": tuple(js)},
        (Comparison(f"min {lo_name} < max {hi_name}", lo, hi),),
    )


def t2_sequences(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing ``(j_1..j_{m+1})`` in ``[0, k]`` with some strict step."""
    for combo in combinations_with_replacement(range(k + 1), m + 1):
        if combo[0] == combo[-1]:
            continue
        yield combo[::-1]


def t2_sequence_count(m: int, k: int) -> int:
    return math.comb(k + m + 1, m + 1) - (k + 1)


def _subset_sequences(L, k, d):
    for size in range(1, len(L) + 1):
        for sub in combinations(L, size):
            ls = (0,) + sub + (d,)
            for combo in combinations(range(1, k), size + 1):
                yield ls, combo[::-1]


def filter_t2(p, q, r, subset_mode: bool = False, cap: int = DEFAULT_T2_CAP) -> FilterVerdict:
    """Staircase inequalities over all admissible index sequences.

    For each sequence ``j_1 >= ... >= j_{m+1}`` (values in ``0..k``, not all
    equal) require ``min_tau r_{j_tau} q_{l_tau} < max_tau r_{j_tau+1}
    q_{l_{tau-1}+1}`` with ``l_0 = 0`` and ``l_{m+1} = d``. With
    ``subset_mode`` every nonempty subset of L is also tried with strictly
    decreasing sequences in ``1..k-1``.

    Past ``cap`` sequences the search stops and the verdict is an
    inconclusive accept; truncation never produces a reject.
    """
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k, d, L = r.dim, pair.d, pair.L
    Q = pair.Q
    ls = (0,) + L + (d,)

    def candidates():
        for js in t2_sequences(len(L), k):
            yield ls, js
        if subset_mode:
            yield from _subset_sequences(L, k, d)

    checked = 0
    for seq_ls, js in candidates():
        if checked >= cap:
            return FilterVerdict(FilterId.T2_SEQUENCE, True, inconclusive=True, checked=checked)
        checked += 1
        lo, hi = _sequence_check(Q, R, k, seq_ls, js)
        if lo is None or hi is None or lo < hi:
            continue
        return FilterVerdict(
            FilterId.T2_SEQUENCE, False, _sequence_witness(pair.q, r, seq_ls, js), checked=checked
        )
    return FilterVerdict(FilterId.T2_SEQUENCE, True, checked=checked)


def cor1_index_choices(m: int, k: int) -> Iterator[tuple[int, int, int]]:
    """All valid ``(c1, c2, s)``: ``0 <= c1 < c2 <= k`` and ``1 <= s <= m``."""
    for c1 in range(0, k):
        for c2 in range(c1 + 1, k + 1):
            for s in range(1, m + 1):
                yield c1, c2, s


def filter_cor1(p, q, r, c1: int, c2: int, s: int) -> FilterVerdict:
    """Two-level case: ``min(r_{c1} q_d, r_{c2} q_{l_s}) < max(r_{c1+1} q_{l_s+1}, r_{c2+1} q_1)``.

    This is the index sequence that equals ``c2`` up to position ``s`` and
    ``c1`` afterwards. ``c1 = 0`` drops the ``r_0`` term and ``c2 = k`` drops
    the ``r_{k+1}`` term.
    """
    pair = prepare_pair(p, q)
    r, R = _catalyst(r)
    k, m = r.dim, pair.report.m
    if not (0 <= c1 < c2 <= k):
        raise IndexOutOfRange(f"need 0 <= c1 < c2 <= k = {k}, got c1={c1}, c2={c2}", c1=c1, c2=c2, k=k)
    if not 1 <= s <= m:
        raise IndexOutOfRange(f"need 1 <= s <= m = {m}, got s={s}", s=s, m=m)
    ls = (0,) + pair.L + (pair.d,)
    js = (c2,) * s + (c1,) * (m + 1 - s)
    lo, hi = _sequence_check(pair.Q, R, k, ls, js)
    if lo < hi:
        return FilterVerdict(FilterId.COR1_TWOLEVEL, True, checked=1)
    w = _sequence_witness(pair.q, r, ls, js)
    w = Witness({"c1": c1, "c2": c2, "s": s, **w.indices}, w.alternatives)
    return FilterVerdict(FilterId.COR1_TWOLEVEL, False, w, checked=1)


def filter_cor1_all(p, q, r) -> FilterVerdict:
    """Run :func:`filter_cor1` over every valid index choice."""
    pair = prepare_pair(p, q)
    r, _ = _catalyst(r)
    checked = 0
    for c1, c2, s in cor1_index_choices(pair.report.m, r.dim):
        checked += 1
        v = filter_cor1(p, q, r, c1, c2, s)
        if not v.accepted:
            return FilterVerdict(FilterId.COR1_TWOLEVEL, False, v.witness, checked=checked)
    return FilterVerdict(FilterId.COR1_TWOLEVEL, True, checked=checked)


# --------------------------------------------------------------------------
# battery

BATTERY_ORDER = (
    FilterId.T1_RATIO,
    FilterId.REM2_HEAD,
    FilterId.COR3_DUAL,
    FilterId.PROP1_TRIPLE,
    FilterId.T2_SEQUENCE,
)


def run_battery(
    p,
    q,
    r,
    *,
    short_circuit: bool = False,
    t2_cap: int = DEFAULT_T2_CAP,
    t2_subsets: bool = False,
) -> list[FilterVerdict]:
    """Run the necessary-condition filters cheapest first.

    The baseline from earlier work is not included; call
    :func:`filter_pra99` separately.
    """
    steps = (
        lambda: filter_t1(p, q, r),
        lambda: filter_rem2(p, q, r),
        lambda: filter_cor3(p, q, r),
        lambda: filter_prop1(p, q, r),
        lambda: filter_t2(p, q, r, subset_mode=t2_subsets, cap=t2_cap),
    )
    out = []
    for step in steps:
        v = step()
        out.append(v)
        if short_circuit and not v.accepted:
            break
    return out


def battery_accepts(verdicts: list[FilterVerdict]) -> bool:
    return all(v.accepted for v in verdicts)


def first_reject(verdicts: list[FilterVerdict]) -> FilterVerdict | None:
    return next((v for v in verdicts if not v.accepted), None)


# --------------------------------------------------------------------------
# dimension bound


def _ratio(x: Fraction, y: Fraction):
    """``x / y`` in the extended nonnegative rationals (``x/0 = inf``)."""
    if y == 0:
        return INF
    return x / y


def adjacent_ratios(v) -> list:
    """``v_i / v_{i+1}`` for consecutive entries, ``inf`` past a zero."""
    v = as_vector(v)
    return [_ratio(v[i], v[i + 1]) for i in range(v.dim - 1)]


def _fmt_ext(x) -> str:
    return "inf" if x == INF else format_fraction(x)


@dataclass(frozen=True)
class BoundParams:
    a: Fraction | float
    b: Fraction | float
    c: Fraction | float
    k_lower: int | None

    def to_json(self) -> dict:
        return {
            "a": _fmt_ext(self.a),
            "b": _fmt_ext(self.b),
            "c": _fmt_ext(self.c),
            "k_lower": self.k_lower,
        }


def bound_parameters(p, q) -> tuple:
    pair = prepare_pair(p, q)
    pe, qe, d = pair.p.entries, pair.q.entries, pair.d
    mL, M = pair.report.m_L, pair.report.M_L
    # 1-based access
    P = lambda i: pe[i - 1]  # noqa: E731
    Q = lambda i: qe[i - 1]  # noqa: E731
    a = max(_ratio(Q(1), Q(mL)), _ratio(Q(M + 1), Q(d)))
    b = max(_ratio(Q(l), Q(l + 1)) for l in pair.L)
    c = max(min(_ratio(P(l), P(l + 1)), _ratio(Q(l), Q(l + 1))) for l in pair.L)
    return a, b, c


_EXACT_K_LIMIT = 10_000


def _k_lower(a, b, c) -> int | None:
    if c == INF:
        return None
    if a == INF or b == INF:
        return 2
    base_sq = a * a * b  # (a*sqrt(b))^2
    if base_sq <= 1:
        # c >= 1 always, so c < 1 can never hold
        return None if c >= 1 else 2
    c_sq = c * c
    est = math.log(c) / (0.5 * math.log(base_sq)) + 1 if c > 0 else 0.0
    if est < _EXACT_K_LIMIT:
        k = max(2, int(math.floor(est)) - 1)
        while not c_sq < base_sq ** (k - 1):
            k += 1
        return k
    # huge bound: round the float estimate down so it is never overestimated
    est_low = est * (1 - 1e-12) - 1e-9
    return max(2, math.floor(est_low) + 1)


def dimension_bound(p, q) -> BoundParams:
    """Parameters ``a, b, c`` and the catalyst-dimension lower bound.

    ``k_lower`` is the smallest ``k >= 2`` with ``c < (a*sqrt(b))**(k-1)``,
    decided by exact squaring. ``None`` means no finite dimension can work.
    """
    a, b, c = bound_parameters(p, q)
    return BoundParams(a, b, c, _k_lower(a, b, c))


def ratio_below_a_sqrt_b(ratio: Fraction, a, b) -> bool:
    """Exact test of ``ratio < a*sqrt(b)`` via squaring (all values nonnegative)."""
    if a == INF or b == INF:
        return True
    return ratio * ratio < a * a * b


# --------------------------------------------------------------------------
# two-dimensional catalysts


@dataclass(frozen=True)
class RatioInterval:
    """Open interval of admissible ``r_1/r_2``; ``upper`` may be ``inf``."""

    lower: Fraction
    upper: Fraction | float

    def __contains__(self, x) -> bool:
        return self.lower < x < self.upper

    def to_json(self) -> dict:
        return {"lower": _fmt_ext(self.lower), "upper": _fmt_ext(self.upper)}


def two_dim_feasible_interval(p, q) -> RatioInterval | None:
    """Ratios ``r_1/r_2`` that survive every two-dimensional necessary condition.

    Returns ``None`` when the interval is empty. Surviving ratios are only
    candidates; existence still has to be checked by the oracle.
    """
    pair = prepare_pair(p, q)
    qe, d = pair.q.entries, pair.d
    mL, M = pair.report.m_L, pair.report.M_L
    _, _, c = bound_parameters(p, q)
    lower = max(Fraction(1), c)
    upper = min(_ratio(qe[0], qe[mL - 1]), _ratio(qe[M], qe[d - 1]))
    if lower >= upper:
        return None
    return RatioInterval(lower, upper)
