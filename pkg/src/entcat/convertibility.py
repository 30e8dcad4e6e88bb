"""LOCC convertibility decisions for pure bipartite states.

Deterministic conversion is decided by Nielsen's majorization criterion.
For incomparable pairs the index set ``L`` of strict prefix-sum excess
decides whether a catalyst can possibly exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import RankOrderViolation
from .vectors import ProbVector, as_vector, common_scale, majorizes


class Classification(str, Enum):
    EQUAL = "equal"
    COMPARABLE_FORWARD = "comparable_forward"
    COMPARABLE_BACKWARD = "comparable_backward"
    INCOMPARABLE_SOLVABLE = "incomparable_solvable"
    INCOMPARABLE_UNSOLVABLE = "incomparable_unsolvable"


@dataclass(frozen=True)
class LSetReport:
    """Indices ``l`` (1-based) where the prefix sum of p exceeds that of q."""

    elements: tuple[int, ...]
    classification: Classification
    d: int

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def m_L(self) -> int | None:
        return self.elements[0] if self.elements else None

    @property
    def M_L(self) -> int | None:
        return self.elements[-1] if self.elements else None

    @property
    def solvable(self) -> bool:
        return self.classification is Classification.INCOMPARABLE_SOLVABLE

    def to_json(self) -> dict:
        return {
            "L": list(self.elements),
            "m_L": self.m_L,
            "M_L": self.M_L,
            "m": self.m,
            "d": self.d,
            "classification": self.classification.value,
            "solvable": self.solvable,
        }


def pad_pair(p: ProbVector, q: ProbVector) -> tuple[ProbVector, ProbVector]:
    p, q = as_vector(p), as_vector(q)
    d = max(p.dim, q.dim)
    return p.padded(d), q.padded(d)


def l_set(p: ProbVector, q: ProbVector) -> LSetReport:
    p, q = pad_pair(p, q)
    (pn, qn), _ = common_scale(p, q)
    d = len(pn)
    elements = []
    sp = sq = 0
    for l in range(1, d + 1):
        sp += pn[l - 1]
        sq += qn[l - 1]
        if sp > sq:
            elements.append(l)
    if p == q:
        cls = Classification.EQUAL
    elif not elements:
        cls = Classification.COMPARABLE_FORWARD
    elif majorizes(q, p):
        cls = Classification.COMPARABLE_BACKWARD
    elif {1, d - 1, d} & set(elements):
        cls = Classification.INCOMPARABLE_UNSOLVABLE
    else:
        cls = Classification.INCOMPARABLE_SOLVABLE
    return LSetReport(tuple(elements), cls, d)


def nielsen_convertible(p: ProbVector, q: ProbVector) -> bool:
    """Can the state with Schmidt vector p reach q by LOCC with certainty?"""
    return majorizes(p, q)


def universal_rank_reach(p: ProbVector, t: int) -> bool:
    """True iff p converts to *every* Schmidt vector of rank ``t``.

    Equivalent to ``p`` being majorized by the uniform rank-``t`` vector,
    which is the least element among rank-``t`` vectors.
    """
    p = as_vector(p)
    if t < 1 or t >= p.schmidt_rank:
        raise RankOrderViolation(
            f"need 1 <= t < rank(p) = {p.schmidt_rank}, got t = {t}", t=t, rank=p.schmidt_rank
        )
    return majorizes(p, ProbVector.uniform(t, p.dim))


def lemma1_strict(p: ProbVector, t: int) -> bool:
    """The strict largest-coefficient test ``p_1 < 1/t``.

    Sufficient for :func:`universal_rank_reach`; the boundary ``p_1 = 1/t``
    is only decided by the exact majorization test.
    """
    p = as_vector(p)
    if t < 1 or t >= p.schmidt_rank:
        raise RankOrderViolation(
            f"need 1 <= t < rank(p) = {p.schmidt_rank}, got t = {t}", t=t, rank=p.schmidt_rank
        )
    return p[0] < Fraction(1, t)


def lemma2_sufficient(p: ProbVector, t: int, s: int) -> bool:
    """Tail-sum test on the ``s`` smallest coefficients of an ``n``-vector.

    True iff ``s(t-1)/(t(n-1)) < p_{n-s+1} + ... + p_n < s/n``. When true,
    p converts to any rank-``t`` target.
    """
    p = as_vector(p)
    n = p.dim
    if not 1 < t < n:
        raise RankOrderViolation(f"need 1 < t < n = {n}, got t = {t}", t=t, n=n)
    if not 1 <= s < n:
        raise RankOrderViolation(f"need 1 <= s < n = {n}, got s = {s}", s=s, n=n)
    tail = sum(p.entries[n - s :], Fraction(0))
    return Fraction(s * (t - 1), t * (n - 1)) < tail < Fraction(s, n)
