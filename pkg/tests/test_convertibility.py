import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entcat.convertibility import (
    Classification,
    l_set,
    lemma1_strict,
    lemma2_sufficient,
    nielsen_convertible,
    universal_rank_reach,
)
from entcat.errors import RankOrderViolation
from entcat.sampling import random_vector
from entcat.vectors import ProbVector, majorizes, parse_vector
from tests.oracles import brute_prefixes
from tests.test_vectors import prob_vectors


def test_l_set_example1(example1):
    rep = l_set(*example1)
    assert rep.elements == (2,)
    assert rep.m_L == rep.M_L == 2
    assert rep.classification is Classification.INCOMPARABLE_SOLVABLE


def test_l_set_equal():
    p = parse_vector("0.5,0.3,0.2")
    rep = l_set(p, p)
    assert rep.elements == ()
    assert rep.classification is Classification.EQUAL


def test_l_set_sun_pair(sun_pair):
    p, q = sun_pair
    # prefix sums: 0.414047778 < 0.428610282, 0.731692228 > 0.717804771, 0.916683408 < 0.93022585
    assert brute_prefixes(list(p))[1] > brute_prefixes(list(q))[1]
    rep = l_set(p, q)
    assert rep.elements == (2,)
    assert rep.solvable


def test_l_set_json(example1):
    assert l_set(*example1).to_json() == {
        "L": [2], "m_L": 2, "M_L": 2, "m": 1, "d": 4, "classification": "incomparable_solvable",
        "solvable": True,
    }


def test_unsolvable_classification():
    # L = {1}: p_1 > q_1
    rep = l_set(parse_vector("0.5,0.2,0.2,0.1"), parse_vector("0.4,0.4,0.15,0.05"))
    assert 1 in rep.elements
    assert rep.classification is Classification.INCOMPARABLE_UNSOLVABLE


def test_backward():
    rep = l_set(parse_vector("0.9,0.1"), parse_vector("0.5,0.5"))
    assert rep.classification is Classification.COMPARABLE_BACKWARD


@pytest.mark.parametrize("p,q,expected", [
    ("0.5,0.5", "1", True),
    ("0.4,0.35,0.15,0.1", "0.5,0.2,0.2,0.1", False),
    ("0.5,0.2,0.2,0.1", "0.4,0.35,0.15,0.1", False),
])
def test_nielsen(p, q, expected):
    assert nielsen_convertible(parse_vector(p), parse_vector(q)) is expected


@pytest.mark.parametrize("p,t,expected", [
    ("0.3,0.25,0.25,0.2", 3, True),
    ("0.4,0.3,0.3", 2, True),
    ("0.6,0.3,0.1", 2, False),
])
def test_universal_rank_reach(p, t, expected):
    assert universal_rank_reach(parse_vector(p), t) is expected


def test_lemma1_boundary_is_decided_exactly():
    # p_1 = 1/t exactly: the strict form says no, majorization says yes
    p = parse_vector("1/3,1/3,1/6,1/6")
    assert not lemma1_strict(p, 3)
    assert universal_rank_reach(p, 3)


def test_universal_rank_reach_needs_lower_rank():
    with pytest.raises(RankOrderViolation):
        universal_rank_reach(parse_vector("0.5,0.5,0"), 2)


@pytest.mark.parametrize("p,t,s,expected", [
    ("0.26,0.25,0.25,0.24", 3, 1, True),   # 2/9 < 0.24 < 1/4
    ("0.4,0.3,0.2,0.1", 3, 1, False),      # 0.1 < 2/9
])
def test_lemma2(p, t, s, expected):
    assert lemma2_sufficient(parse_vector(p), t, s) is expected


@pytest.mark.parametrize("t,s", [(4, 1), (1, 1), (3, 0), (3, 4)])
def test_lemma2_parameter_bounds(t, s):
    with pytest.raises(RankOrderViolation):
        lemma2_sufficient(parse_vector("0.26,0.25,0.25,0.24"), t, s)


@given(prob_vectors(min_dim=2), prob_vectors(min_dim=2))
def test_forward_iff_nielsen(p, q):
    rep = l_set(p, q)
    forward = rep.classification in (Classification.COMPARABLE_FORWARD, Classification.EQUAL)
    assert forward == nielsen_convertible(p, q)


@given(prob_vectors(min_dim=4), prob_vectors(min_dim=4))
def test_solvable_pairs_satisfy_edge_inequalities(p, q):
    rep = l_set(p, q)
    if not rep.solvable:
        return
    d = rep.d
    p, q = p.padded(d), q.padded(d)
    assert p[0] <= q[0]
    assert p[d - 1] >= q[d - 1]
    assert sum(p[: d - 1]) <= sum(q[: d - 1])
    assert rep.elements and not {1, d - 1, d} & set(rep.elements)


def test_lemma2_soundness_sample():
    rng = random.Random(7)
    hits = 0
    for _ in range(2000):
        n = rng.randint(4, 7)
        base = 1000
        parts = [base + rng.randint(-150, 150) for _ in range(n)]
        p = ProbVector.from_unsorted([Fraction(x, sum(parts)) for x in parts])
        t, s = rng.randint(2, n - 1), rng.randint(1, n - 1)
        if lemma2_sufficient(p, t, s):
            hits += 1
            assert lemma1_strict(p, t)
            assert universal_rank_reach(p, t)
            for _ in range(5):
                assert majorizes(p, random_vector(rng, t, 97).padded(n))
    assert hits > 100
