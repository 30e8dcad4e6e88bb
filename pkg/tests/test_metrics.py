import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from entcat.convertibility import nielsen_convertible
from entcat.metrics import (
    majorization_distance,
    metric_report,
    p_max_catalytic,
    p_max_plain,
    prop2_check,
)
from entcat.sampling import random_triples, random_vector
from entcat.search import oracle_catalyzes
from entcat.vectors import ProbVector, parse_vector as v
from tests.oracles import brute_prefixes, brute_tensor


def test_example1_golden(example1):
    r = v("0.7,0.3")
    plain = p_max_plain(*example1)
    assert plain.value == Fraction(5, 6) and plain.argmin_l == 3
    cat = p_max_catalytic(*example1, r)
    assert cat.value == Fraction(5, 6) and cat.argmin_l == 7
    dist = majorization_distance(*example1, r)
    assert dist.value == Fraction(1, 20) and dist.argmax_l == 2


def test_jp_catalysis_metrics(jp_pair):
    rep = metric_report(*jp_pair, v("0.6,0.4"))
    assert rep.p_max == 1 and rep.delta == 0
    # without a catalyst the conversion is probabilistic
    assert p_max_plain(*jp_pair).value < 1


def test_report_json(example1):
    doc = metric_report(*example1, v("0.7,0.3")).to_json()
    assert doc["p_max"] == "5/6" and doc["delta"] == "1/20"
    assert doc["delta_decimal"] == "0.05"


def test_default_report_is_plain(example1):
    assert metric_report(*example1).p_max == p_max_plain(*example1).value


def _brute_delta(p, q, r):
    a = brute_prefixes(brute_tensor(p, r))
    b = brute_prefixes(brute_tensor(q, r))
    return 2 * max(x - y for x, y in zip(a, b))


def _brute_pmax(p, q, r):
    a = [1 - s for s in [Fraction(0)] + brute_prefixes(brute_tensor(p, r))[:-1]]
    b = [1 - s for s in [Fraction(0)] + brute_prefixes(brute_tensor(q, r))[:-1]]
    return min(min(x / y for x, y in zip(a, b) if y), Fraction(1))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_metrics_match_brute_force(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 5)
    p, q = random_vector(rng, d, 30), random_vector(rng, d, 30)
    r = random_vector(rng, rng.randint(2, 3), 12)
    assert majorization_distance(p, q, r).value == _brute_delta(list(p), list(q), list(r))
    assert p_max_catalytic(p, q, r).value == _brute_pmax(list(p), list(q), list(r))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_metric_ranges_and_prop2(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 5)
    p, q = random_vector(rng, d, 30), random_vector(rng, d, 30)
    r = random_vector(rng, rng.randint(2, 3), 12)
    rep = metric_report(p, q, r)
    assert 0 <= rep.p_max <= 1
    assert 0 <= rep.delta <= 2
    assert prop2_check(p, q, r)


def test_distance_zero_iff_convertible():
    rng = random.Random(4)
    for _ in range(300):
        p, q = random_vector(rng, 4, 20), random_vector(rng, 4, 20)
        one = ProbVector((1,))
        assert (majorization_distance(p, q, one).value == 0) == nielsen_convertible(p, q)
        assert (p_max_plain(p, q).value == 1) == nielsen_convertible(p, q)


def test_self_conversion():
    p = v("0.5,0.3,0.2")
    assert p_max_plain(p, p).value == 1
    assert majorization_distance(p, p, v("0.6,0.4")).value == 0


def test_prop2_on_mixed_triples():
    rng = random.Random(8)
    triples = random_triples(rng, 400)
    verdicts = [oracle_catalyzes(*t) for t in triples]
    assert any(verdicts) and not all(verdicts)
    assert all(prop2_check(*t) for t in triples)
