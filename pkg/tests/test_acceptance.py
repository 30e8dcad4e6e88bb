"""Acceptance suite: one PASS/FAIL line per criterion in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from entcat.cli import run
from entcat.convertibility import lemma2_sufficient, nielsen_convertible, universal_rank_reach
from entcat.filters import (
    FilterId,
    adjacent_ratios,
    dimension_bound,
    filter_cor1_all,
    filter_cor3,
    filter_prop1,
    filter_rem2,
    filter_t1,
    filter_t2,
    ratio_below_a_sqrt_b,
    run_battery,
)
from entcat.metrics import majorization_distance, p_max_catalytic, p_max_plain, prop2_check
from entcat.sampling import catalyzed_triples, random_triples, random_vector
from entcat.search import GridSpec, oracle_catalyzes, oracle_report, search_catalyst
from entcat.vectors import ProbVector, parse_vector as v
from tests.conftest import ACCEPTANCE_LINES

SWEEP_SIZE = 10_000
SWEEP_SEED = 2024


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  [{number}] {title} ({time.perf_counter() - start:.2f}s)")
        raise
    ACCEPTANCE_LINES.append(f"PASS  [{number}] {title} ({time.perf_counter() - start:.2f}s)")


@pytest.fixture(scope="module")
def sweep():
    start = time.perf_counter()
    triples = catalyzed_triples(random.Random(SWEEP_SEED), SWEEP_SIZE)
    return triples, time.perf_counter() - start


def test_criterion_1_example1(example1):
    with criterion(1, "Example 1 ratios, COR3 rejection and oracle violation"):
        start = time.perf_counter()
        p, q = example1
        r = v("0.7,0.3")
        qr, rr = adjacent_ratios(q), adjacent_ratios(r)
        assert qr[0] == Fraction(5, 2) and rr[0] == Fraction(7, 3) and qr[2] == 2
        assert qr[0] > rr[0] > qr[2]
        assert not filter_cor3(p, q, r).accepted
        rep = oracle_report(p, q, r)
        assert not rep.catalyzes
        assert rep.first_violation == 2 and rep.gap == Fraction(1, 40)
        code, text = _cli("filters", "-p", "0.4,0.35,0.15,0.1", "-q", "0.5,0.2,0.2,0.1", "-r", "0.7,0.3")
        assert code == 0 and '"first_reject": "COR3_DUAL"' in text
        assert time.perf_counter() - start < 1


def test_criterion_2_sun_no_two_dim_catalyst(sun_pair):
    with criterion(2, "Sun instance: no k=2 catalyst at D=2000, exhausted"):
        start = time.perf_counter()
        out = search_catalyst(*sun_pair, GridSpec(2, 2000))
        elapsed = time.perf_counter() - start
        assert out.found == () and out.exhausted
        assert out.candidates == 1000
        assert elapsed < 60


def test_criterion_3_jp_success(jp_pair):
    with criterion(3, "JP pair: (0.6,0.4) found at D=10 and accepted by every filter"):
        start = time.perf_counter()
        out = search_catalyst(*jp_pair, GridSpec(2, 10))
        r = v("0.6,0.4")
        assert r in out.found and out.exhausted
        assert oracle_catalyzes(*jp_pair, r)
        verdicts = run_battery(*jp_pair, r, t2_subsets=False)
        verdicts += run_battery(*jp_pair, r, t2_subsets=True)[-1:]
        verdicts.append(filter_cor1_all(*jp_pair, r))
        assert all(x.accepted and not x.inconclusive for x in verdicts)
        assert time.perf_counter() - start < 1


def test_criterion_4_filter_soundness(sweep):
    with criterion(4, f"filter soundness over {SWEEP_SIZE} oracle-confirmed triples"):
        triples, gen_time = sweep
        start = time.perf_counter()
        assert len(triples) >= SWEEP_SIZE
        dims = {p.dim for p, _, _ in triples}
        ks = {r.dim for _, _, r in triples}
        assert dims == {4, 5, 6} and ks == {2, 3}
        fns = (filter_t1, filter_t2, filter_cor1_all, filter_prop1, filter_cor3, filter_rem2)
        rejections = {}
        for p, q, r in triples:
            assert oracle_catalyzes(p, q, r)
            for f in fns:
                verdict = f(p, q, r)
                assert not verdict.inconclusive
                if not verdict.accepted:
                    rejections.setdefault(verdict.filter_id, []).append((p, q, r))
        assert rejections == {}
        assert gen_time + time.perf_counter() - start < 600


def test_criterion_5_dimension_bound(sweep):
    with criterion(5, "dim >= k_lower and r_s/r_(s+1) < a*sqrt(b) over the sweep"):
        triples, _ = sweep
        violations = []
        for p, q, r in triples:
            bp = dimension_bound(p, q)
            if bp.k_lower is None or r.dim < bp.k_lower:
                violations.append(("k_lower", p, q, r))
            for ratio in adjacent_ratios(r):
                if not ratio_below_a_sqrt_b(ratio, bp.a, bp.b):
                    violations.append(("ratio", p, q, r))
        assert violations == []


def test_criterion_6_prop2(sweep):
    with criterion(6, "P_max = 1 <=> delta = 0 <=> oracle, catalysts and random triples"):
        triples, _ = sweep
        mixed = random_triples(random.Random(SWEEP_SEED + 1), SWEEP_SIZE)
        verdicts = [oracle_catalyzes(*t) for t in mixed]
        assert any(verdicts) and not all(verdicts)
        bad = [t for t in list(triples) + mixed if not prop2_check(*t)]
        assert bad == []


def test_criterion_7_lemma_soundness():
    with criterion(7, "tail-sum test implies reach to 100 random rank-t targets, 1000 vectors"):
        rng = random.Random(SWEEP_SEED + 2)
        accepted = 0
        attempts = 0
        while accepted < 1000:
            attempts += 1
            n = rng.randint(3, 8)
            p = random_vector(rng, n, 1000)
            t = rng.randint(2, n - 1)
            s = rng.randint(1, n - 1)
            if not lemma2_sufficient(p, t, s):
                continue
            accepted += 1
            assert universal_rank_reach(p, t)
            for _ in range(100):
                target = random_vector(rng, t, 1000)
                assert nielsen_convertible(p, target)
        assert attempts < 10**6


def test_criterion_8_metrics(example1):
    with criterion(8, "metrics golden values 5/6, 5/6, 1/20"):
        r = v("0.7,0.3")
        assert p_max_plain(*example1).value == Fraction(5, 6)
        assert p_max_catalytic(*example1, r).value == Fraction(5, 6)
        assert majorization_distance(*example1, r).value == Fraction(1, 20)


def _cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_criterion_9_determinism(sun_pair):
    with criterion(9, "search JSON byte-identical for workers 1, 4, 8"):
        p, q = (",".join(str(x) for x in vec.to_json()) for vec in sun_pair)
        outputs = set()
        for workers in (1, 4, 8):
            code, text = _cli("search", "-p", p, "-q", q, "-k", "3", "-D", "200", "--workers", str(workers))
            assert code == 0
            outputs.add(text.encode())
        assert len(outputs) == 1
        # a grid with hits, spread across several chunks
        jp = ("-p", "0.4,0.4,0.1,0.1", "-q", "0.5,0.25,0.25,0", "-k", "3", "-D", "150")
        texts = {_cli("search", *jp, "--workers", str(w))[1].encode() for w in (1, 4, 8)}
        assert len(texts) == 1
        assert '"exhausted": true' in texts.pop().decode()
