"""Seeded random instances for sweeps and filter comparisons.

Catalysts are located by a plain oracle sweep of a grid, never through the
filters, so the samples can be used to test the filters.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .convertibility import l_set
from .filters import filter_pra99, filter_prop1
from .search import GridSpec, _oracle_ints, _to_vector, grid_points, oracle_catalyzes
from .vectors import ProbVector, common_scale

PAIR_DENOMINATOR = 200
TRIPLE_GRIDS = {2: 60, 3: 30, 4: 16}


def random_vector(rng: random.Random, d: int, denominator: int = PAIR_DENOMINATOR) -> ProbVector:
    """Uniform random composition of ``denominator`` into ``d`` positive parts."""
    cuts = sorted(rng.sample(range(1, denominator), d - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    return ProbVector.from_unsorted([Fraction(x, denominator) for x in parts])


def random_solvable_pair(
    rng: random.Random, d: int, denominator: int = PAIR_DENOMINATOR
) -> tuple[ProbVector, ProbVector]:
    while True:
        p, q = random_vector(rng, d, denominator), random_vector(rng, d, denominator)
        if l_set(p, q).solvable:
            return p, q


def grid_catalysts(p, q, k: int, denominator: int) -> list[ProbVector]:
    (P, Q), _ = common_scale(p, q)
    return [
        _to_vector(pt, denominator)
        for pt in grid_points(GridSpec(k, denominator))
        if _oracle_ints(P, Q, pt)
    ]


def catalyzed_triples(
    rng: random.Random,
    count: int,
    dims=(4, 5, 6),
    ks=(2, 3),
    per_pair: int = 3,
    grids: dict | None = None,
):
    """``count`` oracle-confirmed triples ``(p, q, r)``.

    Dimensions and catalyst sizes cycle through ``dims`` and ``ks``; at most
    ``per_pair`` catalysts are kept from each random pair.
    """
    grids = grids or TRIPLE_GRIDS
    out = []
    step = 0
    while len(out) < count:
        d = dims[step % len(dims)]
        k = ks[(step // len(dims)) % len(ks)]
        step += 1
        p, q = random_solvable_pair(rng, d)
        found = grid_catalysts(p, q, k, grids[k])
        if len(found) > per_pair:
            found = rng.sample(found, per_pair)
        out.extend((p, q, r) for r in found)
    return out[:count]


def random_triples(rng: random.Random, count: int, dims=(4, 5, 6), ks=(2, 3)):
    """Arbitrary triples: random p, q (any relation) and a random catalyst."""
    out = []
    for i in range(count):
        d = dims[i % len(dims)]
        k = ks[(i // len(dims)) % len(ks)]
        out.append(
            (random_vector(rng, d), random_vector(rng, d), random_vector(rng, k, TRIPLE_GRIDS[k]))
        )
    return out


def compare_filters(n: int, seed: int = 0, catalyst_fraction: float = 0.5) -> dict:
    """Confusion counts of PROP1 and the earlier baseline against the oracle.

    A ``catalyst_fraction`` share of the triples are oracle-confirmed
    catalysts; the rest pair a random solvable (p, q) with a random grid r.
    """
    rng = random.Random(seed)
    n_cat = int(round(n * catalyst_fraction))
    triples = catalyzed_triples(rng, n_cat)
    for i in range(n - n_cat):
        d = (4, 5, 6)[i % 3]
        k = (2, 3)[(i // 3) % 2]
        p, q = random_solvable_pair(rng, d)
        triples.append((p, q, random_vector(rng, k, TRIPLE_GRIDS[k])))
    filters = {"PROP1": filter_prop1, "PRA99_BASELINE": filter_pra99}
    table = {
        name: {"accept_catalyst": 0, "reject_catalyst": 0, "accept_non": 0, "reject_non": 0}
        for name in filters
    }
    catalysts = 0
    for p, q, r in triples:
        truth = oracle_catalyzes(p, q, r)
        catalysts += truth
        for name, f in filters.items():
            acc = f(p, q, r).accepted
            key = ("accept_" if acc else "reject_") + ("catalyst" if truth else "non")
            table[name][key] += 1
    return {"n": len(triples), "seed": seed, "catalysts": catalysts, "filters": table}
