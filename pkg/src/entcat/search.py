"""Exact catalyst oracle and exhaustive grid search.

The grid at resolution ``1/D`` is every nonincreasing vector whose entries
are positive multiples of ``1/D`` summing to one. Sweeping it is exact, so
an empty result is a certificate that no catalyst exists *on the grid*.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .convertibility import pad_pair
from .errors import InvalidGrid
from .filters import (
    battery_accepts,
    dimension_bound,
    first_reject,
    filter_pra99,
    prepare_pair,
    run_battery,
    two_dim_feasible_interval,
)
from .vectors import ProbVector, as_vector, common_scale, format_fraction, prefix_dominated

CHUNK_SIZE = 1024
DEFAULT_DENOMINATORS = {2: 200, 3: 60, 4: 30}
FALLBACK_DENOMINATOR = 20


def default_denominator(k: int) -> int:
    env = os.environ.get(f"ENTCAT_GRID_D_K{k}")
    if env:
        return int(env)
    return DEFAULT_DENOMINATORS.get(k, FALLBACK_DENOMINATOR)


# --------------------------------------------------------------------------
# oracle


def _sorted_products(x, y) -> list[int]:
    out = [a * b for a in x for b in y]
    out.sort(reverse=True)
    return out


def oracle_catalyzes(p, q, r) -> bool:
    """Exact test of ``p (x) r`` majorized by ``q (x) r``."""
    p, q = pad_pair(p, q)
    r = as_vector(r)
    (P, Q), _ = common_scale(p, q)
    R = r.numerators
    return prefix_dominated(_sorted_products(P, R), _sorted_products(Q, R))


@dataclass(frozen=True)
class OracleReport:
    catalyzes: bool
    first_violation: int | None
    gap: Fraction

    def to_json(self) -> dict:
        return {
            "catalyzes": self.catalyzes,
            "first_violation": self.first_violation,
            "gap": format_fraction(self.gap),
        }


def oracle_report(p, q, r) -> OracleReport:
    """Oracle verdict plus the first prefix length where ``p (x) r`` exceeds ``q (x) r``."""
    p, q = pad_pair(p, q)
    r = as_vector(r)
    (P, Q), den = common_scale(p, q)
    R = r.numerators
    scale = den * r.denominator
    sp = sq = 0
    for l, (a, b) in enumerate(zip(_sorted_products(P, R), _sorted_products(Q, R)), start=1):
        sp += a
        sq += b
        if sp > sq:
            return OracleReport(False, l, Fraction(sp - sq, scale))
    return OracleReport(True, None, Fraction(0))


def _oracle_ints(P, Q, R) -> bool:
    return prefix_dominated(_sorted_products(P, R), _sorted_products(Q, R))


# --------------------------------------------------------------------------
# grid


@dataclass(frozen=True)
class GridSpec:
    k: int
    denominator: int
    include_boundary_zeros: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise InvalidGrid(f"catalyst dimension must be >= 1, got {self.k}", k=self.k)
        if self.denominator < 1:
            raise InvalidGrid(f"denominator must be >= 1, got {self.denominator}")
        if not self.include_boundary_zeros and self.denominator < self.k:
            raise InvalidGrid(
                f"denominator {self.denominator} < k = {self.k}: grid is empty",
                k=self.k,
                denominator=self.denominator,
            )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "denominator": self.denominator,
            "include_boundary_zeros": self.include_boundary_zeros,
        }


def _partitions(total: int, parts: int, cap: int, lo: int) -> Iterator[tuple[int, ...]]:
    # nonincreasing, each in [lo, cap], lexicographically ascending
    if parts == 1:
        if lo <= total <= cap:
            yield (total,)
        return
    first_min = -(-total // parts)
    first_max = min(cap, total - lo * (parts - 1))
    for a in range(first_min, first_max + 1):
        for rest in _partitions(total - a, parts - 1, a, lo):
            yield (a,) + rest


def grid_points(grid: GridSpec) -> Iterator[tuple[int, ...]]:
    """Integer numerators of every grid vector, lexicographically ascending."""
    lo = 0 if grid.include_boundary_zeros else 1
    yield from _partitions(grid.denominator, grid.k, grid.denominator, lo)


def grid_size(grid: GridSpec) -> int:
    return sum(1 for _ in grid_points(grid))


def _to_vector(point: tuple[int, ...], D: int) -> ProbVector:
    return ProbVector(tuple(Fraction(x, D) for x in point))


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchOutcome:
    found: tuple[ProbVector, ...]
    pruned_count: int
    oracle_count: int
    exhausted: bool
    grid: GridSpec
    candidates: int = 0
    use_filters: bool = True

    def to_json(self) -> dict:
        return {
            "found": [v.to_json() for v in self.found],
            "found_decimal": [[f"{float(x):.12g}" for x in v] for v in self.found],
            "exhausted": self.exhausted,
            "candidates": self.candidates,
            "pruned_count": self.pruned_count,
            "oracle_count": self.oracle_count,
            "use_filters": self.use_filters,
            "grid": self.grid.to_json(),
        }


@dataclass
class _ChunkResult:
    found: list = field(default_factory=list)
    pruned: int = 0
    oracle: int = 0
    seen: int = 0
    complete: bool = True


def _passes_battery(p, q, point, D) -> bool:
    support = tuple(x for x in point if x)
    if len(support) < 2:
        return True  # nothing to filter; the oracle decides
    r = ProbVector(tuple(Fraction(x, D) for x in support))
    return battery_accepts(run_battery(p, q, r, short_circuit=True))


def _search_chunk(args) -> _ChunkResult:
    p, q, points, D, use_filters, max_results = args
    (P, Q), _ = common_scale(p, q)
    res = _ChunkResult()
    for point in points:
        res.seen += 1
        if use_filters and not _passes_battery(p, q, point, D):
            res.pruned += 1
            continue
        res.oracle += 1
        if _oracle_ints(P, Q, point):
            res.found.append(point)
            if len(res.found) >= max_results:
                res.complete = res.seen == len(points)
                break
    return res


def search_catalyst(
    p,
    q,
    grid: GridSpec,
    use_filters: bool = True,
    max_results: int = 1_000_000,
    workers: int = 1,
) -> SearchOutcome:
    """Sweep the grid for catalysts of the pair ``(p, q)``.

    With ``use_filters`` the necessary-condition battery runs first and the
    oracle is only called on survivors; since every filter is sound the
    found set is the same either way. The grid is cut into fixed-size chunks
    consumed in order, so the outcome does not depend on ``workers``.
    """
    p, q = pad_pair(p, q)
    prepare_pair(p, q)  # raises UnsolvablePair
    if max_results < 1:
        raise InvalidGrid("max_results must be >= 1")
    points = list(grid_points(grid))
    chunks = [points[i : i + CHUNK_SIZE] for i in range(0, len(points), CHUNK_SIZE)]
    jobs = ((p, q, c, grid.denominator, use_filters, max_results) for c in chunks)

    found: list[tuple[int, ...]] = []
    pruned = oracle = 0
    exhausted = True

    def consume(results):
        nonlocal pruned, oracle, exhausted
        for idx, res in enumerate(results):
            pruned += res.pruned
            oracle += res.oracle
            found.extend(res.found)
            if len(found) > max_results:
                del found[max_results:]
                exhausted = False
                return
            if not res.complete or (len(found) == max_results and idx < len(chunks) - 1):
                exhausted = False
                return

    if workers <= 1 or len(chunks) <= 1:
        consume(map(_search_chunk, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            consume(pool.map(_search_chunk, jobs))
            pool.shutdown(wait=True, cancel_futures=True)

    return SearchOutcome(
        found=tuple(_to_vector(x, grid.denominator) for x in found),
        pruned_count=pruned,
        oracle_count=oracle,
        exhausted=exhausted,
        grid=grid,
        candidates=len(points),
        use_filters=use_filters,
    )


@dataclass(frozen=True)
class MinDimension:
    dimension: int | None
    k_lower: int | None
    catalyst: ProbVector | None
    outcomes: tuple[SearchOutcome, ...]

    caveat = "grid exhaustion certifies absence on the grid only, not in the continuum"

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "k_lower": self.k_lower,
            "catalyst": None if self.catalyst is None else self.catalyst.to_json(),
            "searched": [o.to_json() for o in self.outcomes],
            "caveat": self.caveat,
        }


def min_catalyst_dimension(
    p,
    q,
    k_max: int,
    grid_denominator: int | None = None,
    use_filters: bool = True,
    workers: int = 1,
) -> MinDimension:
    """Smallest grid-searchable catalyst dimension in ``[max(2, k_lower), k_max]``.

    ``grid_denominator=None`` picks the per-``k`` default. The first ``k``
    with a grid catalyst wins and its lexicographically smallest catalyst is
    reported.
    """
    if k_max < 2:
        raise InvalidGrid(f"k_max must be >= 2, got {k_max}")
    bound = dimension_bound(p, q)
    if bound.k_lower is None:
        return MinDimension(None, None, None, ())
    outcomes = []
    for k in range(max(2, bound.k_lower), k_max + 1):
        D = grid_denominator or default_denominator(k)
        if D < k:
            continue
        out = search_catalyst(p, q, GridSpec(k, D), use_filters, max_results=1, workers=workers)
        outcomes.append(out)
        if out.found:
            return MinDimension(k, bound.k_lower, out.found[0], tuple(outcomes))
    return MinDimension(None, bound.k_lower, None, tuple(outcomes))


def two_dim_scan(p, q, denominator: int) -> list[dict]:
    """One row per two-dimensional grid catalyst: ratio, interval membership, verdicts."""
    p, q = pad_pair(p, q)
    interval = two_dim_feasible_interval(p, q)
    rows = []
    for point in grid_points(GridSpec(2, denominator)):
        r = _to_vector(point, denominator)
        ratio = Fraction(point[0], point[1])
        verdicts = run_battery(p, q, r)
        row = {
            "r1": format_fraction(r[0]),
            "r2": format_fraction(r[1]),
            "ratio": format_fraction(ratio),
            "ratio_decimal": f"{float(ratio):.12g}",
            "in_interval": interval is not None and ratio in interval,
        }
        for v in verdicts:
            row[v.filter_id.value.split("_")[0]] = v.accepted
        row["PRA99"] = filter_pra99(p, q, r).accepted
        row["oracle"] = oracle_catalyzes(p, q, r)
        rows.append(row)
    return rows


def candidate_rows(p, q, grid: GridSpec, use_filters: bool = True) -> Iterator[dict]:
    """One row per grid candidate: the vector, the first rejecting filter, the oracle verdict.

    The oracle runs on every candidate here, including pruned ones, so the
    rows can be used to inspect filter tightness.
    """
    p, q = pad_pair(p, q)
    prepare_pair(p, q)
    (P, Q), _ = common_scale(p, q)
    D = grid.denominator
    for point in grid_points(grid):
        rejected = ""
        support = tuple(x for x in point if x)
        if use_filters and len(support) >= 2:
            r = ProbVector(tuple(Fraction(x, D) for x in support))
            first = first_reject(run_battery(p, q, r, short_circuit=True))
            rejected = "" if first is None else first.filter_id.value
        yield {
            "r": " ".join(format_fraction(Fraction(x, D)) for x in point),
            "rejected_by": rejected,
            "oracle": _oracle_ints(P, Q, point),
        }
