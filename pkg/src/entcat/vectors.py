"""Exact Schmidt probability vectors and the majorization order.

All values are :class:`fractions.Fraction`. Decimal strings are parsed
exactly (``"0.35"`` is ``7/20``), so boundary cases of the majorization
test are decided without any tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import NegativeEntry, NotSorted, ParseError, SumNotOne

DEFAULT_MAX_DENOMINATOR = 10**9


def parse_rational(value) -> Fraction:
    """Convert ``value`` to an exact fraction.

    Strings may be decimals (``"0.35"``, ``"1e-3"``) or ``"num/den"``.
    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParseError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {value!r} as a rational") from exc
    raise ParseError(f"unsupported value type {type(value).__name__}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x: Fraction, digits: int = 12) -> str:
    return f"{float(x):.{digits}g}"


def _lcm_all(dens: Iterable[int]) -> int:
    out = 1
    for d in dens:
        out = out * d // math.gcd(out, d)
    return out


@dataclass(frozen=True)
class ProbVector:
    """A Schmidt vector: nonnegative exact entries, nonincreasing, summing to 1.

    Trailing zeros are kept; use :attr:`schmidt_rank` for the count of
    nonzero entries. Indexing is 0-based like any sequence.
    """

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(parse_rational(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ParseError("a probability vector needs at least one entry")
        for i, v in enumerate(entries):
            if v < 0:
                raise NegativeEntry(f"entry {i + 1} is negative: {v}", index=i + 1, value=v)
        for i in range(len(entries) - 1):
            if entries[i] < entries[i + 1]:
                raise NotSorted(
                    f"entries must be nonincreasing (entry {i + 1} < entry {i + 2})",
                    index=i + 1,
                )
        total = sum(entries, Fraction(0))
        if total != 1:
            raise SumNotOne(
                f"entries sum to {total}, deficit {1 - total}", total=total, deficit=1 - total
            )

    @classmethod
    def from_unsorted(cls, values: Iterable) -> "ProbVector":
        vals = [parse_rational(v) for v in values]
        for i, v in enumerate(vals):
            if v < 0:
                raise NegativeEntry(f"entry {i + 1} is negative: {v}", index=i + 1, value=v)
        return cls(tuple(sorted(vals, reverse=True)))

    @classmethod
    def uniform(cls, d: int, dim: int | None = None) -> "ProbVector":
        """``(1/d, ..., 1/d)`` padded with zeros up to ``dim``."""
        if d < 1:
            raise ParseError("uniform vector needs d >= 1")
        dim = d if dim is None else dim
        if dim < d:
            raise ParseError("padding dimension smaller than support")
        return cls(tuple([Fraction(1, d)] * d + [Fraction(0)] * (dim - d)))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def schmidt_rank(self) -> int:
        return sum(1 for v in self.entries if v != 0)

    @cached_property
    def denominator(self) -> int:
        """Least common denominator of the entries."""
        return _lcm_all(v.denominator for v in self.entries)

    @cached_property
    def numerators(self) -> tuple[int, ...]:
        """Integer entries scaled by :attr:`denominator`."""
        den = self.denominator
        return tuple(v.numerator * (den // v.denominator) for v in self.entries)

    def padded(self, dim: int) -> "ProbVector":
        if dim < self.dim:
            raise ValueError(f"cannot pad a {self.dim}-vector down to {dim}")
        if dim == self.dim:
            return self
        return ProbVector(self.entries + (Fraction(0),) * (dim - self.dim))

    def to_json(self) -> list[str]:
        return [format_fraction(v) for v in self.entries]

    @classmethod
    def from_json(cls, data: Sequence) -> "ProbVector":
        return cls.from_unsorted(data)

    def __str__(self) -> str:
        return "(" + ", ".join(format_decimal(v) for v in self.entries) + ")"


@dataclass(frozen=True)
class CumulativeProfile:
    prefix_sums: tuple[Fraction, ...]

    def __len__(self):
        return len(self.prefix_sums)

    def __getitem__(self, i):
        return self.prefix_sums[i]


def as_vector(x) -> ProbVector:
    """Accept a ProbVector or any iterable of rationals (sorted on the way in)."""
    if isinstance(x, ProbVector):
        return x
    if isinstance(x, str):
        return parse_vector(x)
    return ProbVector.from_unsorted(x)


def parse_vector(text: str) -> ProbVector:
    """Parse ``"0.4,0.35,0.15,0.1"`` or ``"2/5 7/20 ..."`` into a vector."""
    parts = [t for t in text.replace(",", " ").split() if t]
    if not parts:
        raise ParseError(f"empty vector: {text!r}")
    return ProbVector.from_unsorted(parts)


def from_floats(
    values: Iterable[float], max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> tuple[ProbVector, Fraction]:
    """Quantize floats to rationals and renormalize.

    Each value is rounded to the nearest fraction with denominator at most
    ``max_denominator``; the largest entry then absorbs whatever is needed
    to make the sum exactly one. Returns the vector and that adjustment.
    """
    vals = []
    for i, v in enumerate(values):
        if not math.isfinite(v):
            raise ParseError(f"entry {i + 1} is not finite: {v!r}")
        if v < 0:
            raise NegativeEntry(f"entry {i + 1} is negative: {v}", index=i + 1, value=v)
        vals.append(Fraction(v).limit_denominator(max_denominator))
    if not vals:
        raise ParseError("empty vector")
    vals.sort(reverse=True)
    adjustment = 1 - sum(vals, Fraction(0))
    vals[0] += adjustment
    if vals[0] < 0 or (len(vals) > 1 and vals[0] < vals[1]):
        raise SumNotOne(
            f"float input too far from normalized (adjustment {adjustment})",
            deficit=adjustment,
        )
    return ProbVector(tuple(vals)), adjustment


def tensor(x: ProbVector, y: ProbVector) -> ProbVector:
    """Sorted tensor (Kronecker) product of two probability vectors."""
    x, y = as_vector(x), as_vector(y)
    prods = sorted((a * b for a in x.entries for b in y.entries), reverse=True)
    return ProbVector(tuple(prods))


def cumulative(x: ProbVector) -> CumulativeProfile:
    x = as_vector(x)
    return CumulativeProfile(tuple(accumulate(x.entries)))


def common_scale(*vectors: ProbVector) -> tuple[list[list[int]], int]:
    """Express several vectors as integer lists over one common denominator."""
    den = _lcm_all(v.denominator for v in vectors)
    return [[n * (den // v.denominator) for n in v.numerators] for v in vectors], den


def prefix_dominated(weaker: Sequence[int], stronger: Sequence[int]) -> bool:
    """True iff every prefix sum of ``weaker`` is <= that of ``stronger``.

    Both inputs must already be sorted nonincreasing and share one scale.
    """
    sw = ss = 0
    for a, b in zip(weaker, stronger):
        sw += a
        ss += b
        if sw > ss:
            return False
    return True


def majorizes(weaker: ProbVector, stronger: ProbVector) -> bool:
    """Return True iff ``weaker`` is majorized by ``stronger``.

    Shorter vectors are padded with zeros first; the comparison is exact.
    """
    weaker, stronger = as_vector(weaker), as_vector(stronger)
    (w, s), _ = common_scale(weaker, stronger)
    n = max(len(w), len(s))
    w += [0] * (n - len(w))
    s += [0] * (n - len(s))
    return prefix_dominated(w, s)
