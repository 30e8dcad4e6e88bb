"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` and an ``exit_code``
used by the command-line front end (2 = bad input, 3 = precondition).
"""

from __future__ import annotations


class CatalysisError(Exception):
    code = "error"
    exit_code = 2

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class InputError(CatalysisError):
    code = "input_error"
    exit_code = 2


class PreconditionError(CatalysisError):
    code = "precondition_violation"
    exit_code = 3


class ParseError(InputError):
    code = "parse_error"


class NegativeEntry(InputError):
    code = "negative_entry"


class SumNotOne(InputError):
    code = "sum_not_one"


class NotSorted(InputError):
    code = "not_sorted"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class WeightSumNotOne(InputError):
    code = "weight_sum_not_one"


class InvalidGrid(InputError):
    code = "invalid_grid"


class IndexOutOfRange(InputError):
    code = "index_out_of_range"


class DegenerateCatalyst(PreconditionError):
    code = "degenerate_catalyst"


class UnsolvablePair(PreconditionError):
    code = "unsolvable_pair"


class RankOrderViolation(PreconditionError):
    code = "rank_order_violation"


class ProtocolInfeasible(PreconditionError):
    code = "protocol_infeasible"
