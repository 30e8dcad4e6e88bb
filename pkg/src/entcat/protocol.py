"""Catalytic conversion of a mixed state given as an ensemble of pure branches.

Each branch ``psi_i`` (weight ``w_i``) is converted to the common target
with the shared catalyst; an ancilla labelled by the branch index selects
the right conversion. The checker works at Schmidt-vector level: it
certifies every branch conversion with the exact oracle and records the
resulting state. No operators are simulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ProtocolInfeasible, WeightSumNotOne
from .search import oracle_catalyzes
from .vectors import ProbVector, as_vector, format_fraction, parse_rational


@dataclass(frozen=True)
class EnsembleSpec:
    branches: tuple[tuple[Fraction, ProbVector], ...]
    target: ProbVector
    catalyst: ProbVector

    def __post_init__(self):
        branches = tuple((parse_rational(w), as_vector(v)) for w, v in self.branches)
        object.__setattr__(self, "branches", branches)
        object.__setattr__(self, "target", as_vector(self.target))
        object.__setattr__(self, "catalyst", as_vector(self.catalyst))
        if not branches:
            raise WeightSumNotOne("ensemble needs at least one branch")
        for i, (w, _) in enumerate(branches, start=1):
            if w <= 0:
                raise WeightSumNotOne(f"branch {i} has nonpositive weight {w}", branch=i)
        total = sum((w for w, _ in branches), Fraction(0))
        if total != 1:
            raise WeightSumNotOne(f"weights sum to {total}", total=total)
        d = self.target.dim
        for i, (_, v) in enumerate(branches, start=1):
            if v.dim != d:
                raise DimensionMismatch(
                    f"branch {i} has dimension {v.dim}, target has {d}", branch=i
                )

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.branches)

    @classmethod
    def from_json(cls, data: dict) -> "EnsembleSpec":
        return cls(
            tuple((b["weight"], ProbVector.from_json(b["schmidt"])) for b in data["branches"]),
            ProbVector.from_json(data["target"]),
            ProbVector.from_json(data["catalyst"]),
        )

    def to_json(self) -> dict:
        return {
            "branches": [
                {"weight": format_fraction(w), "schmidt": v.to_json()} for w, v in self.branches
            ],
            "target": self.target.to_json(),
            "catalyst": self.catalyst.to_json(),
        }


@dataclass(frozen=True)
class ProtocolReport:
    branch_ok: tuple[bool, ...]
    feasible: bool
    final_state: dict | None

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "branches": [{"branch": i, "converts": ok} for i, ok in enumerate(self.branch_ok, 1)],
            "final_state": self.final_state,
        }


def _final_state(e: EnsembleSpec) -> dict:
    return {
        "system": e.target.to_json(),
        "catalyst": e.catalyst.to_json(),
        "ancilla_distribution": [format_fraction(w) for w in e.weights],
    }


def protocol_feasible(e: EnsembleSpec) -> ProtocolReport:
    ok = tuple(oracle_catalyzes(v, e.target, e.catalyst) for _, v in e.branches)
    feasible = all(ok)
    return ProtocolReport(ok, feasible, _final_state(e) if feasible else None)


def protocol_trace(e: EnsembleSpec) -> dict:
    """Step-by-step record of the protocol for a feasible ensemble."""
    report = protocol_feasible(e)
    if not report.feasible:
        failing = [i for i, ok in enumerate(report.branch_ok, 1) if not ok]
        raise ProtocolInfeasible(f"branches {failing} cannot be converted", branches=failing)
    m = len(e.branches)
    return {
        "ancilla_dim": m,
        "steps": [
            {
                "step": "prepare",
                "state": [
                    {"ancilla": i, "weight": format_fraction(w), "schmidt": v.to_json()}
                    for i, (w, v) in enumerate(e.branches, 1)
                ],
                "catalyst": e.catalyst.to_json(),
            },
            {
                "step": "convert",
                "events": [
                    {
                        "ancilla": i,
                        "from": v.to_json(),
                        "to": e.target.to_json(),
                        "catalyst": e.catalyst.to_json(),
                    }
                    for i, (_, v) in enumerate(e.branches, 1)
                ],
            },
            {"step": "result", **_final_state(e)},
            {"step": "trace_out", "output": e.target.to_json()},
        ],
    }
