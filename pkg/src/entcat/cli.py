"""Command-line front end.

Every subcommand prints one JSON document (or CSV with ``--format csv``).
Exit status: 0 computed, 2 bad input, 3 precondition violated (for example
a pair that is not solvable-incomparable).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import convertibility, filters, metrics, protocol, sampling, search
from .errors import CatalysisError, InputError, ParseError
from .vectors import ProbVector, format_decimal, format_fraction, parse_vector


def _load_input(args) -> dict:
    if not getattr(args, "input", None):
        return {}
    try:
        with open(args.input) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc


def _vec(args, data: dict, name: str, required: bool = True) -> ProbVector | None:
    value = getattr(args, name, None)
    if value is not None:
        return parse_vector(value)
    if name in data:
        return ProbVector.from_json(data[name])
    if required:
        raise InputError(f"missing vector {name!r} (use -{name} or --input)")
    return None


def _int(args, data: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is None:
        value = data.get(name, default)
    if value is None:
        raise InputError(f"missing integer {name!r}")
    return int(value)


# --------------------------------------------------------------------------
# subcommands; each returns (document, csv_rows or None)


def cmd_check(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    rep = convertibility.l_set(p, q)
    return {
        "convertible": convertibility.nielsen_convertible(p, q),
        "reverse_convertible": convertibility.nielsen_convertible(q, p),
        "classification": rep.classification.value,
        "L": list(rep.elements),
    }, None


def cmd_lset(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    return convertibility.l_set(p, q).to_json(), None


def cmd_reach(args, data):
    p = _vec(args, data, "p")
    t = _int(args, data, "t")
    doc = {
        "t": t,
        "universal_rank_reach": convertibility.universal_rank_reach(p, t),
        "lemma1_strict": convertibility.lemma1_strict(p, t),
    }
    s = args.s if args.s is not None else data.get("s")
    if s is not None:
        doc["s"] = int(s)
        doc["lemma2_sufficient"] = convertibility.lemma2_sufficient(p, t, int(s))
    return doc, None


def cmd_filters(args, data):
    p, q, r = _vec(args, data, "p"), _vec(args, data, "q"), _vec(args, data, "r")
    verdicts = filters.run_battery(
        p, q, r, short_circuit=args.short_circuit, t2_cap=args.t2_cap, t2_subsets=args.t2_subsets
    )
    first = filters.first_reject(verdicts)
    cor1 = filters.filter_cor1_all(p, q, r)
    pra99 = filters.filter_pra99(p, q, r)
    doc = {
        "accepted": filters.battery_accepts(verdicts),
        "first_reject": None if first is None else first.filter_id.value,
        "battery": [v.to_json() for v in verdicts],
        "cor1_all": cor1.to_json(),
        "baseline": pra99.to_json(),
        "oracle": search.oracle_report(p, q, r).to_json(),
    }
    rows = [
        {"filter": v.filter_id.value, "accepted": v.accepted, "inconclusive": v.inconclusive}
        for v in verdicts + [cor1, pra99]
    ]
    return doc, rows


def cmd_bound(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    bp = filters.dimension_bound(p, q)
    interval = filters.two_dim_feasible_interval(p, q)
    doc = {
        **bp.to_json(),
        "two_dim_interval": None if interval is None else interval.to_json(),
    }
    rows = search.two_dim_scan(p, q, args.scan) if args.scan else None
    if args.scan:
        doc["scan"] = rows
    return doc, rows


def cmd_search(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    k = _int(args, data, "k")
    D = args.D or data.get("D") or search.default_denominator(k)
    grid = search.GridSpec(k, int(D), args.include_zeros)
    out = search.search_catalyst(
        p, q, grid, use_filters=not args.no_filters, max_results=args.max_results, workers=args.workers
    )
    rows = None
    if args.format == "csv":
        rows = list(search.candidate_rows(p, q, grid, use_filters=not args.no_filters))
    return out.to_json(), rows


def cmd_mindim(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    res = search.min_catalyst_dimension(
        p, q, args.k_max, args.D, use_filters=not args.no_filters, workers=args.workers
    )
    return res.to_json(), None


def cmd_pmax(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    r = _vec(args, data, "r", required=False)
    plain = metrics.p_max_plain(p, q)
    doc = {
        "p_max_plain": format_fraction(plain.value),
        "p_max_plain_decimal": format_decimal(plain.value),
        "argmin_l": plain.argmin_l,
    }
    if r is not None:
        cat = metrics.p_max_catalytic(p, q, r)
        doc.update(
            p_max_catalytic=format_fraction(cat.value),
            p_max_catalytic_decimal=format_decimal(cat.value),
            catalytic_argmin_l=cat.argmin_l,
        )
    return doc, None


def cmd_distance(args, data):
    p, q = _vec(args, data, "p"), _vec(args, data, "q")
    r = _vec(args, data, "r", required=False) or ProbVector((1,))
    dist = metrics.majorization_distance(p, q, r)
    return {
        "delta": format_fraction(dist.value),
        "delta_decimal": format_decimal(dist.value),
        "argmax_l": dist.argmax_l,
    }, None


def cmd_prop2(args, data):
    p, q, r = _vec(args, data, "p"), _vec(args, data, "q"), _vec(args, data, "r")
    rep = metrics.metric_report(p, q, r)
    return {
        **rep.to_json(),
        "oracle": search.oracle_catalyzes(p, q, r),
        "consistent": metrics.prop2_check(p, q, r),
    }, None


def cmd_protocol(args, data):
    if not data:
        raise InputError("protocol needs an ensemble via --input")
    e = protocol.EnsembleSpec.from_json(data)
    rep = protocol.protocol_feasible(e)
    doc = rep.to_json()
    if rep.feasible:
        doc["trace"] = protocol.protocol_trace(e)
    return doc, None


def cmd_compare(args, data):
    doc = sampling.compare_filters(args.n, seed=args.seed, catalyst_fraction=args.catalyst_fraction)
    rows = [{"filter": name, **counts} for name, counts in doc["filters"].items()]
    return doc, rows


COMMANDS = {
    "check": cmd_check,
    "lset": cmd_lset,
    "reach": cmd_reach,
    "filters": cmd_filters,
    "bound": cmd_bound,
    "search": cmd_search,
    "mindim": cmd_mindim,
    "pmax": cmd_pmax,
    "distance": cmd_distance,
    "prop2": cmd_prop2,
    "protocol": cmd_protocol,
    "compare-filters": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, vectors="pq"):
        sp = sub.add_parser(name, help=help_)
        for v in vectors:
            sp.add_argument(f"-{v}", help=f"Schmidt vector {v}, e.g. 0.4,0.35 or 2/5,7/20 (sorted on input)")
        sp.add_argument("--input", help="JSON file with the inputs")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        return sp

    add("check", "Nielsen convertibility and classification")
    add("lset", "index set L and solvability")
    sp = add("reach", "conversion to every rank-t target", vectors="p")
    sp.add_argument("-t", type=int)
    sp.add_argument("-s", type=int)
    sp = add("filters", "necessary-condition battery on a candidate catalyst", vectors="pqr")
    sp.add_argument("--t2-cap", type=int, default=filters.DEFAULT_T2_CAP)
    sp.add_argument("--t2-subsets", action="store_true")
    sp.add_argument("--short-circuit", action="store_true")
    sp = add("bound", "catalyst dimension lower bound")
    sp.add_argument("--scan", type=int, metavar="D", help="also scan the 2-dim grid 1/D")
    for name, help_ in (("search", "grid search for catalysts"), ("mindim", "minimal catalyst dimension")):
        sp = add(name, help_)
        sp.add_argument("-D", type=int, help="grid denominator")
        sp.add_argument("--no-filters", action="store_true")
        sp.add_argument("--workers", type=int, default=1)
        if name == "search":
            sp.add_argument("-k", type=int)
            sp.add_argument("--max-results", type=int, default=1_000_000)
            sp.add_argument("--include-zeros", action="store_true")
        else:
            sp.add_argument("--k-max", type=int, default=4)
    add("pmax", "maximal conversion probability", vectors="pqr")
    add("distance", "majorization distance", vectors="pqr")
    add("prop2", "P_max = 1 iff delta = 0 iff catalysis", vectors="pqr")
    add("protocol", "mixed-state ensemble protocol check", vectors="")
    sp = add("compare-filters", "PROP1 versus the earlier baseline on random triples", vectors="")
    sp.add_argument("-n", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--catalyst-fraction", type=float, default=0.5)
    return parser


def _emit(doc, rows, fmt, out) -> None:
    if fmt == "csv" and rows:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        json.dump(doc, out, indent=2)
        out.write("\n")


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        data = _load_input(args)
        doc, rows = COMMANDS[args.command](args, data)
    except CatalysisError as exc:
        json.dump(exc.to_dict(), out, indent=2)
        out.write("\n")
        return exc.exit_code
    except (ValueError, KeyError, TypeError) as exc:
        json.dump({"error": "input_error", "message": str(exc)}, out, indent=2)
        out.write("\n")
        return 2
    _emit(doc, rows, args.format, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
