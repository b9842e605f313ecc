"""Command-line front end.

Subcommands: validate, cycle, quiver, rules, group, knit, sweep.  Inputs are
JSON files ("-" reads stdin); all output is deterministic (sorted keys, fixed
orderings).  Exit codes: 0 success, 1 input/validation failure, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import dualgraph, groups, knitting, rules
from .dualgraph import DualGraph, GraphInputError, InvalidGraphError
from .groups import GroupParamError
from .knitting import KnitInputError, NonTerminationError, TranslationQuiverError
from .quiver import build_quiver, emit_dot, global_dimension, projective_dimensions
from .rules import RuleApplicationError, UnsupportedShapeError

USAGE_ERROR = 2
FAILURE = 1

_INPUT_ERRORS = (
    GraphInputError,
    InvalidGraphError,
    GroupParamError,
    TranslationQuiverError,
    KnitInputError,
    UnsupportedShapeError,
    RuleApplicationError,
    ArithmeticError,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _dump(data) -> None:
    print(json.dumps(data, sort_keys=True, indent=2))


def _load_graph(path: str) -> DualGraph:
    return DualGraph.from_json(_read(path))


def cmd_validate(args) -> int:
    report = dualgraph.validate_graph(_load_graph(args.input))
    _dump(report.to_jsonable())
    return 0 if report.ok else FAILURE


def cmd_cycle(args) -> int:
    g = _load_graph(args.input)
    zf = dualgraph.fundamental_cycle(g)
    zk = dualgraph.canonical_cycle(g)
    data = {
        "zf": dualgraph.cycle_to_jsonable(zf),
        "zk": dualgraph.cycle_to_jsonable(zk),
        "e": dualgraph.embedding_dimension(g),
        "rationality_identity": dualgraph.rationality_identity_check(g),
    }
    if args.format == "text":
        print("Zf:", " ".join(f"{v}={data['zf'][v]}" for v in g.vertices))
        print("Zk:", " ".join(f"{v}={data['zk'][v]}" for v in g.vertices))
        print(f"e={data['e']} rationality_identity={data['rationality_identity']}")
    else:
        _dump(data)
    return 0


def cmd_quiver(args) -> int:
    g = _load_graph(args.input)
    q = build_quiver(g)
    if args.format == "dot":
        print(emit_dot(q), end="")
    else:
        data = q.to_jsonable()
        data["global_dimension"] = global_dimension(g)
        data["projective_dimensions"] = projective_dimensions(g)
        _dump(data)
    return 0


def cmd_rules(args) -> int:
    g = _load_graph(args.input)
    q, trace = rules.apply_rules_traced(g)
    agrees = q.same_arrows(build_quiver(g))
    if args.format == "dot":
        print(emit_dot(q), end="")
        return 0
    data = {"quiver": q.to_jsonable(), "agrees": agrees, "zf_class": rules.classify_zf(g).kind}
    if args.trace:
        data["trace"] = trace
    _dump(data)
    return 0


def _knit_payload(tq, specials, start, max_steps, with_trace):
    totals = knitting.knit_counts(tq, specials, start, max_steps)
    payload = {
        "start": start,
        "totals": {v: t for v, (t, _) in sorted(totals.items()) if t},
        "steps": max(len(h) for _, h in totals.values()),
    }
    if with_trace:
        payload["grid"] = knitting.grid_trace(tq, specials, start, max_steps).render().splitlines()
    return payload


def cmd_group(args) -> int:
    gid = groups.parse_group(args.spec)
    if args.b is not None:
        k, _ = groups.RESIDUES.get(gid.family, (None, None))
        if k is None:
            raise GroupParamError("--b only applies to families T, O and I")
        gid = groups.group_for_b(gid.family, gid.params[0] % k, args.b)
    g = groups.dual_graph(gid)
    q = build_quiver(g)
    if args.cross_check:
        ok = knitting.cross_check(gid, args.max_steps)
        print("PASS" if ok else "FAIL")
        return 0 if ok else FAILURE
    if args.format == "dot":
        print(emit_dot(q), end="")
        return 0
    data = {"group": str(gid), "graph": g.to_jsonable(), "quiver": q.to_jsonable()}
    if args.knit:
        tq, specials = knitting.build_I_ar_quiver(gid.params[0])
        if specials is None:
            raise GroupParamError(f"{gid}: no documented special positions to knit from")
        data["knit"] = {
            name: _knit_payload(tq, specials.values(), vertex, args.max_steps, args.trace)
            for name, vertex in sorted(specials.items())
        }
    _dump(data)
    return 0


def cmd_knit(args) -> int:
    tq = knitting.TranslationQuiver.from_json(_read(args.input))
    specials = [s for s in args.specials.split(",") if s]
    payload = _knit_payload(tq, specials, args.start, args.max_steps, args.trace)
    if args.format == "text":
        print("\n".join(payload.get("grid", [])))
        print("totals:", " ".join(f"{v}={t}" for v, t in payload["totals"].items()))
    else:
        _dump(payload)
    return 0


def _sweep_cases(max_r, max_n, b_min, b_max):
    for r in range(3, max_r + 1):
        for a in range(2, r):
            if math.gcd(r, a) == 1:
                yield groups.A(r, a)
    for n in range(3, max_n + 1):
        for q in range(2, n):
            if math.gcd(n, q) == 1:
                yield groups.D(n, q)
    for family in ("T", "O", "I"):
        _, residues = groups.RESIDUES[family]
        for residue in residues:
            for b in range(b_min, b_max + 1):
                yield groups.group_for_b(family, residue, b)


def cmd_sweep(args) -> int:
    failures = 0
    count = 0
    for gid in _sweep_cases(args.max_r, args.max_n, args.b_min, args.b_max):
        g = groups.dual_graph(gid)
        ok = (
            dualgraph.validate_graph(g).ok
            and build_quiver(g).same_arrows(groups.expected_quiver(gid))
            and rules.verify_against_geometric(g)
        )
        count += 1
        if not ok:
            failures += 1
        if not ok or args.verbose:
            print(f"{'PASS' if ok else 'FAIL'} {gid}")
    print(f"{count - failures}/{count} catalog cases agree")
    return 0 if failures == 0 else FAILURE


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reconalg",
        description="Reconstruction-algebra quivers of rational surface singularities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "check a dual-graph JSON file")
    p.add_argument("input")

    p = add("cycle", cmd_cycle, "fundamental and canonical cycles, embedding dimension")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = add("quiver", cmd_quiver, "quiver of the reconstruction algebra")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = add("rules", cmd_rules, "quiver from the diagram rules, with agreement flag")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--trace", action="store_true")

    p = add("group", cmd_group, "dual graph and quiver of a quotient singularity")
    p.add_argument("spec", help="A:r,a D:n,q T:m O:m or I:m")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--b", type=int, default=None, help="family parameter override")
    p.add_argument("--knit", action="store_true", help="add knitting totals")
    p.add_argument("--cross-check", action="store_true", help="print PASS/FAIL")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--trace", action="store_true")

    p = add("knit", cmd_knit, "run the counting recursion on a translation quiver")
    p.add_argument("input")
    p.add_argument("--start", required=True)
    p.add_argument("--specials", required=True, help="comma-separated vertex ids")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = add("sweep", cmd_sweep, "cross-validate the whole catalog")
    p.add_argument("--max-r", type=int, default=60)
    p.add_argument("--max-n", type=int, default=60)
    p.add_argument("--b-min", type=int, default=3)
    p.add_argument("--b-max", type=int, default=6)
    p.add_argument("--verbose", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NonTerminationError as exc:
        print(f"error: knitting did not terminate: {exc}", file=sys.stderr)
        return FAILURE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
