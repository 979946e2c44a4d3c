"""Command-line front end: compute CSFs, decompose the trinacria, run certificates.

Exit codes: 0 success, 1 a verification failed (the report is still printed),
2 usage, input-format or oracle-budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from .certify import CERTIFIERS
from .certify.y0 import MUTANTS as Y0_MUTANTS
from .certify.y1 import MUTANTS as Y1_MUTANTS
from .certify.y2 import MUTANTS as Y2_MUTANTS
from .esym import ESym, format_coeff, format_rational, is_e_positive, project
from .graphs import (
    EdgeListFormatError,
    Graph,
    OracleBudgetError,
    csf_oracle,
    csf_path,
    csf_spider_abc,
    csf_trinacria,
    cycle_graph,
    read_edge_list,
    spider_graph,
    trinacria_graph,
)
from .trinacria import decompose, target_csf

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

MUTANTS = {"y0": Y0_MUTANTS, "y1": Y1_MUTANTS, "y2": Y2_MUTANTS}


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _witness_json(witness):
    if witness is None:
        return None
    lam, coeff = witness
    return {"partition": list(lam), "coeff": format_rational(coeff)}


def _positivity_line(g: ESym) -> str:
    ok, witness = is_e_positive(g)
    if ok:
        return "e-positive: true"
    lam, coeff = witness
    return f"e-positive: false, witness e[{','.join(map(str, lam))}] coefficient {format_coeff(coeff)}"


def _expansion_output(fmt: str, label: str, g: ESym, extra: dict | None = None) -> str:
    ok, witness = is_e_positive(g)
    if fmt == "json":
        obj = {"object": label, **(extra or {}), "expansion": g.to_json_obj(),
               "e_positive": ok, "witness": _witness_json(witness)}
        return json.dumps(obj, indent=2)
    return f"{g.format_table()}\n{_positivity_line(g)}"


def _graph_csf(graph: Graph, method: str, formula: Callable[[], ESym] | None) -> ESym:
    if method == "formula":
        return formula()
    return csf_oracle(graph)


def cmd_path(args) -> tuple[str, int]:
    return _expansion_output(args.format, f"P_{args.n}", project(csf_path(args.n)), {"method": "formula"}), EXIT_OK


def cmd_cycle(args) -> tuple[str, int]:
    g = csf_oracle(cycle_graph(args.n))
    return _expansion_output(args.format, f"C_{args.n}", g, {"method": "oracle"}), EXIT_OK


def cmd_spider(args) -> tuple[str, int]:
    legs = (args.a, args.b, args.c)
    if min(legs) < 1:
        raise UsageError("spider legs must be positive")
    g = _graph_csf(spider_graph(legs), args.method, lambda: csf_spider_abc(*legs))
    return _expansion_output(args.format, f"S({args.a},{args.b},{args.c})", g, {"method": args.method}), EXIT_OK


def cmd_trinacria(args) -> tuple[str, int]:
    legs = (args.a, args.b, args.c)
    if args.method == "formula" and min(legs) < 1:
        raise UsageError("the formula needs every leg >= 1; use --method oracle")
    g = _graph_csf(trinacria_graph(*legs), args.method, lambda: csf_trinacria(*legs))
    return _expansion_output(args.format, f"T({args.a},{args.b},{args.c})", g, {"method": args.method}), EXIT_OK


def cmd_graph(args) -> tuple[str, int]:
    graph = read_edge_list(args.file)
    g = csf_oracle(graph)
    extra = {"method": "oracle", "vertices": graph.vertex_count, "edges": len(graph.edges)}
    return _expansion_output(args.format, str(args.file), g, extra), EXIT_OK


def cmd_decompose(args) -> tuple[str, int]:
    dec = decompose(args.b)
    pieces = {"Y2": project(dec.Y2), "Y1": project(dec.Y1), "Y0": project(dec.Y0)}
    matches = dec.assemble() == target_csf(args.b)
    code = EXIT_OK if matches else EXIT_FAILED
    if args.format == "json":
        obj = {"b": args.b, "reconstruction_matches": matches}
        for name, g in pieces.items():
            ok, witness = is_e_positive(g)
            obj[name] = {"expansion": g.to_json_obj(), "e_positive": ok, "witness": _witness_json(witness)}
        return json.dumps(obj, indent=2), code
    lines = [f"b = {args.b}"]
    for name, g in pieces.items():
        lines += [f"{name} = {g.format_table()}", f"  {_positivity_line(g)}"]
    lines.append(f"Y2 e1^2 + Y1 e1 + Y0 equals the trinacria formula: {'yes' if matches else 'NO'}")
    return "\n".join(lines), code


def cmd_certify(args) -> tuple[str, int]:
    if args.mutant is not None and args.mutant not in MUTANTS[args.target]:
        raise UsageError(f"unknown mutant {args.mutant!r} for {args.target}; choose from {sorted(MUTANTS[args.target])}")
    report = CERTIFIERS[args.target](args.b, mutant=args.mutant)
    text = report.to_json() if args.format == "json" else report.format_table()
    return text, EXIT_OK if report.verified else EXIT_FAILED


def cmd_verify_theorem(args) -> tuple[str, int]:
    if args.b_min > args.b_max:
        raise UsageError("--b-min must not exceed --b-max")
    rows = []
    for b in range(args.b_min, args.b_max + 1):
        row = {"b": b}
        for name in ("y2", "y1", "y0"):
            row[name] = CERTIFIERS[name](b).verified
        target = target_csf(b)
        row["reconstruction"] = decompose(b).assemble() == target
        row["e_positive"] = is_e_positive(target)[0]
        row["verified"] = all(row[k] for k in ("y2", "y1", "y0", "reconstruction", "e_positive"))
        rows.append(row)
    code = EXIT_OK if all(r["verified"] for r in rows) else EXIT_FAILED
    if args.format == "json":
        return json.dumps({"rows": rows, "verified": code == EXIT_OK}, indent=2), code
    cols = ("y2", "y1", "y0", "reconstruction", "e_positive", "verified")
    lines = ["b    " + "  ".join(f"{c:<14}" for c in cols)]
    for r in rows:
        lines.append(f"{r['b']:<4} " + "  ".join(f"{('ok' if r[c] else 'FAIL'):<14}" for c in cols))
    return "\n".join(lines), code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")

    parser = argparse.ArgumentParser(prog="csfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("path", parents=[common], help="X of the path on N vertices")
    p.add_argument("n", type=_natural, metavar="N")
    p.set_defaults(run=cmd_path)

    p = sub.add_parser("cycle", parents=[common], help="X of the cycle on N vertices (oracle)")
    p.add_argument("n", type=_natural, metavar="N")
    p.set_defaults(run=cmd_cycle)

    for name, run, default in (("spider", cmd_spider, "formula"), ("trinacria", cmd_trinacria, "formula")):
        p = sub.add_parser(name, parents=[common], help=f"X of the {name} with legs A B C")
        for leg in ("a", "b", "c"):
            p.add_argument(leg, type=_natural, metavar=leg.upper())
        p.add_argument("--method", choices=("formula", "oracle"), default=default)
        p.set_defaults(run=run)

    p = sub.add_parser("graph", parents=[common], help="X of a graph read from an edge-list file")
    p.add_argument("--file", required=True)
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("decompose", parents=[common], help="Y2, Y1, Y0 for the trinacria T(b+2, b, 2)")
    p.add_argument("--b", type=_positive, required=True)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("certify", parents=[common], help="run one positivity certificate")
    p.add_argument("target", choices=sorted(CERTIFIERS))
    p.add_argument("--b", type=_positive, required=True)
    p.add_argument("--mutant", help="deliberately break the input (negative control)")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("verify-theorem", parents=[common], help="all certificates plus reconstruction per b")
    p.add_argument("--b-min", type=_positive, required=True)
    p.add_argument("--b-max", type=_positive, required=True)
    p.set_defaults(run=cmd_verify_theorem)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, code = args.run(args)
    except (UsageError, EdgeListFormatError, OracleBudgetError, ValueError, OSError) as exc:
        print(f"csfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
