"""Command-line entry point: ``loosepath <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import acceptance, asymptotics, constructions, decompose, hypercore, oracle
from .pathfree import find_loose_path

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for infeasible/incomplete
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _params(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        for pair in filter(None, item.split(",")):
            key, sep, val = pair.partition("=")
            if not sep:
                raise UsageError(f"bad --params entry {pair!r}; expected key=value")
            try:
                out[key.strip()] = int(val)
            except ValueError:
                raise UsageError(f"parameter {key!r} must be an integer") from None
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _read_graph(path: str | None) -> hypercore.Hypergraph:
    if path in (None, "-"):
        return hypercore.loads(sys.stdin.read())
    return hypercore.load(path)


def _budget_kwargs(args) -> dict:
    return {"max_nodes": args.max_nodes, "max_seconds": args.max_seconds}


def cmd_construct(args) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", constructions.SmallParameterWarning)
        H, spec = constructions.build(args.name, _params(args.params))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "json":
        _emit_json({**spec.to_json(), "k": H.k, "n": H.n, "m": H.m, "edges": [list(e) for e in H.edges]}, args.out)
    else:
        _emit(hypercore.dumps(H), args.out)
        if args.spec_out:
            with open(args.spec_out, "w", encoding="utf-8") as fh:
                json.dump(spec.to_json(), fh, indent=2, sort_keys=True)
                fh.write("\n")
    return EXIT_OK


def cmd_pathfree(args) -> int:
    H = _read_graph(args.input)
    w = find_loose_path(H, args.length)
    out = {"k": H.k, "length": args.length, "free": w is None, "witness": None}
    if w is not None:
        out["witness"] = {"edges": [list(e) for e in w.edges], "junctions": list(w.junctions)}
    _emit_json(out, args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    H = _read_graph(args.input)
    if args.k is not None and args.k != H.k:
        raise UsageError(f"--k {args.k} does not match the input uniformity {H.k}")
    d = decompose.decompose(H)
    report = decompose.validate(d, H)
    _emit_json({"decomposition": d.to_json(), "validation": report.to_json()}, args.out)
    return EXIT_OK


def _search_out(args, r: oracle.SearchResult) -> int:
    _emit_json(r.to_json(), args.out)
    if args.witness_out:
        hypercore.store(r.witness, args.witness_out)
    if not r.complete:
        print("search budget exhausted; value is a lower bound", file=sys.stderr)
        if args.exact:
            return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_max_edges(args) -> int:
    r = oracle.max_pfree_edges(args.k, args.l, args.n, **_budget_kwargs(args))
    return _search_out(args, r)


def cmd_min_maxdeg(args) -> int:
    r = oracle.min_max_degree(args.k, args.l, args.n, args.m, **_budget_kwargs(args))
    return _search_out(args, r)


def cmd_deletion(args) -> int:
    H = _read_graph(args.input)
    r = oracle.deletion_distance(H, args.t, args.c, **_budget_kwargs(args))
    return _search_out(args, r)


def cmd_pin(args) -> int:
    r = oracle.pin_f_value(args.k, args.l, args.n, args.m)
    _emit_json(r.to_json(), args.out)
    return EXIT_OK if r.determined or not args.exact else EXIT_INCOMPLETE


def cmd_curve(args) -> int:
    pts = asymptotics.emit_curve(args.x_min, args.x_max, args.step, args.n_ub, args.k)
    _emit(asymptotics.curve_csv(pts), args.out)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    report = acceptance.verify_all(args.budget, only)
    acceptance.validate_report(report)
    for c in report["criteria"]:
        print(f"[{c['status'].upper():>7}] criterion {c['id']:>2} {c['name']} ({c['elapsed']:.2f}s)", file=sys.stderr)
    _emit_json(report, args.out)
    return EXIT_OK if report["summary"]["all_passed"] else EXIT_INCOMPLETE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="loosepath", description="Extremal tools for hypergraphs without loose paths.")
    p.add_argument("--threads", type=_positive_int, default=1,
                   help="accepted for compatibility; all searches run single-threaded")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out_opt(sp):
        sp.add_argument("--out", help="write the result here instead of stdout")

    def budget_opts(sp):
        sp.add_argument("--max-nodes", type=_positive_int, default=None)
        sp.add_argument("--max-seconds", type=_positive_float, default=None)
        sp.add_argument("--exact", action="store_true", help="exit 2 unless the search completes")
        sp.add_argument("--witness-out", help="store the witness graph as .hg")

    sp = sub.add_parser("construct", help="build a named construction")
    sp.add_argument("name", choices=sorted(constructions.BUILDERS))
    sp.add_argument("--params", action="append", default=[], help="key=value[,key=value...]")
    sp.add_argument("--format", choices=("hg", "json"), default="hg")
    sp.add_argument("--spec", "--spec-out", dest="spec_out", help="also write the labelling as JSON (hg format only)")
    out_opt(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("pathfree", help="look for a loose path in a .hg graph")
    sp.add_argument("--input", "--in", dest="input", help=".hg file (default: stdin)")
    sp.add_argument("--length", type=_positive_int, required=True)
    sp.add_argument("--fast", action="store_true", help="no-op: pairwise and pair-count shortcuts are always used")
    out_opt(sp)
    sp.set_defaults(func=cmd_pathfree)

    sp = sub.add_parser("decompose", help="R/S/T decomposition of a path-free 3- or 4-graph")
    sp.add_argument("--input", "--in", dest="input", help=".hg file (default: stdin)")
    sp.add_argument("--k", type=int, choices=(3, 4), default=None, help="expected uniformity")
    out_opt(sp)
    sp.set_defaults(func=cmd_decompose)

    op = sub.add_parser("oracle", help="exact small-n solvers")
    osub = op.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)

    sp = osub.add_parser("max-edges")
    for name in ("k", "l", "n"):
        sp.add_argument(f"--{name}", type=_positive_int, required=True)
    budget_opts(sp)
    out_opt(sp)
    sp.set_defaults(func=cmd_max_edges)

    sp = osub.add_parser("min-maxdeg")
    for name in ("k", "l", "n"):
        sp.add_argument(f"--{name}", type=_positive_int, required=True)
    sp.add_argument("--m", type=int, required=True)
    budget_opts(sp)
    out_opt(sp)
    sp.set_defaults(func=cmd_min_maxdeg)

    sp = osub.add_parser("deletion-dist")
    sp.add_argument("--input", "--in", dest="input", help=".hg file (default: stdin)")
    sp.add_argument("--t", type=_positive_int, default=4)
    sp.add_argument("--c", type=_positive_int, required=True)
    budget_opts(sp)
    out_opt(sp)
    sp.set_defaults(func=cmd_deletion)

    sp = osub.add_parser("pin")
    for name in ("k", "l", "n"):
        sp.add_argument(f"--{name}", type=_positive_int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--exact", action="store_true", help="exit 2 unless the value is determined")
    out_opt(sp)
    sp.set_defaults(func=cmd_pin)

    sp = sub.add_parser("curve", help="CSV of the limit curve")
    sp.add_argument("--x-min", default="0")
    sp.add_argument("--x-max", default="1")
    sp.add_argument("--step", default="0.05")
    sp.add_argument("--n-ub", type=_positive_int, default=None, help="add construction ratios at this n")
    sp.add_argument("--k", type=int, choices=(3, 4), default=4)
    out_opt(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("verify-all", help="run the acceptance criteria")
    sp.add_argument("--budget", type=float, default=1800.0, help="wall-clock seconds for all criteria")
    sp.add_argument("--only", help="comma-separated criterion ids")
    out_opt(sp)
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "budget", 1) < 0:
            raise UsageError("--budget must be >= 0")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except oracle.InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except oracle.BudgetExceeded as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
