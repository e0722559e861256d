"""Command-line front end.

Exit codes: 0 success or passing check, 1 a mathematical check failed
(a witness is printed), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath

from . import corpus
from .decomposition import check_admissible, enumerate_admissible, parse_decomposition
from .graph import (
    GraphError,
    all_saturated_hereditary,
    format_graph,
    hereditary_saturated_closure,
    is_hereditary,
    is_saturated,
    parse_graph,
    quotient_graph,
    to_dot,
    validate_graph,
)
from .leavitt import LiteralError, format_element, normal_form, parse_element, resolve_special_edges
from .morphisms import quotient_hom
from .pullback import DEFAULT_MAX_LEN, DEFAULT_SAMPLES, DEFAULT_SEED, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _read(path: str) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args):
    if args.corpus:
        return corpus.get(args.corpus).graph
    if not args.graph:
        raise UsageError("give --graph FILE or --corpus KEY")
    g = parse_graph(_read(args.graph))
    problems = validate_graph(g)
    if problems:
        raise UsageError(f"{args.graph}: invalid graph: " + "; ".join(problems))
    return g


def _load_decomposition(args):
    if args.corpus:
        return corpus.get(args.corpus).decomposition
    if not args.graph:
        raise UsageError("give --graph FILE or --corpus KEY")
    return parse_decomposition(_read(args.graph))


def _vertex_set(g, text: str | None) -> frozenset:
    ids = frozenset(x for x in (text or "").split(",") if x)
    unknown = sorted(ids - g.vertices)
    if unknown:
        raise UsageError(f"unknown vertices {unknown}")
    return ids


def cmd_check(args, out) -> int:
    d = _load_decomposition(args)
    report = check_admissible(d)
    if args.json:
        print(_emit(report.to_dict()), file=out)
    else:
        for name, cond in report._named():
            status = "holds" if cond.holds else f"FAILS (witness {cond.witness})"
            print(f"{name}: {status}", file=out)
        print("admissible" if report.admissible else "not admissible", file=out)
    return EXIT_OK if report.admissible else EXIT_FAIL


def cmd_enumerate(args, out) -> int:
    g = _load_graph(args)
    found = enumerate_admissible(g)
    if args.json:
        print(_emit([d.to_dict() for d in found]), file=out)
    else:
        for i, d in enumerate(found, start=1):
            f1, f2 = d.f1, d.f2
            print(f"{i}: F1 V={{{','.join(sorted(f1.vertices))}}} E={{{','.join(sorted(f1.edges))}}}"
                  f" | F2 V={{{','.join(sorted(f2.vertices))}}} E={{{','.join(sorted(f2.edges))}}}",
                  file=out)
        print(f"{len(found)} admissible decomposition(s)", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    d = _load_decomposition(args)
    report = verify_theorem(d, args.max_len, args.seed, args.samples)
    if args.json:
        print(_emit(report.to_dict(timing=args.timing)), file=out)
    else:
        print(f"admissible: {report.admissible}"
              + ("" if report.admissible else f" ({report.admissibility.summary()})"), file=out)
        if report.admissible:
            for flag in report.FLAGS:
                print(f"{flag}: {getattr(report, flag)}", file=out)
            print(f"mapped_kernel_equality: {report.mapped_kernel_equality}", file=out)
        for key, witness in sorted(report.witnesses.items()):
            print(f"witness {key}: {witness}", file=out)
        print(f"length bound {report.length_bound}, seed {report.seed}: "
              + ("PASS" if report.passed else "FAIL"), file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_quotient(args, out) -> int:
    g = _load_graph(args)
    h = _vertex_set(g, args.set)
    if not is_hereditary(g, h):
        raise UsageError(f"{sorted(h)} is not hereditary")
    q = quotient_graph(g, h)
    saturated = is_saturated(g, h)
    if args.json:
        data = {"graph": format_graph(q), "saturated": saturated}
        if saturated:
            data["hom"] = quotient_hom(g, h).to_json()
        print(_emit(data), file=out)
    else:
        print(format_graph(q), end="", file=out)
        if not saturated:
            print("# note: the set is not saturated; no quotient map of algebras", file=out)
    return EXIT_OK


def cmd_closures(args, out) -> int:
    g = _load_graph(args)
    if args.set is not None:
        sets = [hereditary_saturated_closure(g, _vertex_set(g, args.set))]
    else:
        sets = all_saturated_hereditary(g)
    if args.json:
        print(_emit([sorted(h) for h in sets]), file=out)
    else:
        for h in sets:
            print("{" + ",".join(sorted(h)) + "}", file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    g = _load_graph(args)
    special = None
    if args.special_edges:
        try:
            special = json.loads(_read(args.special_edges))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.special_edges}: {exc}") from None
        special = resolve_special_edges(g, special)
    x = parse_element(g, args.expr)
    nf = normal_form(x, special)
    if args.json:
        print(_emit({"input": args.expr, "normal_form": format_element(nf),
                     "zero": not nf.terms}), file=out)
    else:
        print(format_element(nf), file=out)
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    if args.action == "list":
        for key in corpus.default_keys():
            ex = corpus.get(key)
            print(f"{key}\t{ex.description}", file=out)
        return EXIT_OK
    if not args.key:
        raise UsageError("corpus show needs a key")
    ex = corpus.get(args.key)
    if args.dot:
        print(to_dot(ex.graph), end="", file=out)
    else:
        print(ex.decomposition.to_text(), end="", file=out)
    return EXIT_OK


def cmd_export_dot(args, out) -> int:
    print(to_dot(_load_graph(args)), end="", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphpullback", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--graph", help="graph or decomposition file")
        group.add_argument("--corpus", help="corpus key (see `corpus list`)")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("check", help="check admissibility of a decomposition")
    source(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list all admissible decompositions")
    source(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="verify the pullback square at bounded length")
    source(p)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--timing", action="store_true", help="include timings in JSON output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quotient", help="quotient graph by a hereditary vertex set")
    source(p)
    p.add_argument("--set", default="", help="comma-separated vertex ids")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("closures", help="saturated hereditary sets, or the closure of --set")
    source(p)
    p.add_argument("--set", default=None, help="comma-separated vertex ids")
    p.set_defaults(func=cmd_closures)

    p = sub.add_parser("eval", help="normal form of an algebra expression")
    source(p)
    p.add_argument("expr")
    p.add_argument("--special-edges", help="JSON file mapping vertex -> special edge")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("corpus", help="built-in example graphs")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("key", nargs="?")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("export-dot", help="write a graph in DOT format")
    source(p)
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "max_len", 0) < 0:
        print("error: --max-len must be nonnegative", file=err)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (UsageError, GraphError, LiteralError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=err)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
