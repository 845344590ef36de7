"""Command-line entry point: ``cfgbmm {reduce,multiply,verify,parse,bench}``.

Exit codes: 0 success, 1 usage, 2 input format, 3 verification failure.
"""
from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from .bmatrix import DimensionError, MatrixFormatError, format_matrix, naive_bmm, read_matrix
from .grammar import GrammarError, format_grammar, grammar_size, is_cnf, parse_grammar
from .parsing import (
    QueryError,
    TokenError,
    chart_parse_general,
    cky_parse,
    consistency_filter,
    format_input_string,
    oracle_query,
    parse_input_string,
)
from .reduction import as_exponent, build_grammar, build_grammar_cnf, plan, run_reduction

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _exponent(text: str):
    try:
        return as_exponent(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid --ell {text!r}: {exc}") from None


def _load_pair(args):
    try:
        a, b = read_matrix(args.a), read_matrix(args.b)
    except (OSError, MatrixFormatError) as exc:
        raise InputError(str(exc)) from None
    if a.m != b.m:
        raise InputError(f"dimension mismatch: {a.m}x{a.m} vs {b.m}x{b.m}")
    return a, b


def _variant_and_parser(args):
    variant = "cnf" if args.cnf else "general"
    parser = args.parser
    if parser == "cky" and variant != "cnf":
        raise UsageError("--parser cky requires --cnf")
    return variant, parser


def cmd_reduce(args) -> int:
    ell = _exponent(args.ell)
    a, b = _load_pair(args)
    p = plan(a.m, ell)
    art = (build_grammar_cnf if args.cnf else build_grammar)(a, b, p)
    with open(args.grammar, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_grammar(art.grammar))
    with open(args.string, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_input_string(art.string))
    print(f"m={p.m} ell={p.ell} d={p.d} delta={p.delta} string_length={p.string_length}")
    print(f"variant={art.variant} productions={len(art.grammar.productions)} "
          f"nonterminals={len(art.grammar.nonterminals)} size={grammar_size(art.grammar)}")
    print(f"W-rules={p.w_rules} A-rules={a.nnz()} B-rules={b.nnz()} "
          f"C-rules={p.c_rules} S-rules={p.s_rules}")
    return EXIT_OK


def _multiply(args, check: bool, out: str | None) -> int:
    ell = _exponent(args.ell)
    variant, parser = _variant_and_parser(args)
    a, b = _load_pair(args)
    run = run_reduction(a, b, variant, parser, filtered=args.filtered, ell=ell)
    if out == "-":
        sys.stdout.write(format_matrix(run.product))
    elif out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_matrix(run.product))
    print(f"build_ns={run.build_ns} parse_ns={run.parse_ns} extract_ns={run.extract_ns}",
          file=sys.stderr)
    if check:
        if run.product != naive_bmm(a, b):
            print("check: FAILED (product differs from naive multiplication)", file=sys.stderr)
            return EXIT_VERIFY
        print("check: ok", file=sys.stderr)
    return EXIT_OK


def cmd_multiply(args) -> int:
    return _multiply(args, args.check, args.output)


def cmd_verify(args) -> int:
    return _multiply(args, True, None)


def _parse_query(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"query {text!r} is not NAME,i,j")
    return parts[0], int(parts[1]), int(parts[2])


def cmd_parse(args) -> int:
    try:
        with open(args.grammar, encoding="utf-8") as fh:
            g = parse_grammar(fh.read())
        with open(args.string, encoding="utf-8") as fh:
            w = parse_input_string(fh.read())
    except (OSError, GrammarError, ValueError) as exc:
        raise InputError(str(exc)) from None
    parser = args.parser or ("cky" if is_cnf(g) else "general")
    try:
        chart = (cky_parse if parser == "cky" else chart_parse_general)(g, w)
    except (GrammarError, TokenError) as exc:
        raise InputError(str(exc)) from None
    if args.filtered:
        chart = consistency_filter(chart, g, w)
    if args.dump_chart:
        sys.stdout.write(chart.dump())
    status = EXIT_OK
    for q in args.query or ():
        try:
            a, i, j = _parse_query(q)
            print("yes" if oracle_query(chart, a, i, j) else "no")
        except (ValueError, QueryError) as exc:
            print(f"error: {q}: {exc}")
            status = EXIT_INPUT
    return status


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    if not sizes or min(sizes) < 1 or args.reps < 1:
        raise UsageError("--sizes must be positive integers and --reps >= 1")
    if not 0.0 <= args.density <= 1.0:
        raise UsageError(f"--density must lie in [0, 1], got {args.density}")
    ell = _exponent(args.ell)
    try:
        records = bench_mod.run_bench(sizes, args.reps, args.density, args.seed, ell=ell)
    except bench_mod.VerificationError as exc:
        print(f"bench: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = bench_mod.format_csv(records)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print("\n".join(bench_mod.summary_lines(records)))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_pair_args(sp, with_parser=True):
    sp.add_argument("a", help="matrix file for the left operand")
    sp.add_argument("b", help="matrix file for the right operand")
    sp.add_argument("--cnf", action="store_true", help="use the Chomsky normal form grammar")
    sp.add_argument("--ell", default="1/3", help="block exponent, e.g. 1/3 (default)")
    if with_parser:
        sp.add_argument("--parser", choices=("cky", "general"), default=None)
        sp.add_argument("--filtered", action="store_true",
                        help="apply the consistency filter before extraction")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cfgbmm", description="Boolean matrix multiplication via CFG parsing")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("reduce", help="write the grammar and string for A x B")
    _add_pair_args(sp, with_parser=False)
    sp.add_argument("--grammar", default="reduction.grammar", help="output grammar file")
    sp.add_argument("--string", default="reduction.string", help="output string file")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("multiply", help="multiply two matrices by parsing")
    _add_pair_args(sp)
    sp.add_argument("--check", action="store_true", help="compare against naive multiplication")
    sp.add_argument("-o", "--output", default="-", help="product file (default stdout)")
    sp.set_defaults(func=cmd_multiply)

    sp = sub.add_parser("verify", help="multiply with --check, no output")
    _add_pair_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("parse", help="parse a string and answer oracle queries")
    sp.add_argument("grammar")
    sp.add_argument("string")
    sp.add_argument("--query", action="append", metavar="N,i,j")
    sp.add_argument("--dump-chart", action="store_true")
    sp.add_argument("--filtered", action="store_true")
    sp.add_argument("--parser", choices=("cky", "general"), default=None)
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("bench", help="time the pipeline over matrix sizes")
    sp.add_argument("--sizes", default="8,27,64")
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ell", default="1/3")
    sp.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cfgbmm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, DimensionError) as exc:
        print(f"cfgbmm: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
