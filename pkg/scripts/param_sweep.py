"""Tabulate plan parameters and predicted parse cost as the block exponent varies.

For each m and ell: block base d, string length, C-rule count, grammar size
on all-ones operands (only when it is cheap to build), and the predicted cost
of an O(g n^(3-eps)) parser.  The smallest predicted cost per m is starred.
"""
import argparse
from fractions import Fraction

from cfgbmm.bmatrix import BooleanMatrix
from cfgbmm.grammar import grammar_size
from cfgbmm.reduction import build_grammar, plan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="64,512,4096")
    ap.add_argument("--ells", default="1/6,1/4,1/3,1/2,2/3")
    ap.add_argument("--eps", type=float, default=1.0)
    ap.add_argument("--build-limit", type=int, default=64,
                    help="build real grammars only for m up to this")
    args = ap.parse_args()
    ells = [Fraction(e) for e in args.ells.split(",")]
    print(f"{'m':>6} {'ell':>5} {'d':>5} {'|w|':>5} {'C-rules':>12} {'|G|':>10} {'cost':>12}")
    for m in (int(s) for s in args.sizes.split(",")):
        plans = [plan(m, ell) for ell in ells]
        costs = [p.predicted_parse_cost(args.eps) for p in plans]
        best = min(costs)
        for p, cost in zip(plans, costs):
            size = "-"
            if m <= args.build_limit:
                ones = BooleanMatrix.ones(m)
                size = str(grammar_size(build_grammar(ones, ones, p).grammar))
            star = "*" if cost == best else " "
            print(f"{m:>6} {str(p.ell):>5} {p.d:>5} {p.string_length:>5} {p.c_rules:>12} "
                  f"{size:>10} {cost:>12.3e}{star}")


if __name__ == "__main__":
    main()
