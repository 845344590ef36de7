"""Encode a Boolean matrix product as a parsing problem, and read it back.

Given m x m matrices A and B, pick a block base d = ceil(m^ell) and offset
delta = d + 2.  Each index i splits into a high part i // d and a low part
(i mod d) + 2.  The string w = w1 .. w(3d+6) is fixed; all matrix content
sits in the grammar:

    W        -> w_l W | w_l                          every position l
    A_hi_hk  -> w_{i2} W w_{k2+delta}                each a_ik = 1
    B_hk_hj  -> w_{k2+1+delta} W w_{j2+2*delta}      each b_kj = 1
    C_p_q    -> A_p_r B_r_q                          all high parts p, q, r
    S        -> W C_p_q W                            all high parts p, q

c_ij = 1 exactly when C_{i1,j1} derives w_{i2} .. w_{j2+2*delta}, so m^2
oracle queries against any chart recover the product.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .bmatrix import BooleanMatrix, DimensionError
from .grammar import Grammar, N, Production, T, grammar_size
from .parsing import (
    Chart,
    InputString,
    chart_parse_general,
    cky_parse,
    consistency_filter,
    oracle_query,
    recognizes,
)

Variant = Literal["general", "cnf"]
ParserName = Literal["cky", "general"]

DEFAULT_ELL = Fraction(1, 3)


class ArtifactError(RuntimeError):
    """Reduction artifacts are inconsistent with the chart being read."""


def as_exponent(ell) -> Fraction:
    """Coerce an exponent given as Fraction, int, float or "p/q" string."""
    if isinstance(ell, Fraction):
        value = ell
    elif isinstance(ell, str):
        value = Fraction(ell.strip())
    else:
        value = Fraction(ell).limit_denominator(10**6)
    if not 0 < value <= 1:
        raise ValueError(f"ell must lie in (0, 1], got {ell}")
    return value


def ceil_power(m: int, ell: Fraction) -> int:
    """Smallest integer d >= 1 with d >= m**ell, in exact integer arithmetic."""
    p, q = ell.numerator, ell.denominator
    target = m**p
    lo, hi = 1, max(1, m)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**q >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class EncodedIndex:
    hi: int
    lo: int


@dataclass(frozen=True)
class ReductionPlan:
    m: int
    ell: Fraction
    d: int
    delta: int
    string_length: int
    hi_max: int

    @property
    def high_range(self) -> range:
        return range(0, self.hi_max + 1)

    @property
    def low_range(self) -> range:
        return range(2, self.d + 2)

    # closed-form rule counts for the general grammar
    @property
    def w_rules(self) -> int:
        return 2 * self.string_length

    @property
    def c_rules(self) -> int:
        return (self.hi_max + 1) ** 3

    @property
    def s_rules(self) -> int:
        return (self.hi_max + 1) ** 2

    def predicted_size_class(self) -> float:
        """m^2 + (m^(1-ell))^3, the growth of the grammar size in m."""
        return self.m**2 + (self.m ** (1 - float(self.ell))) ** 3

    def predicted_parse_cost(self, eps: float = 1.0) -> float:
        """Cost of an O(g n^(3-eps)) parser on the worst-case grammar."""
        g = self.m**2 + self.c_rules
        return g * float(self.string_length) ** (3 - eps)


def plan(m: int, ell=DEFAULT_ELL) -> ReductionPlan:
    """Parameters of the reduction for m x m matrices.

    High parts range over 0 .. d^(ceil(1/ell) - 1), which is 0 .. d^2 for the
    default ell = 1/3 and always covers floor(m / d).
    """
    if m < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {m}")
    ell = as_exponent(ell)
    d = ceil_power(m, ell)
    k = math.ceil(1 / ell)
    assert m <= d**k
    return ReductionPlan(
        m=m, ell=ell, d=d, delta=d + 2, string_length=3 * d + 6, hi_max=d ** (k - 1)
    )


def cost_exponents(ell: float, eps: float) -> tuple[float, float]:
    """Exponents of m in the two parse-cost terms (A/B-rules, C-rules)."""
    return 2 + (3 - eps) * ell, 3 - eps * ell


def encode_index(i: int, p: ReductionPlan) -> EncodedIndex:
    if not 1 <= i <= p.m:
        raise ValueError(f"index {i} outside [1, {p.m}]")
    return EncodedIndex(i // p.d, i % p.d + 2)


def decode_index(e: EncodedIndex, p: ReductionPlan) -> int:
    if e.hi not in p.high_range or e.lo not in p.low_range:
        raise ValueError(f"{e} outside the encoding ranges for d={p.d}")
    i = e.hi * p.d + (e.lo - 2)
    if not 1 <= i <= p.m:
        raise ValueError(f"{e} decodes to {i}, outside [1, {p.m}]")
    return i


def build_string(p: ReductionPlan) -> InputString:
    return InputString(tuple(f"w{l}" for l in range(1, p.string_length + 1)))


@dataclass(frozen=True)
class Naming:
    """Names of the nonterminal families, and the inverse map."""

    def nonterminal(self, family: str, *idx: int) -> str:
        if family in ("S", "T", "W") and not idx:
            return family
        if family in ("Wl", "X") and len(idx) == 1:
            return ("W" if family == "Wl" else "X") + str(idx[0])
        if family in ("A", "B", "C") and len(idx) == 2:
            return f"{family}_{idx[0]}_{idx[1]}"
        raise ValueError(f"bad nonterminal family/index: {family}{idx}")

    def parse(self, name: str) -> tuple:
        if name in ("S", "T", "W"):
            return (name,)
        head, *rest = name.split("_")
        if head in ("A", "B", "C") and len(rest) == 2 and all(r.isdigit() for r in rest):
            return (head, int(rest[0]), int(rest[1]))
        if name[0] in "WX" and name[1:].isdigit():
            return ("Wl" if name[0] == "W" else "X", int(name[1:]))
        raise ValueError(f"not a reduction nonterminal: {name!r}")

    @staticmethod
    def terminal(l: int) -> str:
        return f"w{l}"


NAMING = Naming()


@dataclass(frozen=True)
class ReductionArtifacts:
    grammar: Grammar
    string: InputString
    plan: ReductionPlan
    variant: Variant
    naming: Naming = field(default=NAMING)

    def extraction_query(self, i: int, j: int) -> tuple[str, int, int]:
        """(C_{i1,j1}, i2, j2 + 2*delta): the item whose presence means c_ij = 1."""
        p = self.plan
        ei, ej = encode_index(i, p), encode_index(j, p)
        return self.naming.nonterminal("C", ei.hi, ej.hi), ei.lo, ej.lo + 2 * p.delta


def _check_inputs(a: BooleanMatrix, b: BooleanMatrix, p: ReductionPlan) -> None:
    if not a.m == b.m == p.m:
        raise DimensionError(f"matrices {a.m}x{a.m}, {b.m}x{b.m} vs plan m={p.m}")


def build_grammar(a: BooleanMatrix, b: BooleanMatrix, p: ReductionPlan) -> ReductionArtifacts:
    _check_inputs(a, b, p)
    w = build_string(p)
    delta = p.delta
    nt, tm = NAMING.nonterminal, NAMING.terminal
    W = N("W")
    prods: list[Production] = []
    for l in range(1, p.string_length + 1):
        prods.append(Production("W", (T(tm(l)), W)))
        prods.append(Production("W", (T(tm(l)),)))
    for i, k in a.nonzero():
        ei, ek = encode_index(i, p), encode_index(k, p)
        prods.append(Production(nt("A", ei.hi, ek.hi), (T(tm(ei.lo)), W, T(tm(ek.lo + delta)))))
    for k, j in b.nonzero():
        ek, ej = encode_index(k, p), encode_index(j, p)
        prods.append(
            Production(nt("B", ek.hi, ej.hi), (T(tm(ek.lo + 1 + delta)), W, T(tm(ej.lo + 2 * delta))))
        )
    hr = p.high_range
    for hp in hr:
        for hq in hr:
            for hr_ in hr:
                prods.append(Production(nt("C", hp, hq), (N(nt("A", hp, hr_)), N(nt("B", hr_, hq)))))
    for hp in hr:
        for hq in hr:
            prods.append(Production("S", (W, N(nt("C", hp, hq)), W)))
    g = Grammar.from_productions(prods, "S", terminals=w.tokens)
    return ReductionArtifacts(g, w, p, "general")


def build_grammar_cnf(a: BooleanMatrix, b: BooleanMatrix, p: ReductionPlan) -> ReductionArtifacts:
    """Chomsky normal form variant, built directly rather than converted."""
    _check_inputs(a, b, p)
    w = build_string(p)
    delta = p.delta
    nt, tm = NAMING.nonterminal, NAMING.terminal
    W = N("W")
    n = p.string_length
    prods: list[Production] = []
    for l in range(1, n + 1):
        prods.append(Production("W", (N(nt("Wl", l)), W)))
        prods.append(Production("W", (T(tm(l)),)))
    for l in range(1, n + 1):
        prods.append(Production(nt("Wl", l), (T(tm(l)),)))
    for i, k in a.nonzero():
        ei, ek = encode_index(i, p), encode_index(k, p)
        prods.append(Production(nt("A", ei.hi, ek.hi), (N(nt("Wl", ei.lo)), N(nt("X", ek.lo + delta)))))
    for lo in p.low_range:
        prods.append(Production(nt("X", lo + delta), (W, N(nt("Wl", lo + delta)))))
    for k, j in b.nonzero():
        ek, ej = encode_index(k, p), encode_index(j, p)
        prods.append(
            Production(nt("B", ek.hi, ej.hi), (N(nt("Wl", ek.lo + 1 + delta)), N(nt("X", ej.lo + 2 * delta))))
        )
    for lo in p.low_range:
        prods.append(Production(nt("X", lo + 2 * delta), (W, N(nt("Wl", lo + 2 * delta)))))
    hr = p.high_range
    for hp in hr:
        for hq in hr:
            for hr_ in hr:
                prods.append(Production(nt("C", hp, hq), (N(nt("A", hp, hr_)), N(nt("B", hr_, hq)))))
    prods.append(Production("S", (W, N("T"))))
    for hp in hr:
        for hq in hr:
            prods.append(Production("T", (N(nt("C", hp, hq)), W)))
    g = Grammar.from_productions(prods, "S", terminals=w.tokens)
    return ReductionArtifacts(g, w, p, "cnf")


def extract_product(c: Chart, art: ReductionArtifacts) -> BooleanMatrix:
    """One oracle query per entry: exactly m^2 lookups."""
    m = art.plan.m
    known = art.grammar.nt_id
    rows = []
    for i in range(1, m + 1):
        row = 0
        for j in range(1, m + 1):
            name, s, e = art.extraction_query(i, j)
            if name not in known:
                raise ArtifactError(f"{name} missing from the reduction grammar")
            if oracle_query(c, name, s, e):
                row |= 1 << (j - 1)
        rows.append(row)
    return BooleanMatrix(m, tuple(rows))


@dataclass(frozen=True)
class ReductionRun:
    product: BooleanMatrix
    artifacts: ReductionArtifacts
    chart: Chart
    parser: str
    build_ns: int
    parse_ns: int
    extract_ns: int

    @property
    def recognized(self) -> bool:
        return recognizes(self.chart)

    @property
    def grammar_size(self) -> int:
        return grammar_size(self.artifacts.grammar)


def _resolve_parser(variant: str, parser: str | None) -> str:
    if variant not in ("general", "cnf"):
        raise ValueError(f"unknown grammar variant {variant!r}")
    if parser is None:
        return "cky" if variant == "cnf" else "general"
    if parser == "general-chart":
        parser = "general"
    if parser not in ("cky", "general"):
        raise ValueError(f"unknown parser {parser!r}")
    if parser == "cky" and variant != "cnf":
        raise ValueError("the cky parser needs the cnf grammar variant")
    return parser


def run_reduction(
    a: BooleanMatrix,
    b: BooleanMatrix,
    variant: Variant = "cnf",
    parser: ParserName | None = None,
    filtered: bool = False,
    ell=DEFAULT_ELL,
) -> ReductionRun:
    """Build, parse and extract, timing each phase with a monotonic clock."""
    parser = _resolve_parser(variant, parser)
    if a.m != b.m:
        raise DimensionError(f"cannot multiply {a.m}x{a.m} by {b.m}x{b.m}")
    t0 = time.perf_counter_ns()
    p = plan(a.m, ell)
    build = build_grammar_cnf if variant == "cnf" else build_grammar
    art = build(a, b, p)
    t1 = time.perf_counter_ns()
    parse = cky_parse if parser == "cky" else chart_parse_general
    chart = parse(art.grammar, art.string)
    if filtered:
        chart = consistency_filter(chart, art.grammar, art.string)
    t2 = time.perf_counter_ns()
    product = extract_product(chart, art)
    t3 = time.perf_counter_ns()
    return ReductionRun(product, art, chart, parser, t1 - t0, t2 - t1, t3 - t2)


def multiply_via_parsing(
    a: BooleanMatrix,
    b: BooleanMatrix,
    variant: Variant = "cnf",
    parser: ParserName | None = None,
    filtered: bool = False,
    ell=DEFAULT_ELL,
) -> BooleanMatrix:
    return run_reduction(a, b, variant, parser, filtered, ell).product
