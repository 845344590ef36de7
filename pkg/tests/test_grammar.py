import pytest
from hypothesis import given, strategies as st

from cfgbmm.bmatrix import BooleanMatrix
from cfgbmm.grammar import (
    Grammar,
    GrammarError,
    N,
    Production,
    T,
    format_grammar,
    grammar_size,
    is_cnf,
    parse_grammar,
    validate_grammar,
)
from cfgbmm.reduction import build_grammar, build_grammar_cnf, plan


def G(*prods, start="S"):
    return Grammar.from_productions(prods, start)


def P(lhs, *rhs):
    return Production(lhs, tuple(T(s[1:-1]) if s.startswith("'") else N(s) for s in rhs))


def test_size_single_production():
    assert grammar_size(G(P("S", "'a'"))) == 2


def test_size_two_productions():
    assert grammar_size(G(P("S", "A", "B"), P("A", "'a'"))) == 5


def test_size_m1_reduction_grammar():
    one = BooleanMatrix.from_lists([[1]])
    g = build_grammar(one, one, plan(1)).grammar
    # 9 rules W -> w W (3) + 9 rules W -> w (2) + A (4) + B (4) + 8 C (3) + 4 S (4)
    assert grammar_size(g) == 9 * 3 + 9 * 2 + 4 + 4 + 8 * 3 + 4 * 4 == 93


def test_is_cnf():
    assert is_cnf(G(P("S", "A", "B"), P("A", "'a'"), P("B", "'b'")))
    assert not is_cnf(G(P("S", "'a'", "S")))
    assert not is_cnf(G(P("S", "A"), P("A", "'a'")))
    assert not is_cnf(G(P("S", "A", "B", "A"), P("A", "'a'"), P("B", "'a'")))


@pytest.mark.parametrize("m", [1, 2, 8, 10])
def test_reduction_cnf_grammar_is_cnf(m):
    a = BooleanMatrix.ones(m)
    assert is_cnf(build_grammar_cnf(a, a, plan(m)).grammar)
    assert not is_cnf(build_grammar(a, a, plan(m)).grammar)


def test_validate_ok():
    assert validate_grammar(G(P("S", "A", "'b'"), P("A", "'a'"))) == []


def test_validate_undeclared():
    g = Grammar(("a",), ("S",), (P("S", "A"),), "S")
    assert any("undeclared symbol" in v for v in validate_grammar(g))


def test_validate_undeclared_terminal_and_start():
    g = Grammar((), ("A",), (P("A", "'a'"),), "S")
    problems = validate_grammar(g)
    assert sum("undeclared symbol" in v for v in problems) == 2


def test_validate_epsilon():
    g = Grammar((), ("S",), (Production("S", ()),), "S")
    assert any("epsilon production not representable" in v for v in validate_grammar(g))


def test_validate_duplicates_and_clash():
    g = Grammar(("a", "a", "S"), ("S",), (P("S", "'a'"),), "S")
    problems = validate_grammar(g)
    assert any("duplicate terminal" in v for v in problems)
    assert any("both terminal and nonterminal" in v for v in problems)


def test_unreachable_is_not_a_violation():
    assert validate_grammar(G(P("S", "'a'"), P("Z", "'b'"))) == []


@pytest.mark.parametrize("cnf", [False, True])
def test_reduction_grammars_validate(cnf):
    a = BooleanMatrix.from_lists([[1, 0, 1], [0, 0, 0], [1, 1, 0]])
    build = build_grammar_cnf if cnf else build_grammar
    assert validate_grammar(build(a, a, plan(3)).grammar) == []


def test_text_format_exact():
    g = G(P("S", "A", "'b'"), P("A", "'a'"))
    assert format_grammar(g) == "start: S\nS -> A 'b'\nA -> 'a'\n"


def test_text_format_skips_comments_and_blanks():
    text = "# header\n\nstart: S\n# c\nS -> 'a' S\n\nS -> 'a'\n"
    g = parse_grammar(text)
    assert g.start == "S"
    assert [str(p) for p in g.productions] == ["S -> 'a' S", "S -> 'a'"]
    assert g.terminals == ("a",)


@pytest.mark.parametrize("text", [
    "S -> 'a'\n",                  # no start line
    "start: S\nS 'a'\n",           # no arrow
    "start: S\nS -> 'a-b'\n",      # bad terminal name
    "start: S-1\n",                # bad start
])
def test_text_format_errors(text):
    with pytest.raises(GrammarError):
        parse_grammar(text)


def test_reduction_grammar_roundtrips_through_text():
    a = BooleanMatrix.from_lists([[1, 1], [0, 1]])
    for build in (build_grammar, build_grammar_cnf):
        g = build(a, a, plan(2)).grammar
        back = parse_grammar(format_grammar(g))
        assert back.productions == g.productions
        assert set(back.nonterminals) == set(g.nonterminals)


names = st.sampled_from(["S", "A", "B", "C"])
syms = st.one_of(names.map(N), st.sampled_from(["a", "b"]).map(T))
prods = st.builds(Production, names, st.lists(syms, min_size=1, max_size=4).map(tuple))


@given(st.lists(prods, max_size=8), st.lists(prods, max_size=8))
def test_size_is_additive(p1, p2):
    g1, g2 = G(*p1), G(*p2)
    assert grammar_size(G(*p1, *p2)) == grammar_size(g1) + grammar_size(g2)


@given(st.lists(prods, min_size=1, max_size=8))
def test_text_roundtrip(ps):
    g = G(*ps)
    assert parse_grammar(format_grammar(g)).productions == g.productions


@given(st.lists(prods, min_size=1, max_size=8))
def test_cnf_rhs_shapes(ps):
    g = G(*ps)
    shapes_ok = all(
        (len(p.rhs) == 1 and p.rhs[0].is_terminal)
        or (len(p.rhs) == 2 and not any(s.is_terminal for s in p.rhs))
        for p in g.productions
    )
    assert is_cnf(g) == shapes_ok
