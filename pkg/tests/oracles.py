"""Independent reference implementations used only by the tests.

None of these share code paths with the package: derivability is decided by
exhaustive breadth-first search over sentential forms, not by a chart.
"""
from __future__ import annotations

import random
from collections import deque
from itertools import product

from cfgbmm.grammar import Grammar, N, Production, T


def scalar_bmm(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    m = len(a)
    return [
        [int(any(a[i][k] and b[k][j] for k in range(m))) for j in range(m)]
        for i in range(m)
    ]


def derivable_strings(g: Grammar, nonterminal: str, max_len: int) -> set[tuple[str, ...]]:
    """All terminal strings of length <= max_len derivable from ``nonterminal``.

    Leftmost derivations only; forms longer than max_len are dropped, which is
    safe because no production shrinks a form.
    """
    rules = {}
    for p in g.productions:
        rules.setdefault(p.lhs, []).append(p.rhs)
    found = set()
    start = (N(nonterminal),)
    seen = {start}
    queue = deque([start])
    while queue:
        form = queue.popleft()
        k = next((t for t, s in enumerate(form) if not s.is_terminal), None)
        if k is None:
            found.add(tuple(s.name for s in form))
            continue
        for rhs in rules.get(form[k].name, ()):
            new = form[:k] + rhs + form[k + 1:]
            if len(new) <= max_len and new not in seen:
                seen.add(new)
                queue.append(new)
    return found


def brute_chart(g: Grammar, w: tuple[str, ...], languages=None) -> set[tuple[str, int, int]]:
    """{(A, i, j) : A =>* w_i..w_j}, 1-based inclusive."""
    n = len(w)
    if languages is None:
        languages = {a: derivable_strings(g, a, n) for a in g.nonterminals}
    out = set()
    for a, lang in languages.items():
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if w[i - 1:j] in lang:
                    out.add((a, i, j))
    return out


def reachable_forms(g: Grammar, max_len: int) -> set[tuple]:
    """Every sentential form of length <= max_len reachable from the start symbol."""
    rules = {}
    for p in g.productions:
        rules.setdefault(p.lhs, []).append(p.rhs)
    start = (N(g.start),)
    seen = {start}
    queue = deque([start])
    while queue:
        form = queue.popleft()
        for k, s in enumerate(form):
            if s.is_terminal:
                continue
            for rhs in rules.get(s.name, ()):
                new = form[:k] + rhs + form[k + 1:]
                if len(new) <= max_len and new not in seen:
                    seen.add(new)
                    queue.append(new)
    return seen


def brute_cderivations(g: Grammar, w: tuple[str, ...]) -> set[tuple[str, int, int]]:
    """{(A, i, j) : A =>* w_i^j and S =>* w_1^{i-1} A w_{j+1}^n}."""
    n = len(w)
    derives = brute_chart(g, w)
    forms = reachable_forms(g, n)
    out = set()
    for a, i, j in derives:
        context = tuple(T(x) for x in w[:i - 1]) + (N(a),) + tuple(T(x) for x in w[j:])
        if context in forms:
            out.add((a, i, j))
    return out


NONTERMINALS = ("S", "A", "B")
TERMINALS = ("a", "b")


def random_grammar(rng: random.Random, cnf: bool, max_productions: int = 6) -> Grammar:
    count = rng.randint(1, max_productions)
    prods = set()
    while len(prods) < count:
        lhs = rng.choice(NONTERMINALS[: rng.randint(1, 3)]) if prods else "S"
        if cnf:
            if rng.random() < 0.4:
                rhs = (T(rng.choice(TERMINALS)),)
            else:
                rhs = (N(rng.choice(NONTERMINALS)), N(rng.choice(NONTERMINALS)))
        else:
            length = rng.choice((1, 1, 2, 2, 3))
            rhs = tuple(
                T(rng.choice(TERMINALS)) if rng.random() < 0.5 else N(rng.choice(NONTERMINALS))
                for _ in range(length)
            )
        prods.add(Production(lhs, rhs))
    ordered = sorted(prods, key=lambda p: (p.lhs, tuple((s.kind, s.name) for s in p.rhs)))
    return Grammar.from_productions(ordered, "S", terminals=TERMINALS)


def all_strings(max_len: int, alphabet=TERMINALS):
    for n in range(1, max_len + 1):
        yield from product(alphabet, repeat=n)
