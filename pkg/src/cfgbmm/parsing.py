"""Chart parsers producing a constant-time derivability oracle.

A chart is the set of items (A, i, j), 1-based and inclusive, with
A =>* w_i .. w_j.  ``consistency_filter`` restricts a raw chart to the items
that also fit some complete parse of w (A c-derives w_i^j):

    S =>* w_1 .. w_{i-1} A w_{j+1} .. w_n

Both parsers return the same item set; ``cky_parse`` needs a CNF grammar,
``chart_parse_general`` accepts any epsilon-free grammar, including unit
productions and cycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .grammar import Grammar, GrammarError, is_cnf, require_valid


class TokenError(ValueError):
    """The input string contains a token that is not a terminal of the grammar."""


class QueryError(LookupError):
    """An oracle query was malformed (distinct from a "no" answer)."""


class UnknownNonterminalError(QueryError):
    pass


class SpanError(QueryError):
    pass


@dataclass(frozen=True)
class InputString:
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("input string must be non-empty")

    @classmethod
    def of(cls, tokens: Iterable[str] | str) -> "InputString":
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(tuple(tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, i: int) -> str:
        """1-based token access."""
        if not 1 <= i <= len(self.tokens):
            raise IndexError(i)
        return self.tokens[i - 1]

    def __str__(self) -> str:
        return " ".join(self.tokens)


def parse_input_string(text: str) -> InputString:
    return InputString.of(text.split())


def format_input_string(w: InputString) -> str:
    return str(w) + "\n"


@dataclass(frozen=True)
class Chart:
    grammar: Grammar
    n: int
    items: frozenset[tuple[int, int, int]]  # (nonterminal id, i, j)
    filtered: bool = False

    def __contains__(self, item: tuple[str, int, int]) -> bool:
        a, i, j = item
        k = self.grammar.nt_id.get(a)
        return k is not None and (k, i, j) in self.items

    def __len__(self) -> int:
        return len(self.items)

    @cached_property
    def named_items(self) -> frozenset[tuple[str, int, int]]:
        names = self.grammar.nonterminals
        return frozenset((names[k], i, j) for k, i, j in self.items)

    def dump(self) -> str:
        rows = sorted(self.named_items, key=lambda t: (t[1], t[2], t[0]))
        return "".join(f"{a} {i} {j}\n" for a, i, j in rows)


def oracle_query(c: Chart, a: str, i: int, j: int) -> bool:
    """F(A, i, j): a single hash lookup.  Bad queries raise QueryError."""
    k = c.grammar.nt_id.get(a)
    if k is None:
        raise UnknownNonterminalError(f"unknown nonterminal {a!r}")
    if not 1 <= i <= j <= c.n:
        raise SpanError(f"span ({i}, {j}) outside 1 <= i <= j <= {c.n}")
    return (k, i, j) in c.items


def recognizes(c: Chart) -> bool:
    return (c.grammar.nt_id[c.grammar.start], 1, c.n) in c.items


def _check_tokens(g: Grammar, w: InputString) -> None:
    terminals = g.terminal_set
    for pos, tok in enumerate(w.tokens, 1):
        if tok not in terminals:
            raise TokenError(f"token {tok!r} at position {pos} is not a terminal")


def cky_parse(g: Grammar, w: InputString) -> Chart:
    """CKY over per-span cells of nonterminal ids; O(|G| n^3)."""
    require_valid(g)
    if not is_cnf(g):
        raise GrammarError("cky_parse requires a grammar in Chomsky normal form")
    _check_tokens(g, w)
    ids = g.nt_id
    lexical: dict[str, list[int]] = {}
    # left child -> right child -> parents
    binary: dict[int, dict[int, list[int]]] = {}
    for p in g.productions:
        a = ids[p.lhs]
        if len(p.rhs) == 1:
            lexical.setdefault(p.rhs[0].name, []).append(a)
        else:
            b, c = ids[p.rhs[0].name], ids[p.rhs[1].name]
            binary.setdefault(b, {}).setdefault(c, []).append(a)

    n = len(w)
    cells: dict[tuple[int, int], set[int]] = {}
    for i in range(1, n + 1):
        cells[i, i] = set(lexical.get(w[i], ()))
    for length in range(2, n + 1):
        for i in range(1, n - length + 2):
            j = i + length - 1
            cell: set[int] = set()
            for k in range(i, j):
                left = cells[i, k]
                right = cells[k + 1, j]
                if not left or not right:
                    continue
                for b in left:
                    by_right = binary.get(b)
                    if by_right is None:
                        continue
                    if len(by_right) <= len(right):
                        for c, parents in by_right.items():
                            if c in right:
                                cell.update(parents)
                    else:
                        for c in right:
                            parents = by_right.get(c)
                            if parents:
                                cell.update(parents)
            cells[i, j] = cell
    items = frozenset((a, i, j) for (i, j), cell in cells.items() for a in cell)
    return Chart(g, n, items)


def chart_parse_general(g: Grammar, w: InputString) -> Chart:
    """Bottom-up chart parsing for any epsilon-free grammar.

    Each production is matched left to right over split points: an active
    state (rule, dot, start) ending at position e records that the first
    ``dot`` rhs symbols cover w_start .. w_e.  Cells are completed column by
    column (end position ascending, start descending), so every state is
    extended only by items that are already final.
    """
    require_valid(g)
    _check_tokens(g, w)
    ids = g.nt_id
    # rhs keys: int for a nonterminal id, str for a terminal name
    rules: list[tuple[int, tuple]] = []
    starts: dict[object, list[int]] = {}
    for p in g.productions:
        rhs = tuple(s.name if s.is_terminal else ids[s.name] for s in p.rhs)
        starts.setdefault(rhs[0], []).append(len(rules))
        rules.append((ids[p.lhs], rhs))

    n = len(w)
    # waiting[e][key] = active states ending at e that need `key` next
    waiting: list[dict[object, set[tuple[int, int, int]]]] = [{} for _ in range(n + 1)]
    pending: dict[tuple[int, int], set] = {}
    items: set[tuple[int, int, int]] = set()

    for e in range(1, n + 1):
        pending.setdefault((e, e), set()).add(w[e])
        out = waiting[e]
        for s in range(e, 0, -1):
            work = list(pending.pop((s, e), ()))
            if not work:
                continue
            cell: set = set()
            while work:
                x = work.pop()
                if x in cell:
                    continue
                cell.add(x)
                advanced = [(r, t + 1, i) for r, t, i in waiting[s - 1].get(x, ())]
                advanced.extend((r, 1, s) for r in starts.get(x, ()))
                for r, t, i in advanced:
                    lhs, rhs = rules[r]
                    if t < len(rhs):
                        out.setdefault(rhs[t], set()).add((r, t, i))
                    elif i == s:
                        work.append(lhs)
                    else:
                        pending.setdefault((i, e), set()).add(lhs)
            items.update((x, s, e) for x in cell if isinstance(x, int))
    return Chart(g, n, frozenset(items))


def _decomposition_items(
    rhs: Sequence, i: int, j: int, derives
) -> Iterable[tuple[int, int, int]]:
    """Nonterminal items used by some split of w_i..w_j along ``rhs``."""
    r = len(rhs)
    fwd = [set() for _ in range(r + 1)]
    fwd[0].add(i - 1)
    for t in range(r):
        for b in fwd[t]:
            for e in range(b + 1, j + 1):
                if derives(rhs[t], b + 1, e):
                    fwd[t + 1].add(e)
    if j not in fwd[r]:
        return
    bwd = [set() for _ in range(r + 1)]
    bwd[r].add(j)
    for t in range(r - 1, -1, -1):
        for e in bwd[t + 1]:
            for b in range(i - 1, e):
                if b in fwd[t] and derives(rhs[t], b + 1, e):
                    bwd[t].add(b)
    for t, x in enumerate(rhs):
        if not isinstance(x, int):
            continue
        for b in fwd[t]:
            if b not in bwd[t]:
                continue
            for e in bwd[t + 1]:
                if e > b and derives(x, b + 1, e):
                    yield x, b + 1, e


def consistency_filter(c: Chart, g: Grammar, w: InputString) -> Chart:
    """Keep exactly the items consistent with a complete parse of ``w``.

    Top-down reachability from (S, 1, n): an item is kept when it fills some
    position of some production split of an item already kept.
    """
    if c.filtered:
        return c
    ids = g.nt_id
    raw = c.items
    n = len(w)
    start = (ids[g.start], 1, n)
    if start not in raw:
        return Chart(g, n, frozenset(), filtered=True)

    def derives(x, s, e):
        if isinstance(x, int):
            return (x, s, e) in raw
        return s == e and w[s] == x

    rhs_by_lhs: dict[int, list[tuple]] = {}
    for p in g.productions:
        rhs = tuple(s.name if s.is_terminal else ids[s.name] for s in p.rhs)
        rhs_by_lhs.setdefault(ids[p.lhs], []).append(rhs)

    keep = {start}
    stack = [start]
    while stack:
        a, i, j = stack.pop()
        for rhs in rhs_by_lhs.get(a, ()):
            if len(rhs) > j - i + 1:
                continue
            for item in _decomposition_items(rhs, i, j, derives):
                if item not in keep:
                    keep.add(item)
                    stack.append(item)
    return Chart(g, n, frozenset(keep), filtered=True)
