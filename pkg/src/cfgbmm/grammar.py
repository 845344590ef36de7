"""Context-free grammars: representation, structural checks, text format.

A grammar is the usual 4-tuple (terminals, nonterminals, productions, start).
Grammars are immutable; nonterminal names are interned to dense integer ids
(``Grammar.nt_id``) for the parsers, but every external format uses names.

Text format, one production per line::

    start: S
    S -> A B
    A -> 'a'

Terminals are single-quoted, nonterminals bare.  Blank lines and lines
starting with ``#`` are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

TERMINAL = "terminal"
NONTERMINAL = "nonterminal"

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class GrammarError(ValueError):
    """A grammar failed validation or could not be read."""


@dataclass(frozen=True)
class Symbol:
    kind: str
    name: str

    @property
    def is_terminal(self) -> bool:
        return self.kind == TERMINAL

    def __str__(self) -> str:
        return f"'{self.name}'" if self.is_terminal else self.name


@lru_cache(maxsize=None)
def T(name: str) -> Symbol:
    return Symbol(TERMINAL, name)


@lru_cache(maxsize=None)
def N(name: str) -> Symbol:
    return Symbol(NONTERMINAL, name)


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[Symbol, ...]

    def __len__(self) -> int:
        # |A -> alpha| = 1 + |alpha|
        return 1 + len(self.rhs)

    def __str__(self) -> str:
        return f"{self.lhs} -> " + " ".join(str(s) for s in self.rhs)


@dataclass(frozen=True)
class Grammar:
    terminals: tuple[str, ...]
    nonterminals: tuple[str, ...]
    productions: tuple[Production, ...]
    start: str

    @classmethod
    def from_productions(
        cls,
        productions: Iterable[Production],
        start: str,
        terminals: Sequence[str] | None = None,
    ) -> "Grammar":
        """Build a grammar, declaring every symbol the productions mention.

        Symbols are declared in first-appearance order (start first), so
        output built from the same production list is deterministic.
        """
        productions = tuple(productions)
        nts: dict[str, None] = {start: None}
        ts: dict[str, None] = dict.fromkeys(terminals or ())
        for p in productions:
            nts.setdefault(p.lhs, None)
            for s in p.rhs:
                (ts if s.is_terminal else nts).setdefault(s.name, None)
        return cls(tuple(ts), tuple(nts), productions, start)

    @cached_property
    def nt_id(self) -> dict[str, int]:
        return {name: k for k, name in enumerate(self.nonterminals)}

    @cached_property
    def terminal_set(self) -> frozenset[str]:
        return frozenset(self.terminals)

    @cached_property
    def by_lhs(self) -> dict[str, list[Production]]:
        out: dict[str, list[Production]] = {}
        for p in self.productions:
            out.setdefault(p.lhs, []).append(p)
        return out

    def __str__(self) -> str:
        return format_grammar(self)


def grammar_size(g: Grammar) -> int:
    """Sum of production lengths, where a production's length counts its LHS."""
    return sum(len(p) for p in g.productions)


def is_cnf(g: Grammar) -> bool:
    """True iff every rhs is exactly two nonterminals or exactly one terminal."""
    for p in g.productions:
        rhs = p.rhs
        if len(rhs) == 1 and rhs[0].is_terminal:
            continue
        if len(rhs) == 2 and not rhs[0].is_terminal and not rhs[1].is_terminal:
            continue
        return False
    return True


def validate_grammar(g: Grammar) -> list[str]:
    """Return a list of structural violations; empty means the grammar is ok.

    Unreachable or unproductive nonterminals are not violations.
    """
    problems: list[str] = []
    for kind, names in (("terminal", g.terminals), ("nonterminal", g.nonterminals)):
        seen: set[str] = set()
        for name in names:
            if name in seen:
                problems.append(f"duplicate {kind} name: {name}")
            seen.add(name)
            if not _NAME_RE.match(name):
                problems.append(f"invalid {kind} name: {name!r}")
    clash = set(g.terminals) & set(g.nonterminals)
    for name in sorted(clash):
        problems.append(f"name used as both terminal and nonterminal: {name}")

    nts, ts = set(g.nonterminals), set(g.terminals)
    if g.start not in nts:
        problems.append(f"undeclared symbol: start symbol {g.start}")
    for k, p in enumerate(g.productions):
        if p.lhs not in nts:
            problems.append(f"undeclared symbol: {p.lhs} (lhs of production {k})")
        if not p.rhs:
            problems.append(
                f"epsilon production not representable: production {k} ({p.lhs} ->)"
            )
        for s in p.rhs:
            if s.name not in (ts if s.is_terminal else nts):
                problems.append(f"undeclared symbol: {s} (production {k})")
    return problems


def require_valid(g: Grammar) -> None:
    problems = validate_grammar(g)
    if problems:
        raise GrammarError("; ".join(problems))


def format_grammar(g: Grammar) -> str:
    lines = [f"start: {g.start}"]
    lines.extend(str(p) for p in g.productions)
    return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar:
    """Read the grammar text format.  Raises GrammarError on malformed input."""
    start = None
    productions = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if start is None:
            if not line.startswith("start:"):
                raise GrammarError(f"line {lineno}: expected 'start: <NAME>'")
            start = line[len("start:"):].strip()
            if not _NAME_RE.match(start):
                raise GrammarError(f"line {lineno}: bad start symbol {start!r}")
            continue
        lhs, arrow, rest = line.partition("->")
        lhs = lhs.strip()
        if not arrow or not _NAME_RE.match(lhs):
            raise GrammarError(f"line {lineno}: expected 'LHS -> SYM ...'")
        rhs = []
        for tok in rest.split():
            if len(tok) >= 3 and tok[0] == tok[-1] == "'":
                name, kind = tok[1:-1], TERMINAL
            else:
                name, kind = tok, NONTERMINAL
            if not _NAME_RE.match(name):
                raise GrammarError(f"line {lineno}: bad symbol {tok!r}")
            rhs.append(Symbol(kind, name))
        productions.append(Production(lhs, tuple(rhs)))
    if start is None:
        raise GrammarError("missing 'start:' line")
    return Grammar.from_productions(productions, start)
