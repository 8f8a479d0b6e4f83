"""Token-pattern grammar: parsing, compilation, and matching.

A rule is a whitespace-separated sequence of atoms ``[tag=NOUN]``,
``[word=of]``, or with alternation ``[tag=ADJ|NOUN]``, each optionally
quantified with ``?``, ``*`` or ``+``.  Rules compile to small NFAs over
token streams; matching is deterministic with longest-match-per-start
semantics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import GrammarSyntaxError
from .tokens import TAGS, Token

_ATOM_RE = re.compile(r"\[(tag|word)=([^\]\s]+)\]([?*+]?)")


@dataclass(frozen=True)
class Atom:
    """One token constraint with its quantifier."""

    attr: str  # "tag" | "word"
    values: frozenset
    quantifier: str  # "", "?", "*", "+"

    def matches(self, token: Token) -> bool:
        value = token.tag if self.attr == "tag" else token.normalized
        return value in self.values

    @property
    def skippable(self) -> bool:
        return self.quantifier in ("?", "*")

    @property
    def repeatable(self) -> bool:
        return self.quantifier in ("*", "+")


@dataclass(frozen=True)
class Rule:
    source: str
    atoms: tuple

    def match_lengths(self, tokens: Sequence[Token], start: int, end: int) -> list[int]:
        """All accepting match lengths (> 0) from ``start``, ascending."""
        atoms = self.atoms
        n = len(atoms)

        def closure(states: set) -> set:
            out = set(states)
            frontier = list(states)
            while frontier:
                i = frontier.pop()
                if i < n and atoms[i].skippable and i + 1 not in out:
                    out.add(i + 1)
                    frontier.append(i + 1)
            return out

        states = closure({0})
        lengths = []
        pos = start
        while states and pos < end:
            token = tokens[pos]
            nxt = set()
            for i in states:
                if i < n and atoms[i].matches(token):
                    nxt.add(i + 1)
                    if atoms[i].repeatable:
                        nxt.add(i)
            states = closure(nxt)
            pos += 1
            if n in states:
                lengths.append(pos - start)
        return lengths

    def longest_match(self, tokens: Sequence[Token], start: int, end: int) -> int:
        """Longest accepting match length from ``start``; 0 when none."""
        lengths = self.match_lengths(tokens, start, end)
        return lengths[-1] if lengths else 0


@dataclass(frozen=True)
class TermGrammar:
    rules: tuple

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a term grammar needs at least one rule")


def parse_atom(text: str, rule_index: int = 0, offset: int = 0) -> Atom:
    """Parse a single atom; ``offset`` feeds error positions."""
    match = _ATOM_RE.fullmatch(text)
    if match is None:
        raise GrammarSyntaxError(f"malformed atom {text!r}", rule_index, offset)
    attr, raw_values, quantifier = match.groups()
    values = raw_values.split("|")
    if any(not v for v in values):
        raise GrammarSyntaxError("empty alternative in atom", rule_index, offset)
    if attr == "tag":
        for v in values:
            if v not in TAGS:
                raise GrammarSyntaxError(
                    f"unknown tag {v!r} (expected one of {', '.join(TAGS)})",
                    rule_index,
                    offset,
                )
        values = frozenset(values)
    else:
        values = frozenset(v.casefold() for v in values)
    return Atom(attr=attr, values=values, quantifier=quantifier)


def parse_rule(text: str, rule_index: int = 0) -> Rule:
    atoms = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _ATOM_RE.match(text, pos)
        if match is None:
            raise GrammarSyntaxError(f"expected an atom at {text[pos:pos+20]!r}", rule_index, pos)
        atoms.append(parse_atom(match.group(0), rule_index, pos))
        pos = match.end()
    if not atoms:
        raise GrammarSyntaxError("empty rule", rule_index, 0)
    return Rule(source=text.strip(), atoms=tuple(atoms))


def compile_term_grammar(rule_texts: list[str]) -> TermGrammar:
    """Compile pattern strings into a grammar.

    Raises :class:`GrammarSyntaxError` carrying the rule index and character
    position of the first syntax problem.
    """
    rules = []
    for i, text in enumerate(rule_texts):
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rules.append(parse_rule(text, i))
    if not rules:
        raise GrammarSyntaxError("grammar has no rules", 0, 0)
    return TermGrammar(rules=tuple(rules))


def load_grammar(path: str | None = None) -> TermGrammar:
    """Grammar from a rule file (one rule per line, ``#`` comments), or the
    bundled default covering plain and prepositional noun phrases."""
    if path is None:
        from importlib import resources

        text = resources.files("termforge.data").joinpath("grammar.default.txt").read_text(
            encoding="utf-8"
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return compile_term_grammar(text.splitlines())


def rule_spans(
    rule: Rule, tokens: Sequence[Token], start: int, end: int
) -> list[tuple[int, int]]:
    """Leftmost-longest, non-overlapping spans of one rule in a window."""
    spans = []
    pos = start
    while pos < end:
        length = rule.longest_match(tokens, pos, end)
        if length > 0:
            spans.append((pos, pos + length))
            pos += length
        else:
            pos += 1
    return spans


def all_spans(
    grammar: TermGrammar, tokens: Sequence[Token], start: int, end: int
) -> set[tuple[int, int]]:
    """Every accepting (start, end) span of any rule, overlaps included.

    Used where phrase boundaries matter more than counting, e.g. filling
    noun-phrase slots of hypernym patterns.
    """
    spans = set()
    for rule in grammar.rules:
        for pos in range(start, end):
            for length in rule.match_lengths(tokens, pos, end):
                spans.add((pos, pos + length))
    return spans
