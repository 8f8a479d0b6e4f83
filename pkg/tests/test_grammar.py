"""Term-grammar parsing and matching semantics."""

import pytest

from termforge.errors import GrammarSyntaxError
from termforge.grammar import (
    compile_term_grammar,
    load_grammar,
    parse_rule,
    rule_spans,
)
from termforge.tokens import profile_for, tokenize

EN = profile_for("en")


def toks(text):
    return tokenize(text, EN)


def longest(rule_text, text, start=0):
    rule = parse_rule(rule_text)
    tokens = toks(text)
    return rule.longest_match(tokens, start, len(tokens))


def test_single_noun_rule():
    grammar = compile_term_grammar(["[tag=NOUN]"])
    tokens = toks("the map shows")
    (rule,) = grammar.rules
    assert rule.longest_match(tokens, 1, len(tokens)) == 1
    assert rule.longest_match(tokens, 0, len(tokens)) == 0


def test_adj_noun_rule_matches_three_word_phrase():
    assert longest("[tag=ADJ]* [tag=NOUN]+", "digital photogrammetric workstation") == 3


def test_np_prep_np_rule():
    rule = "[tag=ADJ]* [tag=NOUN]+ [tag=PREP] [tag=ADJ]* [tag=NOUN]+"
    # Article-free variant matches in full; the default grammar deliberately
    # leaves determiner handling out, so "with an auxiliary base" stops the
    # prepositional branch.
    assert longest(rule, "parallactic figure with auxiliary base") == 5
    assert longest(rule, "parallactic figure with an auxiliary base") == 0
    assert longest("[tag=ADJ]* [tag=NOUN]+", "parallactic figure with an auxiliary base") == 2


def test_quantifiers():
    assert longest("[tag=NOUN]?", "map") == 1
    assert longest("[tag=ADJ]+ [tag=NOUN]", "digital map") == 2
    assert longest("[tag=ADJ]+ [tag=NOUN]", "map") == 0
    assert longest("[tag=NOUN]+", "map grid system") == 3


def test_word_atoms_casefold():
    assert longest("[word=Map]", "map") == 1
    assert longest("[word=map|grid]", "grid") == 1


def test_longest_match_per_start():
    rule = parse_rule("[tag=NOUN]+")
    tokens = toks("map grid of system")
    assert rule.match_lengths(tokens, 0, len(tokens)) == [1, 2]
    assert rule.longest_match(tokens, 0, len(tokens)) == 2


def test_rule_spans_non_overlapping():
    rule = parse_rule("[tag=NOUN]+")
    tokens = toks("map grid the system")
    assert rule_spans(rule, tokens, 0, len(tokens)) == [(0, 2), (3, 4)]


def test_syntax_error_position():
    with pytest.raises(GrammarSyntaxError) as err:
        compile_term_grammar(["[tag=NOUN] [oops]"])
    assert err.value.rule_index == 0
    assert err.value.position == 11


def test_unknown_tag_rejected():
    with pytest.raises(GrammarSyntaxError):
        compile_term_grammar(["[tag=NOPE]"])


def test_empty_alternative_rejected():
    with pytest.raises(GrammarSyntaxError):
        compile_term_grammar(["[word=a|]"])


def test_empty_grammar_rejected():
    with pytest.raises(GrammarSyntaxError):
        compile_term_grammar(["# only a comment"])


def test_default_grammar_loads():
    grammar = load_grammar()
    assert len(grammar.rules) == 2
