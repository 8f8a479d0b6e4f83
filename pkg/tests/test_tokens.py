"""Tokenizer and tagger behavior."""

import string

import pytest
from hypothesis import given, strategies as st

from termforge.tokens import (
    Token,
    fold_diacritics,
    normalize_phrase,
    profile_for,
    tokenize,
)

EN = profile_for("en")
CS = profile_for("cs")

# Letters the idempotence property runs over: plain latin plus the Czech
# diacritic set (case folding is stable for all of these).
ALPHABET = string.ascii_letters + "áčďéěíňóřšťúůýžÁČĎÉĚÍŇÓŘŠŤÚŮÝŽ .,;:!?-()"


def test_empty_input():
    assert tokenize("", EN) == []


def test_spec_noun_phrase_is_content_words():
    tokens = tokenize("digital photogrammetric workstation", EN)
    assert len(tokens) == 3
    assert [t.tag for t in tokens] == ["ADJ", "ADJ", "NOUN"]


def test_punctuation_split():
    tokens = tokenize("a, b", EN)
    assert [t.surface for t in tokens] == ["a", ",", "b"]
    assert tokens[1].tag == "PUNCT"


def test_normalized_is_casefolded():
    tokens = tokenize("Katastrální Mapa", CS)
    assert [t.normalized for t in tokens] == ["katastrální", "mapa"]
    assert [t.tag for t in tokens] == ["ADJ", "NOUN"]


def test_hyphenated_words_stay_whole():
    tokens = tokenize("real-time data", EN)
    assert [t.surface for t in tokens] == ["real-time", "data"]


def test_czech_tagging():
    tokens = tokenize("teodolit je měřický přístroj v terénu", CS)
    tags = {t.surface: t.tag for t in tokens}
    assert tags["teodolit"] == "NOUN"
    assert tags["je"] == "VERB"
    assert tags["měřický"] == "ADJ"
    assert tags["přístroj"] == "NOUN"
    assert tags["v"] == "PREP"


def test_czech_verbal_nouns_not_adjectives():
    tokens = tokenize("měření a vyrovnání", CS)
    tags = {t.surface: t.tag for t in tokens}
    assert tags["měření"] == "NOUN"
    assert tags["vyrovnání"] == "NOUN"


def test_numbers_tag_other():
    tokens = tokenize("level 42", EN)
    assert tokens[1].tag == "OTHER"


def test_token_invariants():
    with pytest.raises(ValueError):
        Token("", "", "NOUN")
    with pytest.raises(ValueError):
        Token("x", "x", "WEIRD")


@given(st.text(alphabet=ALPHABET, max_size=80))
def test_tokenize_idempotent_on_normalized_join(text):
    first = tokenize(text, EN)
    rejoined = " ".join(t.normalized for t in first)
    second = tokenize(rejoined, EN)
    assert [(t.normalized, t.tag) for t in second] == [
        (t.normalized, t.tag) for t in first
    ]


@given(st.text(alphabet=ALPHABET, max_size=80))
def test_surfaces_keep_word_content(text):
    tokens = tokenize(text, EN)
    # Concatenating surfaces with separators loses only whitespace layout.
    assert "".join(text.split()) == "".join("".join(t.surface.split()) for t in tokens)


def test_normalize_phrase():
    assert normalize_phrase("  Cartesian   Coordinate  SYSTEM ") == "cartesian coordinate system"


def test_fold_diacritics():
    assert fold_diacritics("katastrální mapa") == "katastralni mapa"
    assert fold_diacritics("plain") == "plain"
