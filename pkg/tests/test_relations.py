"""logDice, lexical similarity, hypernym pattern mining, suggestion merge."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from termforge.corpus import build_corpus
from termforge.errors import LexicalizationError
from termforge.relations import (
    character_bigrams,
    compile_pattern,
    extract_hypernym_pairs,
    lexsim,
    load_hypernym_patterns,
    logdice,
    suggest_hypernyms,
)
from termforge.store import ThesaurusStore
from termforge.tokens import profile_for

from synth import make_planted_hypernym_corpus, paragraphs_to_documents

CLOCK = lambda: "2026-01-01T00:00:00+00:00"


# -- logdice -------------------------------------------------------------------

def test_logdice_identity():
    for k in (1, 5, 1000):
        assert logdice(k, k, k) == 0.0


def test_logdice_powers_of_two():
    assert logdice(8, 8, 4) == -1.0


def test_logdice_direct_arithmetic():
    assert logdice(100, 50, 30) == pytest.approx(math.log2(0.4), rel=1e-15)


def test_logdice_zero_cooccurrence_sentinel():
    score = logdice(5, 5, 0)
    assert score == float("-inf")
    assert score < logdice(1000000, 1000000, 1)


def test_logdice_preconditions():
    with pytest.raises(ValueError):
        logdice(1, 5, 2)  # f12 > f1
    with pytest.raises(ValueError):
        logdice(0, 0, 0)  # f1 + f2 = 0


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(0, 10**6))
def test_logdice_symmetry_and_bound(f1, f2, f12):
    f12 = min(f12, f1, f2)
    assert logdice(f1, f2, f12) == logdice(f2, f1, f12)
    assert logdice(f1, f2, f12) <= 0.0


@given(st.integers(1, 10**4), st.integers(1, 10**4), st.integers(1, 10**4),
       st.integers(2, 50))
def test_logdice_scale_free(f1, f2, f12, c):
    f12 = min(f12, f1, f2)
    if f12 == 0:
        return
    assert logdice(c * f1, c * f2, c * f12) == pytest.approx(
        logdice(f1, f2, f12), abs=1e-12
    )


# -- lexsim ----------------------------------------------------------------------

def test_lexsim_reflexive():
    assert lexsim("coordinate system", "Coordinate  System") == 1.0


def test_lexsim_disjoint():
    assert lexsim("ab", "cd") == 0.0


def test_lexsim_paper_pair_passes_threshold():
    # Independent enumeration: 15 shared bigrams of 24 total.
    a, b = "coordinate system", "cartesian coordinate system"
    inter = character_bigrams(a) & character_bigrams(b)
    union = character_bigrams(a) | character_bigrams(b)
    assert (len(inter), len(union)) == (15, 24)
    assert lexsim(a, b) == pytest.approx(15 / 24)
    assert lexsim("coordinate system", "Cartesian coordinate system") >= 0.5


def test_lexsim_short_phrases():
    assert lexsim("a", "a") == 1.0
    assert lexsim("a", "b") == 0.0
    assert lexsim("a", "ab") == 0.0


def test_lexsim_spans_word_boundaries():
    # The space bigrams differ, so word order matters.
    assert lexsim("map sheet", "sheet map") < 1.0


@given(st.text(min_size=0, max_size=30), st.text(min_size=0, max_size=30))
def test_lexsim_properties(a, b):
    sim = lexsim(a, b)
    assert 0.0 <= sim <= 1.0
    assert sim == lexsim(b, a)
    assert lexsim(a, a) == 1.0


# -- pattern extraction ------------------------------------------------------------

def index_of(*paragraphs, language="en"):
    docs = paragraphs_to_documents(list(paragraphs), language, per_doc=3)
    return build_corpus(docs, profile_for(language))


def test_planted_single_sentence():
    index = index_of("a theodolite is an instrument")
    candidates = extract_hypernym_pairs(index)
    assert [(c.hyponym, c.hypernym, c.method) for c in candidates] == [
        ("theodolite", "instrument", "pattern-1")
    ]
    assert candidates[0].evidence == (("d0001", 1),)
    assert candidates[0].score == 0.0  # logdice(1,1,1) = 0


def test_no_connectives_no_candidates():
    index = index_of("the map of the district")
    assert extract_hypernym_pairs(index) == []


def test_pattern_three_not_misread_as_pattern_one():
    index = index_of("a theodolite is a kind of instrument")
    candidates = extract_hypernym_pairs(index)
    assert [(c.hyponym, c.hypernym, c.method) for c in candidates] == [
        ("theodolite", "instrument", "pattern-3")
    ]


def test_pattern_two():
    index = index_of("the theodolite and other instruments")
    (candidate,) = extract_hypernym_pairs(index)
    assert (candidate.hyponym, candidate.hypernym) == ("theodolite", "instruments")
    assert candidate.method == "pattern-2"


def test_pattern_weights_scale_scores():
    # Plant extra mentions of the hypernym so logdice is nonzero.
    index = index_of(
        "a theodolite is a kind of instrument",
        "the instrument of the office",
        "the instrument of the survey",
    )
    (candidate,) = extract_hypernym_pairs(index)
    f1 = index.phrase_count("theodolite")
    f2 = index.phrase_count("instrument")
    assert (f1, f2) == (1, 3)
    expected = 0.2 * logdice(1, 3, 1)
    assert candidate.score == pytest.approx(expected, rel=1e-12)
    assert candidate.score > logdice(1, 3, 1)  # lower weight pulls toward 0


def test_multiword_slots():
    index = index_of("the cadastral map is a thematic map of the district")
    candidates = extract_hypernym_pairs(index)
    pairs = {(c.hyponym, c.hypernym) for c in candidates}
    assert ("cadastral map", "thematic map of the district") in pairs or (
        "cadastral map",
        "thematic map",
    ) in pairs


def test_planted_corpus_full_recall_no_false_positives():
    rng = random.Random(11)
    paragraphs, planted = make_planted_hypernym_corpus(rng, per_pattern=10)
    index = build_corpus(
        paragraphs_to_documents(paragraphs, "en"), profile_for("en")
    )
    candidates = extract_hypernym_pairs(index)
    found = {(c.hyponym, c.hypernym, c.method) for c in candidates}
    expected = {(h, hy, f"pattern-{pid}") for h, hy, pid, _ in planted}
    assert found == expected
    for candidate in candidates:
        assert len(candidate.evidence) >= 1


def test_missing_lexicalization_errors():
    with pytest.raises(LexicalizationError):
        load_hypernym_patterns("zz")


def test_malformed_template_rejected():
    with pytest.raises(LexicalizationError):
        compile_pattern(9, "<HYPONYM> [word=is]", 1.0)
    with pytest.raises(LexicalizationError):
        compile_pattern(9, "<HYPONYM> <HYPERNYM>", 1.0)


def test_disabled_patterns_not_used():
    config = load_hypernym_patterns("en")
    index = index_of("a theodolite is known as an instrument")
    candidates = extract_hypernym_pairs(index, config)
    assert all(c.method != "pattern-4" for c in candidates)


# -- suggestion merge ------------------------------------------------------------

def store_with(*terms):
    store = ThesaurusStore(clock=CLOCK)
    ids = {}
    for term in terms:
        ids[term] = store.upsert_entry({"term": term}, editor="t")
    return store, ids


def test_lexsim_candidates_from_store():
    store, _ = store_with("coordinate system", "wholly unrelated")
    out = suggest_hypernyms("cartesian coordinate system", store=store)
    assert [c.hypernym for c in out] == ["coordinate system"]
    assert out[0].method == "lexsim"
    assert out[0].score == pytest.approx(15 / 24)


def test_empty_store_no_corpus():
    store = ThesaurusStore(clock=CLOCK)
    assert suggest_hypernyms("anything", store=store) == []


def test_term_itself_never_suggested():
    store, _ = store_with("coordinate system")
    assert suggest_hypernyms("coordinate system", store=store) == []


def test_pattern_and_lexsim_merge_keeps_max():
    store, _ = store_with("instrument")
    index = index_of("a theodolite is an instrument")
    out = suggest_hypernyms("theodolite", store=store, index=index)
    assert len(out) == 1
    (merged,) = out
    assert merged.hypernym == "instrument"
    # pattern score min-max normalizes to 1.0 (single candidate);
    # lexsim("theodolite", "instrument") is far below, so the pattern wins.
    assert merged.score == 1.0
    assert merged.method == "pattern-1"


def test_rejected_entries_not_suggested():
    store = ThesaurusStore(clock=CLOCK)
    eid = store.upsert_entry({"term": "coordinate system", "status": "candidate"}, editor="t")
    store.review_candidate(eid, "reject", editor="t")
    assert suggest_hypernyms("cartesian coordinate system", store=store) == []
