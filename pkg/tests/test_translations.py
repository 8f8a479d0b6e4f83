"""Collocate profiles, translation candidate ranking, evaluation."""

import random

import pytest

from termforge.corpus import build_corpus
from termforge.errors import EmptyLexiconError
from termforge.tokens import profile_for
from termforge.translations import (
    BilingualLexicon,
    collocate_profile,
    evaluate_translations,
    profile_cosine,
    translation_candidates,
)

from synth import make_comparable_corpora, paragraphs_to_documents


def index_of(*paragraphs, language="xx"):
    docs = paragraphs_to_documents(list(paragraphs), language, per_doc=2)
    return build_corpus(docs, profile_for(language))


def lexicon(*pairs):
    return BilingualLexicon.from_pairs("xx", "yy", pairs)


def test_absent_term_empty_profile():
    index = index_of("some words here")
    profile = collocate_profile(index, "missing")
    assert profile.collocates == {}
    assert not profile


def test_single_neighbor_counted():
    index = index_of("neighbor target")
    profile = collocate_profile(index, "target", window=5)
    assert profile.collocates == {"neighbor": 1}


def test_own_words_and_punctuation_excluded():
    index = index_of("alpha target beta , target alpha")
    profile = collocate_profile(index, "target", window=5)
    assert "target" not in profile.collocates
    assert "," not in profile.collocates
    # Both occurrences see both alphas; each sees the single beta.
    assert profile.collocates["alpha"] == 4
    assert profile.collocates["beta"] == 2


def test_vocabulary_restriction():
    index = index_of("alpha target beta")
    profile = collocate_profile(index, "target", vocabulary={"alpha"})
    assert profile.collocates == {"alpha": 1}


def test_window_bounded_by_paragraph():
    docs = paragraphs_to_documents(["one two", "target", "three four"], "xx", per_doc=3)
    index = build_corpus(docs, profile_for("xx"))
    profile = collocate_profile(index, "target", window=5)
    assert profile.collocates == {}


def test_stop_words_excluded():
    index = index_of("the target instrument", language="en")
    profile = collocate_profile(index, "target", window=5)
    assert profile.collocates == {"instrument": 1}


def test_profile_equals_brute_force_scan():
    rng = random.Random(3)
    vocab = [f"w{i}" for i in range(12)]
    paragraphs = [
        " ".join(rng.choice(vocab) for _ in range(rng.randint(4, 14)))
        for _ in range(25)
    ]
    index = index_of(*paragraphs)
    window = 4
    term = "w3"
    profile = collocate_profile(index, term, window=window)

    expected: dict = {}
    for paragraph in paragraphs:
        words = paragraph.split()
        for i, w in enumerate(words):
            if w != term:
                continue
            for j in range(max(0, i - window), min(len(words), i + 1 + window)):
                if j == i or words[j] == term:
                    continue
                expected[words[j]] = expected.get(words[j], 0) + 1
    assert profile.collocates == expected


def test_window_validation():
    index = index_of("a b")
    with pytest.raises(ValueError):
        collocate_profile(index, "a", window=0)


def test_lexicon_from_tsv(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("# comment\nvoda\twater\nvoda\twaters\nmapa\tmap\n", encoding="utf-8")
    lex = BilingualLexicon.from_tsv(path, "cs", "en")
    assert lex.translate("Voda") == {"water", "waters"}
    assert lex.translate("unknown") == frozenset()


def test_empty_lexicon_rejected():
    with pytest.raises(EmptyLexiconError):
        BilingualLexicon("cs", "en", {})


def test_empty_source_profile_no_candidates():
    src = index_of("whatever text")
    tgt = index_of("target words")
    profile = collocate_profile(src, "missing")
    out = translation_candidates(profile, tgt, ["target"], lexicon(("a", "b")))
    assert out == []


def test_planted_overlap_three():
    src = index_of("a1 a2 source a3 .")
    tgt = index_of("b1 b2 translated b3 .", "x1 decoy x2 .")
    profile = collocate_profile(src, "source", window=5)
    lex = lexicon(("a1", "b1"), ("a2", "b2"), ("a3", "b3"))
    out = translation_candidates(profile, tgt, ["translated", "decoy"], lex)
    assert out[0].target_term == "translated"
    assert out[0].overlap == 3
    assert out[0].rank == 1
    assert out[1].overlap == 0


def test_overlap_is_type_count():
    # One source collocate with many translations counts once.
    src = index_of("a1 source a1 a1 .")
    tgt = index_of("b1 translated b2 .")
    profile = collocate_profile(src, "source", window=5)
    lex = lexicon(("a1", "b1"), ("a1", "b2"))
    out = translation_candidates(profile, tgt, ["translated"], lex)
    assert out[0].overlap == 1


def test_lexicon_monotonicity():
    rng = random.Random(9)
    data = make_comparable_corpora(rng, n_terms=5, n_distractors=2)
    src = index_of(*data["source_paragraphs"])
    tgt = index_of(*data["target_paragraphs"])
    term = data["source_terms"][0]
    profile = collocate_profile(src, term, vocabulary=data["source_vocabulary"])

    small = BilingualLexicon.from_pairs("xx", "yy", data["lexicon_pairs"][:3])
    big = BilingualLexicon.from_pairs("xx", "yy", data["lexicon_pairs"])
    kwargs = dict(k=10, target_vocabulary=data["target_vocabulary"])
    out_small = translation_candidates(profile, tgt, data["target_terms"], small, **kwargs)
    out_big = translation_candidates(profile, tgt, data["target_terms"], big, **kwargs)
    small_by_term = {c.target_term: c.overlap for c in out_small}
    for candidate in out_big:
        if candidate.target_term in small_by_term:
            assert candidate.overlap >= small_by_term[candidate.target_term]


def test_truncation_to_k():
    src = index_of("a1 source a2 .")
    tgt = index_of(" ".join(f"t{i}" for i in range(30)))
    profile = collocate_profile(src, "source", window=5)
    out = translation_candidates(
        profile, tgt, [f"t{i}" for i in range(30)], lexicon(("a1", "zzz")), k=10
    )
    assert len(out) == 10
    assert [c.rank for c in out] == list(range(1, 11))


def test_evaluate_translations():
    candidates = {
        "alpha": ["right", "noise"],
        "beta": ["noise", "also-noise"],
    }
    gold = {"alpha": {"right"}, "beta": {"missing"}}
    assert evaluate_translations(gold, candidates, k=2) == 0.5
    assert evaluate_translations({"alpha": {"right"}}, candidates, k=1) == 1.0
    assert evaluate_translations({"beta": {"missing"}}, candidates, k=2) == 0.0


def test_evaluate_empty_gold_rejected():
    with pytest.raises(ValueError):
        evaluate_translations({}, {}, k=5)


def test_profile_cosine():
    src = index_of("x a y", "x b y", "z c w")
    pa = collocate_profile(src, "a", window=1)
    pb = collocate_profile(src, "b", window=1)
    pc = collocate_profile(src, "c", window=1)
    assert profile_cosine(pa, pb) == pytest.approx(1.0)
    assert profile_cosine(pa, pc) == 0.0
    assert profile_cosine(pa, pb) == profile_cosine(pb, pa)
