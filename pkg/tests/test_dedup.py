"""Document and paragraph deduplication."""

import random

import pytest

from termforge.corpus import Document, Paragraph
from termforge.dedup import dedup, jaccard, shingle_set

from synth import make_dedup_fixture


def doc(doc_id, *paragraphs):
    return Document(
        id=doc_id,
        source="test",
        language="xx",
        paragraphs=[Paragraph(p) for p in paragraphs],
    )


def test_exact_duplicate_removed():
    a = doc("a", "one two three four five six")
    b = doc("b", "one two three four five six")
    kept, report = dedup([a, b])
    assert [d.id for d in kept] == ["a"]
    assert report.duplicate_pairs == [("a", "b", 1.0)]
    assert report.docs_in == 2 and report.docs_kept == 1


def test_disjoint_documents_kept():
    a = doc("a", "one two three four five six")
    b = doc("b", "seven eight nine ten eleven twelve")
    kept, report = dedup([a, b])
    assert [d.id for d in kept] == ["a", "b"]
    assert report.duplicate_pairs == []


def test_first_occurrence_kept():
    a = doc("a", "one two three four five six")
    b = doc("b", "one two three four five six")
    kept, _ = dedup([b, a])
    assert [d.id for d in kept] == ["b"]


def test_appended_paragraph_fixture():
    """B = A plus one new paragraph: B survives the document pass (Jaccard
    below 0.9 by construction) and loses exactly its duplicated paragraphs."""
    p1 = "alpha beta gamma delta epsilon zeta eta theta"   # 4 shingles
    p2 = "iota kappa lamda mu nu xi omicron pi"            # 4 shingles
    new = "rho sigma tau upsilon phi chi psi omega"        # 4 shingles
    a = doc("a", p1, p2)
    b = doc("b", p1, p2, new)
    # Hand-check: shingles(A) = 8, shingles(B) = 12, intersection 8:
    # Jaccard = 8/12 = 0.667 < 0.9.
    sa = frozenset().union(*(shingle_set(p.split(), 5) for p in (p1, p2)))
    sb = frozenset().union(*(shingle_set(p.split(), 5) for p in (p1, p2, new)))
    assert len(sa) == 8 and len(sb) == 12
    assert jaccard(sa, sb) == pytest.approx(8 / 12)

    kept, report = dedup([a, b], shingle_len=5, threshold=0.9)
    assert [d.id for d in kept] == ["a", "b"]
    b_kept = kept[1]
    assert [p.text for p in b_kept.paragraphs] == [new]
    assert report.paragraphs_removed == 2
    assert report.duplicate_pairs == []


def test_short_paragraphs_never_contained():
    a = doc("a", "tiny one")
    b = doc("b", "tiny one", "different words here maybe")
    kept, report = dedup([a, b], shingle_len=5)
    # "tiny one" yields no 5-shingles, so it is not treated as contained.
    assert [p.text for p in kept[1].paragraphs] == ["tiny one", "different words here maybe"]
    assert report.paragraphs_removed == 0


def test_empty_input():
    kept, report = dedup([])
    assert kept == []
    assert report.docs_in == 0 and report.docs_kept == 0


def test_validates_parameters():
    with pytest.raises(ValueError):
        dedup([], shingle_len=0)
    with pytest.raises(ValueError):
        dedup([], threshold=0.0)
    with pytest.raises(ValueError):
        dedup([], threshold=1.5)


def _signature(docs):
    return [(d.id, tuple(p.text for p in d.paragraphs)) for d in docs]


def test_idempotence_on_fixture():
    rng = random.Random(42)
    documents, _, _ = make_dedup_fixture(rng, n_base=60, n_exact=25, n_near=15)
    once, _ = dedup(documents)
    twice, report2 = dedup(once)
    assert _signature(once) == _signature(twice)
    assert report2.duplicate_pairs == [] and report2.paragraphs_removed == 0


def test_exact_recall_at_any_threshold():
    rng = random.Random(43)
    documents, exact_ids, _ = make_dedup_fixture(rng, n_base=40, n_exact=20, n_near=0)
    for threshold in (0.5, 0.9, 1.0):
        kept, _ = dedup(documents, threshold=threshold)
        kept_ids = {d.id for d in kept}
        assert not kept_ids & set(exact_ids)


def test_permutation_keeps_shingle_coverage():
    rng = random.Random(44)
    documents, _, _ = make_dedup_fixture(rng, n_base=30, n_exact=10, n_near=5)

    def coverage(docs):
        out = set()
        for d in docs:
            for p in d.paragraphs:
                out |= shingle_set(p.text.split(), 5)
        return out

    kept_a, _ = dedup(documents)
    shuffled = list(documents)
    rng.shuffle(shuffled)
    kept_b, _ = dedup(shuffled)
    assert coverage(kept_a) == coverage(kept_b)
