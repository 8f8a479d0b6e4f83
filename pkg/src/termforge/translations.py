"""Translation candidates from comparable corpora.

Equivalent terms in different languages tend to keep the same company: the
words around a term's occurrences form its collocate profile, and a seed
bilingual lexicon links profiles across languages.  For every source-language
term the target-language terms are ordered by how many source collocates have
a lexicon translation inside the target term's profile.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusIndex
from .errors import EmptyLexiconError
from .tokens import normalize_phrase, profile_for

DEFAULT_WINDOW = 5
DEFAULT_TOP_K = 10


@dataclass
class CollocateProfile:
    """Counted vocabulary words within a window around a term's occurrences."""

    term: str
    language: str
    collocates: dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.collocates)


@dataclass
class BilingualLexicon:
    """Seed dictionary mapping source words to sets of target words.

    The lexicon does not need domain terminology: collocates are mostly core
    vocabulary, which even small dictionaries cover.
    """

    source_language: str
    target_language: str
    entries: dict[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if not self.entries:
            raise EmptyLexiconError(
                f"empty lexicon {self.source_language}->{self.target_language}"
            )

    def translate(self, word: str) -> frozenset:
        return self.entries.get(word.casefold(), frozenset())

    @classmethod
    def from_pairs(cls, source_language, target_language, pairs) -> "BilingualLexicon":
        entries: dict[str, set] = {}
        for src, tgt in pairs:
            entries.setdefault(src.casefold(), set()).add(tgt.casefold())
        return cls(
            source_language=source_language,
            target_language=target_language,
            entries={k: frozenset(v) for k, v in entries.items()},
        )

    @classmethod
    def from_tsv(cls, path: str | Path, source_language, target_language) -> "BilingualLexicon":
        """One tab-separated pair per line; duplicates merge, ``#`` comments."""
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                src, tgt = line.split("\t")[:2]
                pairs.append((src, tgt))
        return cls.from_pairs(source_language, target_language, pairs)


@dataclass(frozen=True)
class TranslationCandidate:
    source_term: str
    target_term: str
    overlap: int
    rank: int  # 1-based position in the candidate list

    def to_record(self) -> dict:
        return {
            "source_term": self.source_term,
            "target_term": self.target_term,
            "overlap": self.overlap,
            "rank": self.rank,
        }


def collocate_profile(
    index: CorpusIndex,
    term: str,
    window: int = DEFAULT_WINDOW,
    vocabulary: frozenset | set | None = None,
    stop_words: frozenset | None = None,
) -> CollocateProfile:
    """Count vocabulary words within ±``window`` tokens of each occurrence.

    Windows stay inside the paragraph.  The term's own words, stop words,
    and punctuation never count.  A term absent from the corpus yields an
    empty profile.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    term = normalize_phrase(term)
    words = term.split()
    if stop_words is None:
        stop_words = profile_for(index.language).stop_words
    own = set(words)
    counts: Counter = Counter()
    for doc_id, offset in index.phrase_positions(words):
        tokens = index.doc_tokens(doc_id)
        pstart, pend = index.paragraph_spans(doc_id)[index.paragraph_index(doc_id, offset)]
        end = offset + len(words)
        neighborhood = range(max(pstart, offset - window), min(pend, end + window))
        for i in neighborhood:
            if offset <= i < end:
                continue
            token = tokens[i]
            if token.tag == "PUNCT":
                continue
            w = token.normalized
            if w in own or w in stop_words:
                continue
            if vocabulary is not None and w not in vocabulary:
                continue
            counts[w] += 1
    return CollocateProfile(term=term, language=index.language, collocates=dict(counts))


def profile_cosine(a: CollocateProfile, b: CollocateProfile) -> float:
    """Cosine similarity of two collocate-count profiles (same language);
    the relatedness measure behind "terms used in similar contexts"."""
    if not a.collocates or not b.collocates:
        return 0.0
    dot = sum(count * b.collocates.get(word, 0) for word, count in a.collocates.items())
    if dot == 0:
        return 0.0
    norm_a = math.sqrt(sum(c * c for c in a.collocates.values()))
    norm_b = math.sqrt(sum(c * c for c in b.collocates.values()))
    return dot / (norm_a * norm_b)


def profile_overlap(
    source_profile: CollocateProfile,
    target_profile: CollocateProfile,
    lexicon: BilingualLexicon,
) -> int:
    """Number of distinct source collocates with a lexicon translation in the
    target profile (a type count, not a token count)."""
    target_words = set(target_profile.collocates)
    overlap = 0
    for word in source_profile.collocates:
        if lexicon.translate(word) & target_words:
            overlap += 1
    return overlap


def translation_candidates(
    source_profile: CollocateProfile,
    target_index: CorpusIndex,
    target_terms,
    lexicon: BilingualLexicon,
    k: int = DEFAULT_TOP_K,
    window: int = DEFAULT_WINDOW,
    target_vocabulary: frozenset | set | None = None,
    stop_words: frozenset | None = None,
    target_profiles: dict | None = None,
) -> list[TranslationCandidate]:
    """Top-``k`` target-language candidates for one source term.

    Candidates are ordered by descending collocate overlap, then descending
    target-term corpus frequency, then alphabetically.  ``target_profiles``
    may carry precomputed profiles keyed by term to avoid rescanning.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not source_profile:
        return []
    scored = []
    for term in target_terms:
        term = normalize_phrase(term)
        if target_profiles is not None and term in target_profiles:
            profile = target_profiles[term]
        else:
            profile = collocate_profile(
                target_index, term, window, target_vocabulary, stop_words
            )
        overlap = profile_overlap(source_profile, profile, lexicon)
        scored.append((overlap, target_index.phrase_count(term), term))
    scored.sort(key=lambda item: (-item[0], -item[1], item[2]))
    return [
        TranslationCandidate(
            source_term=source_profile.term,
            target_term=term,
            overlap=overlap,
            rank=i + 1,
        )
        for i, (overlap, _freq, term) in enumerate(scored[:k])
    ]


def evaluate_translations(gold: dict, candidates: dict, k: int = DEFAULT_TOP_K) -> float:
    """Hit-rate of gold translations among the top-``k`` candidates.

    A source term counts as a hit when any of its accepted translations
    appears (exact match after normalization) in its top-``k`` list.
    ``candidates`` maps source terms to TranslationCandidate lists or plain
    phrase lists.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not gold:
        raise ValueError("empty gold standard")
    hits = 0
    for source_term, accepted in gold.items():
        source_term = normalize_phrase(source_term)
        accepted = {normalize_phrase(t) for t in accepted}
        produced = candidates.get(source_term, [])
        top = []
        for item in produced[:k]:
            top.append(
                normalize_phrase(item.target_term if hasattr(item, "target_term") else item)
            )
        if accepted & set(top):
            hits += 1
    return hits / len(gold)
