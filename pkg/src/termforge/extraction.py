"""Candidate term extraction and relevance ranking.

Phrases matching the term grammar are counted, then ranked against a
reference corpus by the smoothed relative-frequency ratio
``(f + n) / (f_ref + n)`` with both frequencies expressed per million
tokens.  The smoothing constant ``n`` (default 1) trades frequency
preference against rarity: large values favor frequent phrases.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import CorpusIndex
from .grammar import TermGrammar, rule_spans

PER_MILLION = 1_000_000.0


@dataclass(frozen=True)
class TermCandidate:
    """A ranked phrase: absolute and per-million frequencies plus score."""

    phrase: str
    raw_count: int
    f: float
    f_ref: float
    rank: float


def extract_spans(index: CorpusIndex, grammar: TermGrammar) -> dict[str, list]:
    """Matched spans per document: leftmost-longest, non-overlapping per
    rule, never crossing paragraph boundaries.  Identical spans found by
    several rules are merged."""
    by_doc: dict[str, list] = {}
    for doc_id in index.doc_ids:
        tokens = index.doc_tokens(doc_id)
        spans = set()
        for start, end in index.paragraph_spans(doc_id):
            for rule in grammar.rules:
                spans.update(rule_spans(rule, tokens, start, end))
        by_doc[doc_id] = sorted(spans)
    return by_doc


def extract_candidates(index: CorpusIndex, grammar: TermGrammar) -> dict[str, int]:
    """Absolute occurrence counts of every phrase matched by the grammar."""
    counts: Counter = Counter()
    for doc_id, spans in extract_spans(index, grammar).items():
        tokens = index.doc_tokens(doc_id)
        for start, end in spans:
            phrase = " ".join(t.normalized for t in tokens[start:end])
            counts[phrase] += 1
    return dict(counts)


def relative_frequency(count: int, corpus_size: int) -> float:
    return count / corpus_size * PER_MILLION


def term_rank(f: float, f_ref: float, n: float = 1.0) -> float:
    """Smoothed relative-frequency ratio; ``n`` must be positive."""
    if n <= 0:
        raise ValueError("smoothing constant n must be > 0")
    return (f + n) / (f_ref + n)


def rank_terms(
    domain_counts: dict[str, int],
    domain_size: int,
    reference_counts: dict[str, int],
    reference_size: int,
    n: float = 1.0,
    min_count: int = 1,
) -> list[TermCandidate]:
    """Rank domain phrases against the reference corpus.

    Frequencies are converted to per-million before scoring; phrases absent
    from the reference get ``f_ref = 0`` (the formula is smoothed by ``n``).
    Output is ordered by descending rank, ties broken by descending raw
    count and then phrase order; ``min_count`` prunes rare phrases.
    """
    if domain_size <= 0 or reference_size <= 0:
        raise ValueError("corpus sizes must be > 0")
    if n <= 0:
        raise ValueError("smoothing constant n must be > 0")
    candidates = []
    for phrase, raw_count in domain_counts.items():
        if raw_count < min_count:
            continue
        f = relative_frequency(raw_count, domain_size)
        f_ref = relative_frequency(reference_counts.get(phrase, 0), reference_size)
        candidates.append(
            TermCandidate(
                phrase=phrase,
                raw_count=raw_count,
                f=f,
                f_ref=f_ref,
                rank=term_rank(f, f_ref, n),
            )
        )
    candidates.sort(key=lambda c: (-c.rank, -c.raw_count, c.phrase))
    return candidates


def write_ranked_tsv(candidates: list[TermCandidate], path) -> None:
    """Ranked candidates as TSV: phrase, raw_count, f, f_ref, rank."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("phrase\traw_count\tf\tf_ref\trank\n")
        for c in candidates:
            fh.write(f"{c.phrase}\t{c.raw_count}\t{c.f:.6f}\t{c.f_ref:.6f}\t{c.rank:.6f}\n")


def read_ranked_tsv(path) -> list[TermCandidate]:
    candidates = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("phrase\t"):
            raise ValueError(f"not a ranked-candidates file: {path}")
        for line in fh:
            phrase, raw_count, f, f_ref, rank = line.rstrip("\n").split("\t")
            candidates.append(
                TermCandidate(phrase, int(raw_count), float(f), float(f_ref), float(rank))
            )
    return candidates
