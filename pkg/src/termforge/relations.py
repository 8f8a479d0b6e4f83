"""Hypernym (broader-term) candidate mining.

Two independent sources feed the suggestions: corpus patterns ("X is a Y",
"X and other Y", "X is a kind of Y") scored with logDice, and lexical
similarity between the term and existing thesaurus entries.  Both produce
candidates only; accepting one is an editorial decision taken elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import yaml

from .corpus import CorpusIndex
from .errors import LexicalizationError
from .grammar import Rule, TermGrammar, all_spans, load_grammar, parse_atom
from .tokens import normalize_phrase

LEXSIM_METHOD = "lexsim"
DEFAULT_LEXSIM_THRESHOLD = 0.5

HYPONYM_SLOT = "<HYPONYM>"
HYPERNYM_SLOT = "<HYPERNYM>"


def logdice(f1: int, f2: int, f12: int) -> float:
    """Collocation strength log2(2*f12 / (f1 + f2)).

    Always <= 0, with equality only when f1 = f2 = f12; scale-free (scaling
    all counts by a constant does not change it).  ``f12 = 0`` yields the
    negative-infinity sentinel, which orders below every finite score.
    """
    if not (f1 >= f12 >= 0 and f2 >= f12):
        raise ValueError(f"inconsistent counts f1={f1}, f2={f2}, f12={f12}")
    if f1 + f2 <= 0:
        raise ValueError("f1 + f2 must be positive")
    if f12 == 0:
        return float("-inf")
    return math.log2(2.0 * f12 / (f1 + f2))


def character_bigrams(phrase: str) -> frozenset:
    normalized = normalize_phrase(phrase)
    return frozenset(normalized[i:i + 2] for i in range(len(normalized) - 1))


def lexsim(t1: str, t2: str) -> float:
    """Jaccard similarity of character-bigram sets of the two phrases.

    Bigrams are taken over the whole normalized phrase, spaces included, so
    similarity sees across word boundaries.  Phrases shorter than two
    characters have no bigrams: they score 1.0 against an equal string and
    0.0 otherwise.
    """
    a, b = normalize_phrase(t1), normalize_phrase(t2)
    if len(a) < 2 or len(b) < 2:
        return 1.0 if a == b else 0.0
    ba, bb = character_bigrams(a), character_bigrams(b)
    inter = len(ba & bb)
    return inter / (len(ba) + len(bb) - inter)


@dataclass(frozen=True)
class RelationCandidate:
    """A scored hypernym suggestion awaiting editorial approval."""

    hyponym: str
    hypernym: str
    method: str  # pattern-<id> | lexsim
    score: float
    evidence: tuple = ()  # (doc id, token offset) pairs for pattern methods

    def to_record(self) -> dict:
        return {
            "hyponym": self.hyponym,
            "hypernym": self.hypernym,
            "method": self.method,
            "score": self.score,
            "evidence": [list(e) for e in self.evidence],
        }


@dataclass(frozen=True)
class HypernymPattern:
    """A two-slot template around a language-specific connective."""

    id: int
    weight: float
    template: str
    connective: Rule
    hyponym_first: bool = True
    enabled: bool = True

    @property
    def method(self) -> str:
        return f"pattern-{self.id}"


@dataclass(frozen=True)
class PatternConfig:
    language: str
    articles: frozenset
    patterns: tuple

    def enabled_patterns(self) -> list:
        return [p for p in self.patterns if p.enabled]


def compile_pattern(
    id: int, template: str, weight: float, enabled: bool = True
) -> HypernymPattern:
    """Compile a template like ``<HYPONYM> [word=is|are] <HYPERNYM>``.

    The two slots must sit at the template ends with at least one connective
    atom between them.
    """
    parts = template.split()
    if len(parts) < 3:
        raise LexicalizationError(f"pattern {id}: template too short: {template!r}")
    first, last = parts[0], parts[-1]
    slots = {HYPONYM_SLOT, HYPERNYM_SLOT}
    if {first, last} != slots:
        raise LexicalizationError(
            f"pattern {id}: template must start and end with the two slots"
        )
    middle = parts[1:-1]
    if any(p in slots for p in middle):
        raise LexicalizationError(f"pattern {id}: slots may appear only once")
    atoms = tuple(parse_atom(p) for p in middle)
    return HypernymPattern(
        id=id,
        weight=weight,
        template=template,
        connective=Rule(source=" ".join(middle), atoms=atoms),
        hyponym_first=(first == HYPONYM_SLOT),
        enabled=enabled,
    )


def load_hypernym_patterns(language: str, path: str | None = None) -> PatternConfig:
    """Pattern lexicalization for ``language`` from a YAML config.

    Raises :class:`LexicalizationError` when no lexicalization exists or a
    pattern entry is incomplete.
    """
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    else:
        ref = resources.files("termforge.data").joinpath(f"hypernym_patterns.{language}.yaml")
        try:
            data = yaml.safe_load(ref.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise LexicalizationError(
                f"no hypernym pattern lexicalization for language {language!r}"
            ) from None
    patterns = []
    for item in data.get("patterns", []):
        if "template" not in item:
            raise LexicalizationError(
                f"pattern {item.get('id', '?')} has no template for language {language!r}"
            )
        patterns.append(
            compile_pattern(
                id=int(item["id"]),
                template=item["template"],
                weight=float(item.get("weight", 1.0)),
                enabled=bool(item.get("enabled", True)),
            )
        )
    if not patterns:
        raise LexicalizationError(f"empty pattern lexicalization for {language!r}")
    return PatternConfig(
        language=data.get("language", language),
        articles=frozenset(str(a).casefold() for a in data.get("articles", [])),
        patterns=tuple(patterns),
    )


def _paragraphs_containing(index: CorpusIndex, phrase: str) -> set:
    return {
        (doc_id, index.paragraph_index(doc_id, offset))
        for doc_id, offset in index.phrase_positions(phrase)
    }


def extract_hypernym_pairs(
    index: CorpusIndex,
    patterns: PatternConfig | None = None,
    grammar: TermGrammar | None = None,
) -> list[RelationCandidate]:
    """Scan the corpus for hypernym pattern matches and score the pairs.

    Noun-phrase slots reuse the term grammar.  When several patterns'
    connectives match at the same position, the longest connective wins, so
    "is a kind of" is never misread as the bare copula pattern.  Each
    (hyponym, hypernym, pattern) triple becomes one candidate carrying all
    its evidence positions; the score is ``weight * logdice(f1, f2, f12)``
    with f12 counted over shared paragraphs.
    """
    if patterns is None:
        patterns = load_hypernym_patterns(index.language)
    if grammar is None:
        grammar = load_grammar()
    active = patterns.enabled_patterns()
    if not active:
        return []

    matches: dict[tuple, list] = {}
    for doc_id in index.doc_ids:
        tokens = index.doc_tokens(doc_id)
        for pstart, pend in index.paragraph_spans(doc_id):
            spans = all_spans(grammar, tokens, pstart, pend)
            longest_ending_at: dict[int, int] = {}
            longest_starting_at: dict[int, int] = {}
            for s, e in spans:
                if e not in longest_ending_at or s < longest_ending_at[e]:
                    longest_ending_at[e] = s
                if s not in longest_starting_at or e > longest_starting_at[s]:
                    longest_starting_at[s] = e
            for pos in range(pstart, pend):
                attempts = []
                for pattern in active:
                    lengths = pattern.connective.match_lengths(tokens, pos, pend)
                    if lengths:
                        attempts.append((lengths[-1], pattern))
                attempts.sort(key=lambda a: (-a[0], a[1].id))
                for conn_len, pattern in attempts:
                    left_start = longest_ending_at.get(pos)
                    right_pos = pos + conn_len
                    while right_pos < pend and tokens[right_pos].normalized in patterns.articles:
                        right_pos += 1
                    right_end = longest_starting_at.get(right_pos)
                    if left_start is None or right_end is None:
                        continue
                    left = " ".join(t.normalized for t in tokens[left_start:pos])
                    right = " ".join(t.normalized for t in tokens[right_pos:right_end])
                    if pattern.hyponym_first:
                        hypo, hyper, anchor = left, right, left_start
                    else:
                        hypo, hyper, anchor = right, left, left_start
                    matches.setdefault((hypo, hyper, pattern.id), []).append(
                        (doc_id, anchor)
                    )
                    break  # position claimed by the longest matching pattern

    weight_by_id = {p.id: p.weight for p in active}
    candidates = []
    para_cache: dict[str, set] = {}

    def paragraphs(phrase: str) -> set:
        if phrase not in para_cache:
            para_cache[phrase] = _paragraphs_containing(index, phrase)
        return para_cache[phrase]

    for (hypo, hyper, pattern_id), evidence in matches.items():
        f1 = index.phrase_count(hypo)
        f2 = index.phrase_count(hyper)
        f12 = len(paragraphs(hypo) & paragraphs(hyper))
        score = weight_by_id[pattern_id] * logdice(f1, f2, f12)
        candidates.append(
            RelationCandidate(
                hyponym=hypo,
                hypernym=hyper,
                method=f"pattern-{pattern_id}",
                score=score,
                evidence=tuple(sorted(evidence)),
            )
        )
    candidates.sort(key=lambda c: (-c.score, c.hyponym, c.hypernym, c.method))
    return candidates


def _minmax_normalize(candidates: list) -> list:
    """Map pattern scores onto [0, 1] per query so they are comparable with
    lexsim values; -inf pins to 0, a degenerate range pins to 1."""
    finite = [c.score for c in candidates if math.isfinite(c.score)]
    lo = min(finite) if finite else 0.0
    hi = max(finite) if finite else 0.0
    out = []
    for c in candidates:
        if not math.isfinite(c.score):
            norm = 0.0
        elif hi == lo:
            norm = 1.0
        else:
            norm = (c.score - lo) / (hi - lo)
        out.append(
            RelationCandidate(c.hyponym, c.hypernym, c.method, norm, c.evidence)
        )
    return out


def suggest_hypernyms(
    term: str,
    store=None,
    index: CorpusIndex | None = None,
    patterns: PatternConfig | None = None,
    grammar: TermGrammar | None = None,
    pattern_candidates: list | None = None,
    lexsim_threshold: float = DEFAULT_LEXSIM_THRESHOLD,
) -> list[RelationCandidate]:
    """Merged, ranked hypernym candidates for one term.

    Combines corpus pattern matches (term as hyponym) with lexically similar
    thesaurus terms; deduplicates by hypernym phrase keeping the highest
    normalized score.  ``pattern_candidates`` short-circuits the corpus scan
    with a precomputed list.  Returns suggestions only: nothing is written
    anywhere.
    """
    query = normalize_phrase(term)
    merged: dict[str, RelationCandidate] = {}

    if pattern_candidates is None and index is not None:
        pattern_candidates = extract_hypernym_pairs(index, patterns, grammar)
    mine = [c for c in (pattern_candidates or []) if c.hyponym == query]
    for cand in _minmax_normalize(mine):
        if cand.hypernym == query:
            continue
        best = merged.get(cand.hypernym)
        if best is None or cand.score > best.score:
            merged[cand.hypernym] = cand

    if store is not None:
        for entry in store.iter_entries():
            if entry.status == "rejected":
                continue
            other = normalize_phrase(entry.term)
            if other == query:
                continue
            sim = lexsim(query, other)
            if sim < lexsim_threshold:
                continue
            cand = RelationCandidate(
                hyponym=query,
                hypernym=other,
                method=LEXSIM_METHOD,
                score=sim,
                evidence=(),
            )
            best = merged.get(other)
            if best is None or cand.score > best.score:
                merged[other] = cand

    out = sorted(merged.values(), key=lambda c: (-c.score, c.hypernym))
    return out
