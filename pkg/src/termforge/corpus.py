"""Documents, the indexed corpus, concordances, and the vertical file format.

A built :class:`CorpusIndex` is immutable: construction happens in
:func:`build_corpus` (or the loaders) and everything afterwards is read-only,
so indexes are safe to share between threads.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MixedLanguageError, TermforgeError
from .tokens import LanguageProfile, Tagger, Token, profile_for, tokenize

GOOD = "good"
BOILERPLATE = "boilerplate"

INDEX_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Paragraph:
    text: str
    quality: str = GOOD

    def __post_init__(self):
        if self.quality not in (GOOD, BOILERPLATE):
            raise ValueError(f"unknown paragraph quality {self.quality!r}")


@dataclass
class Document:
    """One source text with provenance and quality-labeled paragraphs."""

    id: str
    source: str
    language: str
    paragraphs: list[Paragraph]
    fetched_at: str = ""

    def __post_init__(self):
        if not self.paragraphs:
            raise ValueError(f"document {self.id!r} has no paragraphs")
        self.paragraphs = [
            p if isinstance(p, Paragraph) else Paragraph(*p) for p in self.paragraphs
        ]

    def good_paragraphs(self) -> list[Paragraph]:
        return [p for p in self.paragraphs if p.quality == GOOD]

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "source": self.source,
            "language": self.language,
            "fetched_at": self.fetched_at,
            "paragraphs": [[p.text, p.quality] for p in self.paragraphs],
        }

    @classmethod
    def from_record(cls, record: dict) -> "Document":
        return cls(
            id=record["id"],
            source=record.get("source", ""),
            language=record["language"],
            paragraphs=[Paragraph(t, q) for t, q in record["paragraphs"]],
            fetched_at=record.get("fetched_at", ""),
        )


@dataclass(frozen=True)
class CorpusStats:
    documents: int
    tokens: int
    unique_tokens: int


class CorpusIndex:
    """Tokenized corpus with frequency and positional tables.

    Only good paragraphs are indexed.  Offsets are document-level token
    offsets over the indexed (good) token stream; phrase occurrences never
    cross paragraph boundaries.
    """

    def __init__(self, language: str):
        self.language = language
        self.doc_ids: list[str] = []
        self.doc_meta: dict[str, dict] = {}
        self._tokens: dict[str, list[Token]] = {}
        self._para_spans: dict[str, list[tuple[int, int]]] = {}
        self._para_of: dict[str, list[int]] = {}
        self.unigram_freq: Counter = Counter()
        self._positions: dict[str, list[tuple[str, int]]] = {}
        self.token_count = 0

    # -- construction -----------------------------------------------------

    def _add_document(self, doc: Document, profile: LanguageProfile, tagger: Tagger | None):
        if doc.id in self._tokens:
            raise TermforgeError(f"duplicate document id {doc.id!r}")
        tokens: list[Token] = []
        spans: list[tuple[int, int]] = []
        para_of: list[int] = []
        for para in doc.good_paragraphs():
            start = len(tokens)
            ptoks = tokenize(para.text, profile, tagger)
            if not ptoks:
                continue
            tokens.extend(ptoks)
            spans.append((start, len(tokens)))
            para_of.extend([len(spans) - 1] * len(ptoks))
        self.doc_ids.append(doc.id)
        self.doc_meta[doc.id] = {
            "source": doc.source,
            "fetched_at": doc.fetched_at,
        }
        self._store_tokens(doc.id, tokens, spans, para_of)

    def _store_tokens(self, doc_id, tokens, spans, para_of):
        self._tokens[doc_id] = tokens
        self._para_spans[doc_id] = spans
        self._para_of[doc_id] = para_of
        self.token_count += len(tokens)
        for offset, token in enumerate(tokens):
            self.unigram_freq[token.normalized] += 1
            self._positions.setdefault(token.normalized, []).append((doc_id, offset))

    # -- read API ----------------------------------------------------------

    @property
    def doc_count(self) -> int:
        return len(self.doc_ids)

    def doc_tokens(self, doc_id: str) -> list[Token]:
        return self._tokens[doc_id]

    def paragraph_spans(self, doc_id: str) -> list[tuple[int, int]]:
        return self._para_spans[doc_id]

    def paragraph_index(self, doc_id: str, offset: int) -> int:
        return self._para_of[doc_id][offset]

    def phrase_positions(self, phrase) -> list[tuple[str, int]]:
        """All occurrences of a normalized phrase as (doc id, start offset).

        ``phrase`` is a space-joined string or a sequence of normalized word
        forms.  Multi-word occurrences must lie within one paragraph.
        Results are ordered by (doc id, offset).
        """
        words = phrase.split() if isinstance(phrase, str) else list(phrase)
        if not words:
            return []
        first = self._positions.get(words[0])
        if first is None:
            return []
        if len(words) == 1:
            return sorted(first)
        hits = []
        for doc_id, offset in first:
            tokens = self._tokens[doc_id]
            end = offset + len(words)
            if end > len(tokens):
                continue
            if any(tokens[offset + k].normalized != words[k] for k in range(1, len(words))):
                continue
            para = self._para_of[doc_id]
            if para[offset] != para[end - 1]:
                continue
            hits.append((doc_id, offset))
        return sorted(hits)

    def phrase_count(self, phrase) -> int:
        return len(self.phrase_positions(phrase))

    # -- persistence ---------------------------------------------------------

    def save(self, base: str | Path) -> tuple[Path, Path]:
        """Write ``<base>.vert`` and ``<base>.idx.json``.

        Output is byte-deterministic for identical inputs: no timestamps,
        sorted frequency tables, fixed separators.
        """
        base = Path(base)
        vert_path = Path(str(base) + ".vert")
        idx_path = Path(str(base) + ".idx.json")
        base.parent.mkdir(parents=True, exist_ok=True)
        with open(vert_path, "w", encoding="utf-8") as fh:
            fh.write(self.to_vertical())
        sidecar = {
            "format_version": INDEX_FORMAT_VERSION,
            "language": self.language,
            "doc_count": self.doc_count,
            "token_count": self.token_count,
            "unique_tokens": len(self.unigram_freq),
            "unigram_freq": {w: self.unigram_freq[w] for w in sorted(self.unigram_freq)},
        }
        with open(idx_path, "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh, ensure_ascii=False, indent=1, sort_keys=True)
            fh.write("\n")
        return vert_path, idx_path

    def to_vertical(self) -> str:
        lines = []
        for doc_id in self.doc_ids:
            meta = self.doc_meta[doc_id]
            lines.append(
                '<doc id="%s" source="%s" lang="%s">'
                % (_attr(doc_id), _attr(meta["source"]), _attr(self.language))
            )
            tokens = self._tokens[doc_id]
            for start, end in self._para_spans[doc_id]:
                lines.append("<p>")
                for token in tokens[start:end]:
                    lines.append(f"{token.surface}\t{token.normalized}\t{token.tag}")
            lines.append("</doc>")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def load(cls, base: str | Path) -> "CorpusIndex":
        base = Path(base)
        vert_path = Path(str(base) + ".vert")
        idx_path = Path(str(base) + ".idx.json")
        with open(idx_path, encoding="utf-8") as fh:
            sidecar = json.load(fh)
        if sidecar.get("format_version") != INDEX_FORMAT_VERSION:
            raise TermforgeError(f"unsupported index format in {idx_path}")
        index = cls.from_vertical(Path(vert_path).read_text(encoding="utf-8"))
        if index.token_count != sidecar["token_count"]:
            raise TermforgeError(f"sidecar/vertical token count mismatch for {base}")
        return index

    @classmethod
    def from_vertical(cls, text: str) -> "CorpusIndex":
        index = None
        doc_id = None
        tokens: list[Token] = []
        spans: list[tuple[int, int]] = []
        para_of: list[int] = []
        para_start = None

        def close_para():
            nonlocal para_start
            if para_start is not None and len(tokens) > para_start:
                spans.append((para_start, len(tokens)))
                para_of.extend([len(spans) - 1] * (len(tokens) - para_start))
            para_start = None

        def close_doc():
            nonlocal doc_id, tokens, spans, para_of
            if doc_id is not None:
                close_para()
                index._store_tokens(doc_id, tokens, spans, para_of)
            doc_id, tokens, spans, para_of = None, [], [], []

        for line in text.splitlines():
            if line.startswith("<doc "):
                close_doc()
                attrs = dict(re.findall(r'(\w+)="([^"]*)"', line))
                if index is None:
                    index = cls(attrs.get("lang", "und"))
                doc_id = _unattr(attrs["id"])
                index.doc_ids.append(doc_id)
                index.doc_meta[doc_id] = {
                    "source": _unattr(attrs.get("source", "")),
                    "fetched_at": "",
                }
            elif line == "</doc>":
                close_doc()
            elif line == "<p>":
                close_para()
                para_start = len(tokens)
            elif line:
                surface, normalized, tag = line.split("\t")
                tokens.append(Token(surface, normalized, tag))
        close_doc()
        return index if index is not None else cls("und")


def _attr(value: str) -> str:
    return value.replace("&", "&amp;").replace('"', "&quot;").replace("<", "&lt;")


def _unattr(value: str) -> str:
    return value.replace("&lt;", "<").replace("&quot;", '"').replace("&amp;", "&")


def build_corpus(
    documents: list[Document],
    profile: LanguageProfile | None = None,
    tagger: Tagger | None = None,
) -> CorpusIndex:
    """Index a single-language document collection.

    Good paragraphs are tokenized and indexed; boilerplate paragraphs are
    skipped.  Deterministic for identical input order.
    """
    languages = {doc.language for doc in documents}
    if len(languages) > 1:
        raise MixedLanguageError(f"documents mix languages: {sorted(languages)}")
    language = languages.pop() if languages else (profile.language if profile else "und")
    if profile is None:
        profile = profile_for(language)
    index = CorpusIndex(language)
    for doc in documents:
        index._add_document(doc, profile, tagger)
    return index


@dataclass(frozen=True)
class ConcordanceLine:
    """One keyword-in-context line (token surfaces, no padding)."""

    doc_id: str
    offset: int
    left: tuple[str, ...]
    match: tuple[str, ...]
    right: tuple[str, ...]

    def render(self) -> str:
        return "%s\t%s [%s] %s" % (
            self.doc_id,
            " ".join(self.left),
            " ".join(self.match),
            " ".join(self.right),
        )


def concordance(index: CorpusIndex, phrase, window: int = 5) -> list[ConcordanceLine]:
    """Keyword-in-context lines for every occurrence of ``phrase``.

    Shows up to ``window`` tokens of context on each side (shorter at
    document boundaries), ordered by (doc id, offset).  An unknown phrase
    yields an empty list.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    words = phrase.split() if isinstance(phrase, str) else list(phrase)
    lines = []
    for doc_id, offset in index.phrase_positions(words):
        tokens = index.doc_tokens(doc_id)
        end = offset + len(words)
        left = tokens[max(0, offset - window):offset]
        right = tokens[end:end + window]
        lines.append(
            ConcordanceLine(
                doc_id=doc_id,
                offset=offset,
                left=tuple(t.surface for t in left),
                match=tuple(t.surface for t in tokens[offset:end]),
                right=tuple(t.surface for t in right),
            )
        )
    return lines


def corpus_stats(index: CorpusIndex) -> CorpusStats:
    """Document/token/vocabulary counts of an index."""
    return CorpusStats(
        documents=index.doc_count,
        tokens=index.token_count,
        unique_tokens=len(index.unigram_freq),
    )
