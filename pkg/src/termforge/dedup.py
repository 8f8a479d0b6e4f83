"""Near-duplicate purging over documents and paragraphs.

Documents are compared by Jaccard similarity of hashed token shingles;
paragraphs are afterwards removed when their shingle set is fully contained
in earlier kept text.  The whole procedure iterates to a fixpoint so that
running it twice changes nothing.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .corpus import Document
from .tokens import DEFAULT_TOKEN_PATTERN


@dataclass
class DedupReport:
    docs_in: int = 0
    docs_kept: int = 0
    paragraphs_removed: int = 0
    duplicate_pairs: list = field(default_factory=list)  # (kept id, removed id, sim)

    def to_record(self) -> dict:
        return {
            "docs_in": self.docs_in,
            "docs_kept": self.docs_kept,
            "paragraphs_removed": self.paragraphs_removed,
            "duplicate_pairs": [list(p) for p in self.duplicate_pairs],
        }


def _words(text: str) -> list[str]:
    return [m.group(0).casefold() for m in DEFAULT_TOKEN_PATTERN.finditer(text)]


def shingle_set(words: list[str], shingle_len: int) -> frozenset:
    """64-bit hashes of all ``shingle_len``-token windows (stable across runs)."""
    out = set()
    for i in range(len(words) - shingle_len + 1):
        joined = "\x1f".join(words[i:i + shingle_len])
        digest = hashlib.blake2b(joined.encode("utf-8"), digest_size=8).digest()
        out.add(int.from_bytes(digest, "big"))
    return frozenset(out)


def _doc_text_key(doc: Document) -> str:
    return "\x1e".join(p.text for p in doc.paragraphs)


def jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    inter = len(a & b)
    return inter / (len(a) + len(b) - inter)


def dedup(
    documents: list[Document],
    shingle_len: int = 5,
    threshold: float = 0.9,
) -> tuple[list[Document], DedupReport]:
    """Remove duplicate documents, then duplicated paragraphs.

    The first occurrence (by input order) is always the one kept.  Exact
    text duplicates are removed at any threshold; near-duplicates when their
    shingle-set Jaccard similarity reaches ``threshold``.  Input documents
    are never mutated; survivors are rebuilt with their surviving paragraphs.
    """
    if shingle_len < 1:
        raise ValueError("shingle_len must be >= 1")
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")

    report = DedupReport(docs_in=len(documents))
    current = list(documents)
    while True:
        survivors, changed = _dedup_pass(current, shingle_len, threshold, report)
        if not changed:
            break
        current = survivors
    report.docs_kept = len(current)
    return current, report


def _dedup_pass(documents, shingle_len, threshold, report) -> tuple[list, bool]:
    changed = False

    # Document pass: exact text duplicates first, then shingle Jaccard
    # against every kept document (candidates narrowed via a shingle index).
    kept: list[Document] = []
    kept_shingles: list[frozenset] = []
    seen_text: dict[str, str] = {}
    by_shingle: dict[int, set[int]] = {}
    for doc in documents:
        key = _doc_text_key(doc)
        if key in seen_text:
            report.duplicate_pairs.append((seen_text[key], doc.id, 1.0))
            changed = True
            continue
        shingles = frozenset().union(
            *(shingle_set(_words(p.text), shingle_len) for p in doc.paragraphs)
        ) if doc.paragraphs else frozenset()
        candidates = set()
        for sh in shingles:
            candidates.update(by_shingle.get(sh, ()))
        best_idx, best_sim = None, 0.0
        for idx in candidates:
            sim = jaccard(shingles, kept_shingles[idx])
            if sim > best_sim:
                best_idx, best_sim = idx, sim
        if best_idx is not None and best_sim >= threshold:
            report.duplicate_pairs.append((kept[best_idx].id, doc.id, round(best_sim, 6)))
            changed = True
            continue
        idx = len(kept)
        kept.append(doc)
        kept_shingles.append(shingles)
        seen_text[key] = doc.id
        for sh in shingles:
            by_shingle.setdefault(sh, set()).add(idx)

    # Paragraph pass: drop paragraphs whose shingles are fully contained in
    # earlier kept text; paragraphs too short to shingle are always kept.
    registry: set = set()
    survivors: list[Document] = []
    for doc in kept:
        remaining = []
        for para in doc.paragraphs:
            shingles = shingle_set(_words(para.text), shingle_len)
            if shingles and shingles <= registry:
                report.paragraphs_removed += 1
                changed = True
                continue
            registry.update(shingles)
            remaining.append(para)
        if not remaining:
            # Every paragraph was contained in earlier text: the document
            # carries nothing new and is dropped outright.
            changed = True
            continue
        if len(remaining) == len(doc.paragraphs):
            survivors.append(doc)
        else:
            survivors.append(
                Document(
                    id=doc.id,
                    source=doc.source,
                    language=doc.language,
                    paragraphs=remaining,
                    fetched_at=doc.fetched_at,
                )
            )
    return survivors, changed
