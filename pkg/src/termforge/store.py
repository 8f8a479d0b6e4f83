"""Multilingual thesaurus storage: entries, relations, imports, revisions.

The store is a document collection addressed by entry id with a secondary
index on the normalized term.  It maintains the broader/narrower inversion
and acyclicity invariants on every mutation, appends exactly one revision
per change, and follows a single-writer/many-readers locking discipline.
"""

from __future__ import annotations

import csv
import io
import json
import re
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .errors import (
    ConflictError,
    CycleError,
    ReviewStateError,
    StoreError,
    UnknownEntryError,
)
from .relations import lexsim
from .tokens import fold_diacritics, normalize_phrase

STATUS_CANDIDATE = "candidate"
STATUS_APPROVED = "approved"
STATUS_REJECTED = "rejected"
STATUSES = (STATUS_CANDIDATE, STATUS_APPROVED, STATUS_REJECTED)

# Source reliability tiers: 1 committee-authorized, 2 scientific usage,
# 3 public submission.
RELIABILITY_RANGE = (1, 2, 3)

CANDIDATE_ROOT_ID = "candidates"
CANDIDATE_ROOT_TERM = "candidate terms"

DEFAULT_PIVOT_LANGUAGE = "cs"
DEFAULT_TRANSLATION_LANGUAGES = ("en", "de", "fr", "ru", "sk")

CLOSE_TERM_THRESHOLD = 0.8

DUMP_FORMAT_VERSION = 1


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Revision:
    timestamp: str
    editor: str
    summary: str

    def to_record(self):
        return {"timestamp": self.timestamp, "editor": self.editor, "summary": self.summary}


@dataclass
class Explanation:
    text: str
    category: str = ""

    def to_record(self):
        return {"text": self.text, "category": self.category}


@dataclass
class ThesaurusEntry:
    """One term with its explanations, translations, relations, provenance."""

    id: str
    term: str
    variants: list = field(default_factory=list)
    explanations: list = field(default_factory=list)
    translations: dict = field(default_factory=dict)
    broader: list = field(default_factory=list)
    narrower: list = field(default_factory=list)  # derived inverse, never set directly
    status: str = STATUS_APPROVED
    source: str = ""
    reliability: int = 3
    revisions: list = field(default_factory=list)

    @property
    def normalized_term(self) -> str:
        return normalize_phrase(self.term)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "term": self.term,
            "variants": list(self.variants),
            "explanations": [e.to_record() for e in self.explanations],
            "translations": {k: list(v) for k, v in sorted(self.translations.items())},
            "broader": list(self.broader),
            "narrower": list(self.narrower),
            "status": self.status,
            "source": self.source,
            "reliability": self.reliability,
            "revisions": [r.to_record() for r in self.revisions],
        }

    @classmethod
    def from_record(cls, record: dict) -> "ThesaurusEntry":
        return cls(
            id=record["id"],
            term=record["term"],
            variants=list(record.get("variants", [])),
            explanations=[
                Explanation(e["text"], e.get("category", ""))
                for e in record.get("explanations", [])
            ],
            translations={k: list(v) for k, v in record.get("translations", {}).items()},
            broader=list(record.get("broader", [])),
            narrower=list(record.get("narrower", [])),
            status=record.get("status", STATUS_APPROVED),
            source=record.get("source", ""),
            reliability=int(record.get("reliability", 3)),
            revisions=[
                Revision(r["timestamp"], r["editor"], r["summary"])
                for r in record.get("revisions", [])
            ],
        )


@dataclass
class ImportMapping:
    """How to read an external dataset into entries.

    ``fields`` maps entry fields to column positions (0-based ints for
    csv/tsv) or to field labels (structured text).  Supported field keys:
    term, variants, explanation, explanation_category, broader,
    source, reliability, status, and ``translation.<lang>``.
    """

    format: str = "tsv"  # csv | tsv | text
    fields: dict = field(default_factory=lambda: {"term": 0})
    abbreviations: dict = field(default_factory=dict)
    has_header: bool = False
    default_status: str = STATUS_APPROVED
    default_source: str = "import"
    default_reliability: int = 2

    def __post_init__(self):
        if self.format not in ("csv", "tsv", "text"):
            raise ValueError(f"unsupported import format {self.format!r}")
        if "term" not in self.fields:
            raise ValueError("import mapping must cover the term field")

    @classmethod
    def from_dict(cls, data: dict) -> "ImportMapping":
        return cls(
            format=data.get("format", "tsv"),
            fields=dict(data.get("fields", {"term": 0})),
            abbreviations=dict(data.get("abbreviations", {})),
            has_header=bool(data.get("has_header", False)),
            default_status=data.get("default_status", STATUS_APPROVED),
            default_source=data.get("default_source", "import"),
            default_reliability=int(data.get("default_reliability", 2)),
        )


@dataclass
class ImportReport:
    created: int = 0
    merged: int = 0
    flagged_duplicates: list = field(default_factory=list)  # (term, existing id, lexsim)
    errors: list = field(default_factory=list)  # (record number, message)
    skipped_relations: int = 0

    def to_record(self) -> dict:
        return {
            "created": self.created,
            "merged": self.merged,
            "flagged_duplicates": [list(f) for f in self.flagged_duplicates],
            "errors": [list(e) for e in self.errors],
            "skipped_relations": self.skipped_relations,
        }


_PUNCT_FIX_RES = (
    (re.compile(r"\s+([,.;:!?)])"), r"\1"),       # no space before closing punctuation
    (re.compile(r"([(])\s+"), r"\1"),             # no space after opening bracket
    (re.compile(r"([,.;:!?])\1+"), r"\1"),        # collapse repeated punctuation
    (re.compile(r",(?=\S)"), r", "),              # space after comma
)


def cleanup_punctuation(text: str) -> str:
    text = " ".join(text.split())
    for pattern, repl in _PUNCT_FIX_RES:
        text = pattern.sub(repl, text)
    return text.strip(" \t,;")


def expand_abbreviations(text: str, table: dict) -> str:
    if not table:
        return text
    folded = {k.casefold(): v for k, v in table.items()}
    out = []
    for word in text.split(" "):
        out.append(folded.get(word.casefold(), word))
    return " ".join(out)


class ThesaurusStore:
    """Single-writer, multi-reader store of thesaurus entries."""

    def __init__(
        self,
        pivot_language: str = DEFAULT_PIVOT_LANGUAGE,
        translation_languages: Iterable = DEFAULT_TRANSLATION_LANGUAGES,
        clock: Callable[[], str] | None = None,
    ):
        self.pivot_language = pivot_language
        self.translation_languages = tuple(translation_languages)
        self._clock = clock or _utc_now
        self._lock = threading.RLock()
        self._entries: dict[str, ThesaurusEntry] = {}
        self._term_index: dict[str, set] = {}
        self._id_counter = 0
        self.mutation_count = 0
        self._ensure_candidate_root()

    # -- low-level helpers -------------------------------------------------

    def _ensure_candidate_root(self):
        if CANDIDATE_ROOT_ID not in self._entries:
            root = ThesaurusEntry(
                id=CANDIDATE_ROOT_ID,
                term=CANDIDATE_ROOT_TERM,
                status=STATUS_APPROVED,
                source="system",
                reliability=1,
                revisions=[Revision(self._clock(), "system", "created")],
            )
            self._entries[root.id] = root
            self._index_term(root)

    def _index_term(self, entry: ThesaurusEntry):
        self._term_index.setdefault(entry.normalized_term, set()).add(entry.id)

    def _unindex_term(self, entry: ThesaurusEntry):
        ids = self._term_index.get(entry.normalized_term)
        if ids:
            ids.discard(entry.id)
            if not ids:
                del self._term_index[entry.normalized_term]

    def _next_id(self) -> str:
        while True:
            self._id_counter += 1
            candidate = f"t{self._id_counter:06d}"
            if candidate not in self._entries:
                return candidate

    # -- read API ------------------------------------------------------------

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries) - 1  # candidate root excluded

    def __contains__(self, entry_id: str) -> bool:
        with self._lock:
            return entry_id in self._entries

    def get(self, entry_id: str) -> ThesaurusEntry:
        with self._lock:
            entry = self._entries.get(entry_id)
            if entry is None:
                raise UnknownEntryError(f"no entry with id {entry_id!r}")
            return entry

    def iter_entries(self, include_system: bool = False) -> list:
        with self._lock:
            return [
                e
                for e in self._entries.values()
                if include_system or e.id != CANDIDATE_ROOT_ID
            ]

    def ids_by_term(self, term: str) -> list:
        with self._lock:
            return sorted(self._term_index.get(normalize_phrase(term), ()))

    # -- mutation ------------------------------------------------------------

    _FIELDS = (
        "term", "variants", "explanations", "translations", "broader",
        "status", "source", "reliability",
    )

    def upsert_entry(
        self,
        data: dict,
        editor: str,
        expected_revision: int | None = None,
        summary: str | None = None,
    ) -> str:
        """Create or update an entry from a field dict; returns the id.

        Fields absent from ``data`` keep their current values.  The inverse
        narrower lists of affected parents are maintained; a mutation that
        would introduce a cycle is rejected before anything changes.
        Exactly one revision is appended.  ``expected_revision`` enables
        optimistic concurrency: it must equal the entry's current revision
        count, otherwise :class:`ConflictError` is raised.
        """
        with self._lock:
            entry_id = data.get("id")
            existing = self._entries.get(entry_id) if entry_id else None
            if existing is not None and expected_revision is not None:
                if expected_revision != len(existing.revisions):
                    raise ConflictError(
                        f"entry {entry_id} was modified (revision "
                        f"{len(existing.revisions)}, expected {expected_revision})"
                    )

            merged = {}
            for key in self._FIELDS:
                if key in data and data[key] is not None:
                    merged[key] = data[key]
                elif existing is not None:
                    merged[key] = getattr(existing, key)
            merged.setdefault("status", STATUS_APPROVED)
            merged.setdefault("variants", [])
            merged.setdefault("explanations", [])
            merged.setdefault("translations", {})
            merged.setdefault("broader", [])
            merged.setdefault("source", "")
            merged.setdefault("reliability", 3)

            if not merged.get("term") or not normalize_phrase(merged["term"]):
                raise StoreError("entry term must be non-empty")
            if merged["status"] not in STATUSES:
                raise StoreError(f"unknown status {merged['status']!r}")
            if int(merged["reliability"]) not in RELIABILITY_RANGE:
                raise StoreError("reliability must be 1 (committee), 2 (journal) or 3 (public)")
            merged["translations"] = {
                k: list(v) for k, v in merged["translations"].items() if v
            }
            for lang in merged["translations"]:
                if lang not in self.translation_languages:
                    raise StoreError(f"unknown translation language {lang!r}")

            explanations = [
                e if isinstance(e, Explanation) else Explanation(**e)
                for e in merged["explanations"]
            ]

            if entry_id is None:
                entry_id = self._next_id()
            if entry_id == CANDIDATE_ROOT_ID and existing is None:
                raise StoreError(f"id {CANDIDATE_ROOT_ID!r} is reserved")

            broader = list(dict.fromkeys(merged["broader"]))
            status = merged["status"]
            if status == STATUS_CANDIDATE:
                # Candidate entries live under the dedicated category node
                # until reviewed; explicit parents come with approval.
                if broader and broader != [CANDIDATE_ROOT_ID]:
                    raise StoreError(
                        "candidate entries live under the candidate category; "
                        "assign parents through review"
                    )
                broader = [CANDIDATE_ROOT_ID]
            for parent_id in broader:
                if parent_id == entry_id:
                    raise CycleError([entry_id, entry_id])
                if parent_id not in self._entries:
                    raise UnknownEntryError(f"unknown broader id {parent_id!r}")
            self._check_acyclic(entry_id, broader)

            if existing is None:
                entry = ThesaurusEntry(
                    id=entry_id,
                    term=merged["term"],
                    variants=list(merged["variants"]),
                    explanations=explanations,
                    translations={k: list(v) for k, v in merged["translations"].items()},
                    broader=[],
                    status=status,
                    source=merged["source"],
                    reliability=int(merged["reliability"]),
                )
                self._entries[entry_id] = entry
                self._index_term(entry)
                default_summary = "created"
            else:
                entry = existing
                self._unindex_term(entry)
                entry.term = merged["term"]
                entry.variants = list(merged["variants"])
                entry.explanations = explanations
                entry.translations = {k: list(v) for k, v in merged["translations"].items()}
                entry.status = status
                entry.source = merged["source"]
                entry.reliability = int(merged["reliability"])
                self._index_term(entry)
                default_summary = "updated"

            self._set_broader(entry, broader)
            entry.revisions.append(
                Revision(self._clock(), editor, summary or default_summary)
            )
            self.mutation_count += 1
            return entry_id

    def _set_broader(self, entry: ThesaurusEntry, broader: list):
        old = set(entry.broader)
        new = set(broader)
        for parent_id in old - new:
            parent = self._entries.get(parent_id)
            if parent and entry.id in parent.narrower:
                parent.narrower.remove(entry.id)
        for parent_id in new - old:
            parent = self._entries[parent_id]
            if entry.id not in parent.narrower:
                parent.narrower.append(entry.id)
                parent.narrower.sort()
        entry.broader = list(broader)

    def _check_acyclic(self, entry_id: str, new_broader: list):
        """Walk up from the prospective parents; reaching the entry itself
        means the mutation closes a loop."""
        for start in new_broader:
            stack = [(start, [entry_id, start])]
            seen = set()
            while stack:
                node, path = stack.pop()
                if node == entry_id:
                    raise CycleError(path)
                if node in seen:
                    continue
                seen.add(node)
                parent = self._entries.get(node)
                if parent is None:
                    continue
                for up in parent.broader:
                    stack.append((up, path + [up]))

    def review_candidate(
        self,
        entry_id: str,
        decision: str,
        editor: str,
        broader: list | None = None,
        edits: dict | None = None,
    ) -> ThesaurusEntry:
        """Approve or reject a candidate entry.

        Approval re-parents the entry to the chosen broader ids (replacing
        the candidate category) and applies any field edits; rejection keeps
        the record but detaches it from the tree.  Reviewing an entry twice
        fails with its current status.
        """
        with self._lock:
            entry = self.get(entry_id)
            if entry.status != STATUS_CANDIDATE:
                raise ReviewStateError(entry_id, entry.status)
            if decision not in ("approve", "reject"):
                raise StoreError(f"unknown review decision {decision!r}")

            if decision == "reject":
                self._set_broader(entry, [])
                entry.status = STATUS_REJECTED
                entry.revisions.append(Revision(self._clock(), editor, "rejected"))
                self.mutation_count += 1
                return entry

            data: dict = {
                "id": entry_id,
                "status": STATUS_APPROVED,
                "broader": list(dict.fromkeys(broader or [])),
            }
            for key, value in (edits or {}).items():
                if key in ("id", "status", "broader", "narrower", "revisions"):
                    continue
                data[key] = value
            # Route through upsert so edits get the same validation and the
            # candidate-category parent is swapped for the chosen ones.
            self.upsert_entry(data, editor=editor, summary="approved")
            return entry

    # -- close-term detection -------------------------------------------------

    def detect_close_terms(
        self, term: str, threshold: float = CLOSE_TERM_THRESHOLD
    ) -> list:
        """Entries lexically close to ``term``: (id, lexsim) pairs with
        similarity >= threshold, ordered by score descending then id.

        Similarity is the bigram lexsim of the phrases, or of their
        diacritic-folded forms when that scores higher, so that accent-less
        misspellings of accented terms are still caught.
        """
        if not normalize_phrase(term):
            raise StoreError("term must be non-empty")
        folded = fold_diacritics(term)
        scored = []
        for entry in self.iter_entries():
            if entry.status == STATUS_REJECTED:
                continue
            sim = max(
                lexsim(term, entry.term),
                lexsim(folded, fold_diacritics(entry.term)),
            )
            if sim >= threshold:
                scored.append((entry.id, sim))
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        return scored

    # -- import -----------------------------------------------------------------

    def import_dataset(self, source, mapping: ImportMapping, editor: str = "import") -> ImportReport:
        """Import records from a CSV/TSV/structured-text dataset.

        Records are normalized (punctuation cleanup, abbreviation
        expansion).  Exact term matches merge field-wise without deleting
        anything; records whose term is lexically close (lexsim >= 0.8) to
        an existing entry are flagged for review and withheld; the rest
        create new entries.  Unparseable records land in the error list and
        the import continues.  Broader links are resolved by term in a
        second pass so forward references work.
        """
        with self._lock:
            records = self._parse_records(source, mapping)
            report = ImportReport()
            pending_relations = []
            for number, parsed in records:
                if isinstance(parsed, str):
                    report.errors.append((number, parsed))
                    continue
                term = parsed.get("term", "")
                term = cleanup_punctuation(expand_abbreviations(term, mapping.abbreviations))
                if not normalize_phrase(term):
                    report.errors.append((number, "record has no term"))
                    continue
                parsed["term"] = term

                exact_ids = self.ids_by_term(term)
                if exact_ids:
                    target = self._entries[exact_ids[0]]
                    self._merge_fields(target, parsed, mapping, editor)
                    report.merged += 1
                    if parsed.get("broader"):
                        pending_relations.append((target.id, parsed["broader"]))
                    continue

                # Exact term matches merged above; anything still close
                # (including diacritic-folded equality) is flagged.
                close = self.detect_close_terms(term)
                if close:
                    report.flagged_duplicates.append((term, close[0][0], close[0][1]))
                    continue

                entry_id = self.upsert_entry(
                    {
                        "term": term,
                        "variants": parsed.get("variants", []),
                        "explanations": parsed.get("explanations", []),
                        "translations": parsed.get("translations", {}),
                        "status": parsed.get("status", mapping.default_status),
                        "source": parsed.get("source", mapping.default_source),
                        "reliability": parsed.get("reliability", mapping.default_reliability),
                    },
                    editor=editor,
                    summary="imported",
                )
                report.created += 1
                if parsed.get("broader"):
                    pending_relations.append((entry_id, parsed["broader"]))

            for entry_id, broader_term in pending_relations:
                if not self._link_broader_by_term(entry_id, broader_term, editor):
                    report.skipped_relations += 1
            return report

    def _link_broader_by_term(self, entry_id: str, broader_term: str, editor: str) -> bool:
        ids = self.ids_by_term(broader_term)
        ids = [i for i in ids if i != entry_id]
        if not ids:
            return False
        entry = self._entries[entry_id]
        if entry.status == STATUS_CANDIDATE:
            return False  # candidates get parents at review time
        parent_id = ids[0]
        if parent_id in entry.broader:
            return True
        try:
            self.upsert_entry(
                {"id": entry_id, "broader": entry.broader + [parent_id]},
                editor=editor,
                summary=f"linked broader {parent_id}",
            )
        except (CycleError, StoreError):
            return False
        return True

    def _merge_fields(self, entry: ThesaurusEntry, parsed: dict, mapping, editor: str):
        """Field-wise merge that only ever adds data."""
        variants = list(entry.variants)
        for v in parsed.get("variants", []):
            if v and v not in variants:
                variants.append(v)
        explanations = list(entry.explanations)
        have_texts = {e.text for e in explanations}
        for e in parsed.get("explanations", []):
            exp = e if isinstance(e, Explanation) else Explanation(**e)
            if exp.text and exp.text not in have_texts:
                explanations.append(exp)
                have_texts.add(exp.text)
        translations = {k: list(v) for k, v in entry.translations.items()}
        for lang, phrases in parsed.get("translations", {}).items():
            bucket = translations.setdefault(lang, [])
            for p in phrases:
                if p and p not in bucket:
                    bucket.append(p)
        self.upsert_entry(
            {
                "id": entry.id,
                "variants": variants,
                "explanations": explanations,
                "translations": translations,
                "source": entry.source or parsed.get("source", ""),
            },
            editor=editor,
            summary="merged import record",
        )

    def _parse_records(self, source, mapping: ImportMapping):
        """Yield (record number, parsed dict | error string) pairs."""
        if hasattr(source, "read"):
            text = source.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
        records = []
        if mapping.format in ("csv", "tsv"):
            delimiter = "," if mapping.format == "csv" else "\t"
            reader = csv.reader(io.StringIO(text), delimiter=delimiter)
            rows = list(reader)
            start = 0
            header_map = {}
            if mapping.has_header and rows:
                header_map = {name: i for i, name in enumerate(rows[0])}
                start = 1
            for number, row in enumerate(rows[start:], start=1):
                if not row or all(not cell.strip() for cell in row):
                    continue
                try:
                    records.append((number, self._map_row(row, mapping, header_map)))
                except Exception as exc:
                    records.append((number, f"unparseable record: {exc}"))
        else:  # structured text: blank-line separated "field: value" blocks
            blocks = [b for b in re.split(r"\n\s*\n", text) if b.strip()]
            for number, block in enumerate(blocks, start=1):
                try:
                    fields: dict = {}
                    for line in block.splitlines():
                        line = line.strip()
                        if not line or ":" not in line:
                            continue
                        key, _, value = line.partition(":")
                        fields.setdefault(key.strip(), []).append(value.strip())
                    records.append((number, self._map_text_block(fields, mapping)))
                except Exception as exc:
                    records.append((number, f"unparseable record: {exc}"))
        return records

    def _map_row(self, row, mapping: ImportMapping, header_map: dict) -> dict:
        def cell(spec):
            idx = header_map.get(spec) if isinstance(spec, str) else spec
            if idx is None or idx >= len(row):
                return ""
            return row[idx].strip()

        return self._assemble_fields(lambda spec: [cell(spec)] if cell(spec) else [], mapping)

    def _map_text_block(self, fields: dict, mapping: ImportMapping) -> dict:
        return self._assemble_fields(lambda spec: fields.get(spec, []), mapping)

    def _assemble_fields(self, getter, mapping: ImportMapping) -> dict:
        parsed: dict = {}
        for field_name, spec in mapping.fields.items():
            values = [v for v in getter(spec) if v]
            if not values:
                continue
            if field_name == "term":
                parsed["term"] = values[0]
            elif field_name == "variants":
                parsed["variants"] = [
                    cleanup_punctuation(v)
                    for value in values
                    for v in value.split(";")
                    if v.strip()
                ]
            elif field_name == "explanation":
                parsed.setdefault("explanations", []).extend(
                    Explanation(cleanup_punctuation(v)) for v in values
                )
            elif field_name == "explanation_category":
                for exp in parsed.get("explanations", []):
                    if not exp.category:
                        exp.category = values[0]
            elif field_name == "broader":
                parsed["broader"] = cleanup_punctuation(values[0])
            elif field_name == "source":
                parsed["source"] = values[0]
            elif field_name == "status":
                parsed["status"] = values[0]
            elif field_name == "reliability":
                parsed["reliability"] = int(values[0])
            elif field_name.startswith("translation."):
                lang = field_name.split(".", 1)[1]
                parsed.setdefault("translations", {}).setdefault(lang, []).extend(
                    cleanup_punctuation(v) for v in values
                )
        return parsed

    # -- tree -----------------------------------------------------------------

    def tree(self, root: str | None = None, depth: int | None = None) -> list:
        """Expanding multi-level tree as nested node dicts.

        Multi-parent entries appear under each parent with the same id;
        children are ordered by term.  Rejected entries never show up.
        ``root`` starts the tree at one entry; ``depth`` limits expansion.
        """
        with self._lock:
            def node(entry: ThesaurusEntry, level: int) -> dict:
                children = []
                if depth is None or level < depth:
                    kids = [
                        self._entries[cid]
                        for cid in entry.narrower
                        if self._entries[cid].status != STATUS_REJECTED
                    ]
                    kids.sort(key=lambda e: (e.normalized_term, e.id))
                    children = [node(kid, level + 1) for kid in kids]
                return {
                    "id": entry.id,
                    "term": entry.term,
                    "status": entry.status,
                    "children": children,
                }

            if root is not None:
                return [node(self.get(root), 1)]
            roots = [
                e
                for e in self._entries.values()
                if not e.broader
                and e.status != STATUS_REJECTED
                # the candidate category only shows up when it has members
                and not (e.id == CANDIDATE_ROOT_ID and not e.narrower)
            ]
            roots.sort(key=lambda e: (e.normalized_term, e.id))
            return [node(r, 1) for r in roots]

    # -- search ---------------------------------------------------------------

    def search(
        self,
        query: str,
        include_candidates: bool = False,
        include_rejected: bool = False,
        lexsim_threshold: float = 0.5,
    ) -> list:
        """Ranked entry matches: exact normalized term first, then prefix
        matches, then lexically similar terms (lexsim >= threshold)."""
        q = normalize_phrase(query)
        if not q:
            return []
        results = []
        for entry in self.iter_entries():
            if entry.status == STATUS_REJECTED and not include_rejected:
                continue
            if entry.status == STATUS_CANDIDATE and not include_candidates:
                continue
            normalized = entry.normalized_term
            if normalized == q:
                results.append((0, 1.0, entry))
                continue
            variant_hit = any(normalize_phrase(v) == q for v in entry.variants)
            if variant_hit:
                results.append((0, 0.99, entry))
                continue
            if normalized.startswith(q):
                results.append((1, 1.0, entry))
                continue
            sim = lexsim(q, normalized)
            if sim >= lexsim_threshold:
                results.append((2, sim, entry))
        results.sort(key=lambda r: (r[0], -r[1], r[2].normalized_term, r[2].id))
        return [
            {"id": e.id, "term": e.term, "status": e.status, "match": kind, "score": score}
            for kind, score, e in results
        ]

    # -- validation -------------------------------------------------------------

    def validate(self) -> list:
        """Full-scan invariant check; returns human-readable violations."""
        with self._lock:
            problems = []
            for entry in self._entries.values():
                for pid in entry.broader:
                    parent = self._entries.get(pid)
                    if parent is None:
                        problems.append(f"{entry.id}: broader {pid} missing")
                    elif entry.id not in parent.narrower:
                        problems.append(f"{entry.id}: not in narrower of {pid}")
                    if pid == entry.id:
                        problems.append(f"{entry.id}: self-loop")
                for cid in entry.narrower:
                    child = self._entries.get(cid)
                    if child is None:
                        problems.append(f"{entry.id}: narrower {cid} missing")
                    elif entry.id not in child.broader:
                        problems.append(f"{entry.id}: not in broader of {cid}")
                if not entry.revisions:
                    problems.append(f"{entry.id}: no revisions")
                if entry.status == STATUS_CANDIDATE and entry.broader != [CANDIDATE_ROOT_ID]:
                    problems.append(f"{entry.id}: candidate outside candidate category")

            # Acyclicity: Kahn's algorithm over the broader relation.
            indegree = {eid: len(e.broader) for eid, e in self._entries.items()}
            queue = [eid for eid, deg in indegree.items() if deg == 0]
            visited = 0
            while queue:
                nid = queue.pop()
                visited += 1
                for cid in self._entries[nid].narrower:
                    if cid in indegree:
                        indegree[cid] -= 1
                        if indegree[cid] == 0:
                            queue.append(cid)
            if visited < len(self._entries):
                problems.append("broader relation contains a cycle")
            return problems

    # -- persistence --------------------------------------------------------------

    def dump(self) -> dict:
        with self._lock:
            return {
                "format_version": DUMP_FORMAT_VERSION,
                "pivot_language": self.pivot_language,
                "translation_languages": list(self.translation_languages),
                "id_counter": self._id_counter,
                "entries": [
                    self._entries[eid].to_record() for eid in sorted(self._entries)
                ],
            }

    def save(self, path: str | Path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            payload = json.dumps(self.dump(), ensure_ascii=False, indent=1, sort_keys=True)
        path.write_text(payload + "\n", encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict, clock: Callable[[], str] | None = None) -> "ThesaurusStore":
        if data.get("format_version") != DUMP_FORMAT_VERSION:
            raise StoreError("unsupported store dump format")
        store = cls(
            pivot_language=data.get("pivot_language", DEFAULT_PIVOT_LANGUAGE),
            translation_languages=data.get(
                "translation_languages", DEFAULT_TRANSLATION_LANGUAGES
            ),
            clock=clock,
        )
        store._entries.clear()
        store._term_index.clear()
        for record in data.get("entries", []):
            entry = ThesaurusEntry.from_record(record)
            store._entries[entry.id] = entry
            store._index_term(entry)
        store._id_counter = int(data.get("id_counter", 0))
        store._ensure_candidate_root()
        problems = store.validate()
        if problems:
            raise StoreError("invalid store dump: " + "; ".join(problems[:5]))
        return store

    @classmethod
    def load(cls, path: str | Path, clock: Callable[[], str] | None = None) -> "ThesaurusStore":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls.from_dict(data, clock=clock)
