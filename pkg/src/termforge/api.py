"""JSON HTTP interface for searching, browsing, editing, and candidate review.

The service is a thin layer over the store and the precomputed corpus
artifacts: requests never trigger corpus-wide recomputation unless no
artifact is available and the loaded corpus is small enough to scan live.
Read endpoints are public; mutating endpoints require an editor token.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .corpus import CorpusIndex, concordance
from .errors import (
    ConflictError,
    CycleError,
    ReviewStateError,
    StoreError,
    TermforgeError,
    UnknownEntryError,
)
from .grammar import TermGrammar, load_grammar
from .relations import PatternConfig, RelationCandidate, suggest_hypernyms
from .skos import export_skos
from .store import STATUS_CANDIDATE, ThesaurusStore
from .tokens import normalize_phrase
from .translations import (
    BilingualLexicon,
    collocate_profile,
    profile_cosine,
    translation_candidates,
)

DEFAULT_PAGE_SIZE = 50

_RANK_RE = re.compile(r"rank=([0-9.eE+-]+)")


@dataclass
class AppState:
    """Everything a running service needs: the store plus optional corpus
    indexes and precomputed suggestion artifacts."""

    store: ThesaurusStore
    store_path: Optional[Path] = None
    index: Optional[CorpusIndex] = None
    target_indexes: dict = field(default_factory=dict)
    grammar: Optional[TermGrammar] = None
    patterns: Optional[PatternConfig] = None
    term_candidates: dict = field(default_factory=dict)  # lang -> [phrase]
    hypernym_candidates: Optional[list] = None  # precomputed RelationCandidates
    translation_artifact: dict = field(default_factory=dict)  # term -> lang -> records
    lexicons: dict = field(default_factory=dict)  # lang -> BilingualLexicon
    auth_tokens: dict = field(default_factory=dict)  # token -> {name, role}
    window: int = 5
    top_k: int = 10
    examples_limit: int = 10
    lexsim_threshold: float = 0.5

    def persist(self):
        if self.store_path is not None:
            self.store.save(self.store_path)

    # -- corpus-backed lookups ------------------------------------------------

    def examples_for(self, term: str, window: int, limit: int) -> list:
        if self.index is None:
            return []
        lines = concordance(self.index, normalize_phrase(term), window)
        return [
            {
                "doc_id": line.doc_id,
                "offset": line.offset,
                "left": " ".join(line.left),
                "match": " ".join(line.match),
                "right": " ".join(line.right),
            }
            for line in lines[:limit]
        ]

    def related_for(self, term: str, limit: int) -> list:
        """Terms used in similar contexts: cosine over collocate profiles,
        flagged with whether they already exist in the store."""
        if self.index is None:
            return []
        term = normalize_phrase(term)
        pool = self.term_candidates.get(self.index.language) or [
            e.term for e in self.store.iter_entries() if e.status != "rejected"
        ]
        base = collocate_profile(self.index, term, self.window)
        if not base:
            return []
        scored = []
        for other in pool:
            other = normalize_phrase(other)
            if other == term:
                continue
            sim = profile_cosine(base, collocate_profile(self.index, other, self.window))
            if sim > 0.0:
                scored.append((sim, other))
        scored.sort(key=lambda pair: (-pair[0], pair[1]))
        return [
            {
                "term": other,
                "similarity": sim,
                "in_store": bool(self.store.ids_by_term(other)),
            }
            for sim, other in scored[:limit]
        ]

    def hypernym_suggestions(self, term: str) -> list:
        candidates = suggest_hypernyms(
            term,
            store=self.store,
            index=None if self.hypernym_candidates is not None else self.index,
            patterns=self.patterns,
            grammar=self.grammar,
            pattern_candidates=self.hypernym_candidates,
            lexsim_threshold=self.lexsim_threshold,
        )
        out = []
        for cand in candidates:
            record = cand.to_record()
            record["store_ids"] = self.store.ids_by_term(cand.hypernym)
            out.append(record)
        return out

    def translation_suggestions(self, term: str) -> dict:
        term = normalize_phrase(term)
        artifact = self.translation_artifact.get(term)
        if artifact is not None:
            return artifact
        out = {}
        if self.index is None:
            return out
        source_profile = collocate_profile(self.index, term, self.window)
        for lang, target_index in sorted(self.target_indexes.items()):
            lexicon = self.lexicons.get(lang)
            target_terms = self.term_candidates.get(lang, [])
            if lexicon is None or not target_terms:
                continue
            cands = translation_candidates(
                source_profile,
                target_index,
                target_terms,
                lexicon,
                k=self.top_k,
                window=self.window,
            )
            out[lang] = [c.to_record() for c in cands]
        return out


@dataclass(frozen=True)
class Identity:
    name: str
    role: str  # reader | editor | admin

    @property
    def can_edit(self) -> bool:
        return self.role in ("editor", "admin")


class EntryBody(BaseModel):
    term: Optional[str] = None
    variants: Optional[list] = None
    explanations: Optional[list] = None
    translations: Optional[dict] = None
    broader: Optional[list] = None
    status: Optional[str] = None
    source: Optional[str] = None
    reliability: Optional[int] = None
    expected_revision: Optional[int] = None


class ReviewBody(BaseModel):
    decision: str
    broader: Optional[list] = None
    edits: Optional[dict] = None


class AuthError(TermforgeError):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def load_auth_tokens(path) -> dict:
    """Token file: JSON object mapping token -> {"name": ..., "role": ...}."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    for token, who in data.items():
        if who.get("role") not in ("reader", "editor", "admin"):
            raise ValueError(f"token {token!r} has invalid role {who.get('role')!r}")
    return data


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="termforge", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.termforge = state

    # The browser workbench (and third-party clients) run on other origins;
    # auth is token-based, so wildcard CORS carries no credential risk.
    from fastapi.middleware.cors import CORSMiddleware

    # Authorization is never covered by a wildcard allow-headers, so list it.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["Authorization", "Content-Type", "Accept"],
    )

    def identity(authorization: Optional[str] = Header(None)) -> Identity:
        if not authorization:
            return Identity(name="anonymous", role="reader")
        token = authorization.removeprefix("Bearer ").strip()
        who = state.auth_tokens.get(token)
        if who is None:
            raise AuthError("unknown token", 401)
        return Identity(name=who["name"], role=who["role"])

    def editor(who: Identity = Depends(identity)) -> Identity:
        if not who.can_edit:
            raise AuthError("editor role required", 403)
        return who

    # -- error mapping -------------------------------------------------------

    error_map = [
        (UnknownEntryError, 404, "not_found"),
        (ConflictError, 409, "conflict"),
        (CycleError, 409, "cycle"),
        (ReviewStateError, 409, "review_state"),
        (StoreError, 400, "invalid"),
        (ValueError, 400, "invalid"),
    ]

    @app.exception_handler(TermforgeError)
    @app.exception_handler(ValueError)
    async def handle_errors(request: Request, exc: Exception):
        if isinstance(exc, AuthError):
            return _error(exc.status, "auth", str(exc))
        for cls, status, code in error_map:
            if isinstance(exc, cls):
                return _error(status, code, str(exc))
        return _error(500, "internal", str(exc))

    # -- read endpoints --------------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/entries")
    def search_entries(
        q: str = "",
        include_candidates: bool = False,
        include_rejected: bool = False,
        page: int = Query(1, ge=1),
        page_size: int = Query(DEFAULT_PAGE_SIZE, ge=1, le=500),
    ):
        if q:
            results = state.store.search(
                q,
                include_candidates=include_candidates,
                include_rejected=include_rejected,
                lexsim_threshold=state.lexsim_threshold,
            )
        else:
            entries = [
                e
                for e in state.store.iter_entries()
                if (include_rejected or e.status != "rejected")
                and (include_candidates or e.status != STATUS_CANDIDATE)
            ]
            entries.sort(key=lambda e: (e.normalized_term, e.id))
            results = [
                {"id": e.id, "term": e.term, "status": e.status, "match": None, "score": None}
                for e in entries
            ]
        window, total = _paginate(results, page, page_size)
        return {"results": window, "total": total, "page": page, "page_size": page_size}

    @app.get("/entries/{entry_id}")
    def entry_detail(entry_id: str):
        entry = state.store.get(entry_id)
        record = entry.to_record()
        return {
            "entry": record,
            "broader_terms": _expand(state.store, entry.broader),
            "narrower_terms": _expand(state.store, entry.narrower),
            "examples": state.examples_for(entry.term, state.window, state.examples_limit),
            "related": state.related_for(entry.term, state.top_k),
        }

    @app.get("/entries/{entry_id}/examples")
    def entry_examples(
        entry_id: str,
        window: int = Query(5, ge=0),
        limit: int = Query(10, ge=1, le=200),
    ):
        entry = state.store.get(entry_id)
        return {"id": entry.id, "term": entry.term,
                "examples": state.examples_for(entry.term, window, limit)}

    @app.get("/entries/{entry_id}/related")
    def entry_related(entry_id: str, limit: int = Query(10, ge=1, le=100)):
        entry = state.store.get(entry_id)
        return {"id": entry.id, "term": entry.term,
                "related": state.related_for(entry.term, limit)}

    @app.get("/entries/{entry_id}/suggestions")
    def entry_suggestions(entry_id: str):
        entry = state.store.get(entry_id)
        return {
            "id": entry.id,
            "term": entry.term,
            "hypernyms": state.hypernym_suggestions(entry.term),
            "translations": state.translation_suggestions(entry.term),
        }

    @app.get("/tree")
    def tree(root: Optional[str] = None, depth: Optional[int] = Query(None, ge=1)):
        return {"tree": state.store.tree(root=root, depth=depth)}

    @app.get("/candidates")
    def candidates(
        page: int = Query(1, ge=1),
        page_size: int = Query(DEFAULT_PAGE_SIZE, ge=1, le=500),
    ):
        queue = []
        for entry in state.store.iter_entries():
            if entry.status != STATUS_CANDIDATE:
                continue
            match = _RANK_RE.search(entry.source)
            queue.append(
                {
                    "id": entry.id,
                    "term": entry.term,
                    "source": entry.source,
                    "rank": float(match.group(1)) if match else None,
                    "revision": len(entry.revisions),
                }
            )
        queue.sort(key=lambda item: (-(item["rank"] or 0.0), item["term"], item["id"]))
        window, total = _paginate(queue, page, page_size)
        return {"results": window, "total": total, "page": page, "page_size": page_size}

    @app.get("/export/skos")
    def skos(fmt: str = "rdfxml"):
        payload = export_skos(state.store, fmt=fmt)
        media = "application/rdf+xml" if fmt == "rdfxml" else "application/ld+json"
        return Response(content=payload, media_type=media)

    @app.get("/export/dump")
    def dump():
        return state.store.dump()

    # -- mutating endpoints ------------------------------------------------------

    @app.post("/entries")
    def create_entry(body: EntryBody, who: Identity = Depends(editor)):
        data = body.model_dump(exclude_none=True)
        data.pop("expected_revision", None)
        entry_id = state.store.upsert_entry(data, editor=who.name)
        state.persist()
        return {"id": entry_id, "entry": state.store.get(entry_id).to_record()}

    @app.put("/entries/{entry_id}")
    def put_entry(entry_id: str, body: EntryBody, who: Identity = Depends(editor)):
        data = body.model_dump(exclude_none=True)
        expected = data.pop("expected_revision", None)
        data["id"] = entry_id
        state.store.upsert_entry(data, editor=who.name, expected_revision=expected)
        state.persist()
        return {"id": entry_id, "entry": state.store.get(entry_id).to_record()}

    @app.post("/candidates/{entry_id}/review")
    def review(entry_id: str, body: ReviewBody, who: Identity = Depends(editor)):
        entry = state.store.review_candidate(
            entry_id,
            body.decision,
            editor=who.name,
            broader=body.broader,
            edits=body.edits,
        )
        state.persist()
        return {"id": entry.id, "entry": entry.to_record()}

    return app


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def _paginate(items: list, page: int, page_size: int):
    start = (page - 1) * page_size
    return items[start:start + page_size], len(items)


def _expand(store: ThesaurusStore, ids: list) -> list:
    out = []
    for entry_id in ids:
        try:
            entry = store.get(entry_id)
        except UnknownEntryError:
            continue
        out.append({"id": entry.id, "term": entry.term, "status": entry.status})
    return out
