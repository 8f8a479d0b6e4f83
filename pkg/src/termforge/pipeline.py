"""Pipeline stages: ingest -> clean -> dedup -> index -> extract -> rank ->
relate -> translate -> import -> export.

Every stage reads its prerequisite artifacts from the work directory, writes
its own artifacts plus a machine-readable report, and is deterministic for
identical inputs and configuration, so stages can be re-run independently.
"""

from __future__ import annotations

import glob
import json
import urllib.request
from datetime import datetime, timezone
from pathlib import Path

import yaml

from .cleaning import CleaningConfig, clean_document
from .config import PipelineConfig
from .corpus import CorpusIndex, Document, build_corpus, corpus_stats
from .dedup import dedup
from .errors import PipelineError
from .extraction import (
    extract_candidates,
    rank_terms,
    read_ranked_tsv,
    write_ranked_tsv,
)
from .grammar import load_grammar
from .relations import extract_hypernym_pairs, load_hypernym_patterns
from .store import DEFAULT_TRANSLATION_LANGUAGES, ImportMapping, ThesaurusStore
from .skos import export_skos
from .tokens import load_stop_words, profile_for
from .translations import (
    BilingualLexicon,
    collocate_profile,
    evaluate_translations,
    translation_candidates,
)

STAGES = (
    "ingest", "clean", "dedup", "index", "extract", "rank",
    "relate", "translate", "import", "export-skos", "eval-translations",
)


def _require(path: Path, producer: str) -> Path:
    if not path.exists():
        raise PipelineError(
            f"missing prerequisite artifact {path} (run the {producer!r} stage first)"
        )
    return path


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, ensure_ascii=False, indent=1, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def _write_jsonl(path: Path, records) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def _read_jsonl(path: Path) -> list:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


def _expand_sources(config: PipelineConfig, language: str) -> list:
    """Resolve the configured sources of one language to an ordered list of
    (label, kind) pairs where kind is 'file' or 'url'."""
    out = []
    for item in config.sources.get(language, []):
        if item.startswith(("http://", "https://")):
            out.append((item, "url"))
            continue
        path = config.resolve(item)
        if path.is_dir():
            files = sorted(
                p for p in path.iterdir()
                if p.suffix.lower() in (".txt", ".html", ".htm") and p.is_file()
            )
            out.extend((str(p), "file") for p in files)
        elif path.exists():
            out.append((str(path), "file"))
        else:
            matches = sorted(glob.glob(str(path)))
            if not matches:
                raise PipelineError(f"source {item!r} matches no files")
            out.extend((m, "file") for m in matches)
    return out


def stage_ingest(config: PipelineConfig) -> dict:
    """Collect raw documents per language into raw.<lang>.jsonl."""
    report = {"stage": "ingest", "languages": {}}
    for language in config.languages:
        sources = _expand_sources(config, language)
        if not sources:
            raise PipelineError(f"no sources configured for language {language!r}")
        records = []
        for i, (label, kind) in enumerate(sources, start=1):
            if kind == "url":
                with urllib.request.urlopen(label) as response:
                    text = response.read().decode("utf-8", errors="replace")
                fetched_at = ""
            else:
                path = Path(label)
                text = path.read_text(encoding="utf-8")
                fetched_at = datetime.fromtimestamp(
                    path.stat().st_mtime, tz=timezone.utc
                ).isoformat(timespec="seconds")
            records.append(
                {
                    "id": f"{language}-{i:04d}",
                    "source": label,
                    "language": language,
                    "text": text,
                    "fetched_at": fetched_at,
                }
            )
        _write_jsonl(config.workdir / f"raw.{language}.jsonl", records)
        report["languages"][language] = {"documents": len(records)}
    _write_json(config.workdir / "reports" / "ingest.json", report)
    return report


def stage_clean(config: PipelineConfig) -> dict:
    """Strip markup and label paragraph quality."""
    cleaning = CleaningConfig(
        max_link_density=config.params.max_link_density,
        min_stopword_ratio=config.params.min_stopword_ratio,
        min_chars=config.params.min_paragraph_chars,
    )
    report = {"stage": "clean", "languages": {}}
    for language in config.languages:
        raw_path = _require(config.workdir / f"raw.{language}.jsonl", "ingest")
        stop_words = load_stop_words(language, config.stopwords.get(language))
        documents = []
        totals = {"paragraphs_kept": 0, "paragraphs_dropped": 0, "drop_reasons": {}}
        for record in _read_jsonl(raw_path):
            doc, doc_report = clean_document(
                record["text"],
                doc_id=record["id"],
                language=language,
                source=record["source"],
                fetched_at=record.get("fetched_at", ""),
                config=cleaning,
                stop_words=stop_words,
            )
            documents.append(doc.to_record())
            totals["paragraphs_kept"] += doc_report.paragraphs_kept
            totals["paragraphs_dropped"] += doc_report.paragraphs_dropped
            for reason, count in doc_report.drop_reasons.items():
                totals["drop_reasons"][reason] = totals["drop_reasons"].get(reason, 0) + count
        _write_jsonl(config.workdir / f"clean.{language}.jsonl", documents)
        totals["drop_reasons"] = dict(sorted(totals["drop_reasons"].items()))
        report["languages"][language] = totals
    _write_json(config.workdir / "reports" / "clean.json", report)
    return report


def stage_dedup(config: PipelineConfig) -> dict:
    """Purge duplicate documents and paragraphs."""
    report = {"stage": "dedup", "languages": {}}
    for language in config.languages:
        clean_path = _require(config.workdir / f"clean.{language}.jsonl", "clean")
        documents = [Document.from_record(r) for r in _read_jsonl(clean_path)]
        kept, dedup_report = dedup(
            documents,
            shingle_len=config.params.shingle_len,
            threshold=config.params.dedup_threshold,
        )
        _write_jsonl(
            config.workdir / f"dedup.{language}.jsonl", [d.to_record() for d in kept]
        )
        report["languages"][language] = dedup_report.to_record()
    _write_json(config.workdir / "reports" / "dedup.json", report)
    return report


def stage_index(config: PipelineConfig) -> dict:
    """Tokenize, tag, and index the deduplicated corpora (plus references)."""
    report = {"stage": "index", "languages": {}}
    for language in config.languages:
        dedup_path = _require(config.workdir / f"dedup.{language}.jsonl", "dedup")
        documents = [Document.from_record(r) for r in _read_jsonl(dedup_path)]
        index = build_corpus(documents, profile_for(language))
        index.save(config.workdir / f"corpus.{language}")
        stats = corpus_stats(index)
        report["languages"][language] = {
            "documents": stats.documents,
            "tokens": stats.tokens,
            "unique_tokens": stats.unique_tokens,
        }
    for language, ref in sorted(config.reference.items()):
        ref_path = config.resolve(ref)
        if not ref_path.exists():
            raise PipelineError(f"reference corpus {ref_path} does not exist")
        index = _build_reference_index(ref_path, language)
        index.save(config.workdir / f"reference.{language}")
        stats = corpus_stats(index)
        report["languages"][f"reference:{language}"] = {
            "documents": stats.documents,
            "tokens": stats.tokens,
            "unique_tokens": stats.unique_tokens,
        }
    _write_json(config.workdir / "reports" / "index.json", report)
    return report


def _build_reference_index(path: Path, language: str) -> CorpusIndex:
    """Reference corpus from a vertical file, a raw text file, or a directory
    of raw text files."""
    if path.suffix == ".vert":
        return CorpusIndex.from_vertical(path.read_text(encoding="utf-8"))
    files = sorted(path.glob("*.txt")) if path.is_dir() else [path]
    documents = []
    for i, file in enumerate(files, start=1):
        doc, _ = clean_document(
            file.read_text(encoding="utf-8"),
            doc_id=f"ref-{language}-{i:04d}",
            language=language,
            source=str(file),
        )
        documents.append(doc)
    return build_corpus(documents, profile_for(language))


def _load_index(config: PipelineConfig, name: str, producer: str) -> CorpusIndex:
    _require(config.workdir / f"{name}.vert", producer)
    _require(config.workdir / f"{name}.idx.json", producer)
    return CorpusIndex.load(config.workdir / name)


def stage_extract(config: PipelineConfig) -> dict:
    """Match the term grammar over each corpus and count candidate phrases."""
    grammar = load_grammar(config.resolve(config.grammar) if config.grammar else None)
    report = {"stage": "extract", "languages": {}}
    for language in config.languages:
        index = _load_index(config, f"corpus.{language}", "index")
        counts = extract_candidates(index, grammar)
        _write_json(
            config.workdir / f"extract.{language}.json",
            {
                "language": language,
                "token_count": index.token_count,
                "counts": dict(sorted(counts.items())),
            },
        )
        report["languages"][language] = {"phrases": len(counts)}
    _write_json(config.workdir / "reports" / "extract.json", report)
    return report


def stage_rank(config: PipelineConfig) -> dict:
    """Rank extracted phrases against the configured reference corpora."""
    if not config.reference:
        raise PipelineError("no reference corpora configured; cannot rank")
    report = {"stage": "rank", "languages": {}}
    for language in sorted(config.reference):
        extract_path = _require(config.workdir / f"extract.{language}.json", "extract")
        data = json.loads(extract_path.read_text(encoding="utf-8"))
        reference = _load_index(config, f"reference.{language}", "index")
        counts = data["counts"]
        reference_counts = {
            phrase: reference.phrase_count(phrase) for phrase in counts
        }
        candidates = rank_terms(
            counts,
            data["token_count"],
            reference_counts,
            reference.token_count,
            n=config.params.n,
            min_count=config.params.min_count,
        )
        write_ranked_tsv(candidates, config.workdir / f"ranked.{language}.tsv")
        report["languages"][language] = {"candidates": len(candidates)}
    _write_json(config.workdir / "reports" / "rank.json", report)
    return report


def stage_relate(config: PipelineConfig) -> dict:
    """Mine hypernym candidate pairs from the pivot corpus."""
    language = config.pivot
    index = _load_index(config, f"corpus.{language}", "index")
    patterns = load_hypernym_patterns(language, config.patterns.get(language))
    grammar = load_grammar(config.resolve(config.grammar) if config.grammar else None)
    candidates = extract_hypernym_pairs(index, patterns, grammar)
    _write_json(
        config.workdir / f"relate.{language}.json",
        {"language": language, "candidates": [c.to_record() for c in candidates]},
    )
    report = {
        "stage": "relate",
        "language": language,
        "candidates": len(candidates),
        "by_method": _count_by(candidates, lambda c: c.method),
    }
    _write_json(config.workdir / "reports" / "relate.json", report)
    return report


def _count_by(items, key) -> dict:
    out: dict = {}
    for item in items:
        k = key(item)
        out[k] = out.get(k, 0) + 1
    return out


def _candidate_terms(config: PipelineConfig, language: str) -> list:
    path = _require(config.workdir / f"ranked.{language}.tsv", "rank")
    return [c.phrase for c in read_ranked_tsv(path)]


def _candidate_terms_unranked(config: PipelineConfig, language: str) -> list:
    """Fall back to raw extraction counts when no reference exists for the
    language (targets usually have none)."""
    ranked = config.workdir / f"ranked.{language}.tsv"
    if ranked.exists():
        return [c.phrase for c in read_ranked_tsv(ranked)]
    extract_path = _require(config.workdir / f"extract.{language}.json", "extract")
    data = json.loads(extract_path.read_text(encoding="utf-8"))
    return sorted(
        [p for p, c in data["counts"].items() if c >= config.params.min_count],
        key=lambda p: (-data["counts"][p], p),
    )


def stage_translate(config: PipelineConfig) -> dict:
    """Produce top-k translation candidates for every pivot term candidate."""
    pivot_index = _load_index(config, f"corpus.{config.pivot}", "index")
    source_terms = _candidate_terms_unranked(config, config.pivot)
    restrict = config.params.collocate_pool != "content"
    source_vocab = (
        frozenset(w for t in source_terms for w in t.split()) if restrict else None
    )
    report = {"stage": "translate", "pairs": {}}
    for language in config.target_languages:
        lexicon_path = config.lexicons.get(language)
        if lexicon_path is None:
            continue
        lexicon = BilingualLexicon.from_tsv(
            config.resolve(lexicon_path), config.pivot, language
        )
        target_index = _load_index(config, f"corpus.{language}", "index")
        target_terms = _candidate_terms_unranked(config, language)
        target_vocab = (
            frozenset(w for t in target_terms for w in t.split()) if restrict else None
        )
        target_profiles = {
            term: collocate_profile(
                target_index, term, config.params.window, target_vocab
            )
            for term in target_terms
        }
        payload = {}
        for term in source_terms:
            profile = collocate_profile(
                pivot_index, term, config.params.window, source_vocab
            )
            cands = translation_candidates(
                profile,
                target_index,
                target_terms,
                lexicon,
                k=config.params.top_k,
                window=config.params.window,
                target_profiles=target_profiles,
            )
            payload[term] = [c.to_record() for c in cands]
        _write_json(
            config.workdir / f"translate.{config.pivot}-{language}.json",
            {
                "source_language": config.pivot,
                "target_language": language,
                "candidates": payload,
            },
        )
        report["pairs"][f"{config.pivot}-{language}"] = {
            "source_terms": len(source_terms),
            "with_candidates": sum(1 for v in payload.values() if v),
        }
    if not report["pairs"]:
        raise PipelineError("no lexicons configured; nothing to translate")
    _write_json(config.workdir / "reports" / "translate.json", report)
    return report


def _store_path(config: PipelineConfig) -> Path:
    return config.store or (config.workdir / "store.json")


def load_store(config: PipelineConfig) -> ThesaurusStore:
    path = _store_path(config)
    if path.exists():
        return ThesaurusStore.load(path)
    return ThesaurusStore(
        pivot_language=config.pivot,
        translation_languages=config.target_languages or DEFAULT_TRANSLATION_LANGUAGES,
    )


def stage_import(
    config: PipelineConfig,
    dataset: str | None = None,
    mapping_path: str | None = None,
    ranked: bool = False,
    editor: str = "import",
) -> dict:
    """Import a mapped dataset and/or load ranked term candidates into the
    store as entries awaiting review."""
    store = load_store(config)
    report = {"stage": "import"}
    if dataset is not None:
        mapping_file = mapping_path or config.import_mapping
        if mapping_file is None:
            raise PipelineError("import needs a mapping file (--mapping or config)")
        mapping_file = config.resolve(mapping_file)
        dataset_file = config.resolve(dataset)
        for path in (mapping_file, dataset_file):
            if not path.exists():
                raise PipelineError(f"import input {path} does not exist")
        mapping = ImportMapping.from_dict(
            yaml.safe_load(mapping_file.read_text(encoding="utf-8"))
        )
        result = store.import_dataset(dataset_file, mapping, editor=editor)
        report["dataset"] = result.to_record()
    if ranked:
        path = _require(config.workdir / f"ranked.{config.pivot}.tsv", "rank")
        created = skipped = 0
        existing_terms = {e.normalized_term for e in store.iter_entries()}
        for candidate in read_ranked_tsv(path):
            if candidate.phrase in existing_terms:
                skipped += 1
                continue
            store.upsert_entry(
                {
                    "term": candidate.phrase,
                    "status": "candidate",
                    "source": f"auto-extraction rank={candidate.rank:.4f}",
                    "reliability": 3,
                },
                editor=editor,
                summary="extracted candidate",
            )
            existing_terms.add(candidate.phrase)
            created += 1
        report["candidates"] = {"created": created, "skipped_existing": skipped}
    if dataset is None and not ranked:
        raise PipelineError("import needs --file or --ranked")
    store.save(_store_path(config))
    _write_json(config.workdir / "reports" / "import.json", report)
    return report


def stage_export_skos(config: PipelineConfig, output: str | None = None) -> dict:
    store_file = _store_path(config)
    _require(store_file, "import")
    store = ThesaurusStore.load(store_file)
    base = Path(output) if output else config.workdir / "thesaurus"
    base.parent.mkdir(parents=True, exist_ok=True)
    rdf_path = Path(str(base) + ".skos.rdf")
    jsonld_path = Path(str(base) + ".skos.jsonld")
    rdf_path.write_text(export_skos(store, "rdfxml"), encoding="utf-8")
    jsonld_path.write_text(export_skos(store, "jsonld"), encoding="utf-8")
    report = {
        "stage": "export-skos",
        "entries": len(store),
        "rdfxml": str(rdf_path),
        "jsonld": str(jsonld_path),
    }
    _write_json(config.workdir / "reports" / "export-skos.json", report)
    return report


def build_app_state(config: PipelineConfig):
    """Assemble the API server state from whatever artifacts exist.

    Suggestion endpoints prefer precomputed relate/translate artifacts and
    fall back to live computation over the loaded corpus indexes.
    """
    from .api import AppState, load_auth_tokens

    store = load_store(config)
    state = AppState(
        store=store,
        store_path=_store_path(config),
        window=config.params.window,
        top_k=config.params.top_k,
        examples_limit=config.params.examples_limit,
        lexsim_threshold=config.params.lexsim_threshold,
    )
    pivot_base = config.workdir / f"corpus.{config.pivot}"
    if Path(str(pivot_base) + ".vert").exists():
        state.index = CorpusIndex.load(pivot_base)
    for language in config.target_languages:
        base = config.workdir / f"corpus.{language}"
        if Path(str(base) + ".vert").exists():
            state.target_indexes[language] = CorpusIndex.load(base)
    state.grammar = load_grammar(config.resolve(config.grammar) if config.grammar else None)
    try:
        state.patterns = load_hypernym_patterns(
            config.pivot, config.patterns.get(config.pivot)
        )
    except Exception:
        state.patterns = None
    for language in config.languages:
        ranked = config.workdir / f"ranked.{language}.tsv"
        extracted = config.workdir / f"extract.{language}.json"
        if ranked.exists():
            state.term_candidates[language] = [c.phrase for c in read_ranked_tsv(ranked)]
        elif extracted.exists():
            data = json.loads(extracted.read_text(encoding="utf-8"))
            state.term_candidates[language] = sorted(
                p for p, c in data["counts"].items() if c >= config.params.min_count
            )
    relate_path = config.workdir / f"relate.{config.pivot}.json"
    if relate_path.exists():
        from .relations import RelationCandidate

        data = json.loads(relate_path.read_text(encoding="utf-8"))
        state.hypernym_candidates = [
            RelationCandidate(
                hyponym=r["hyponym"],
                hypernym=r["hypernym"],
                method=r["method"],
                score=r["score"],
                evidence=tuple(tuple(e) for e in r["evidence"]),
            )
            for r in data["candidates"]
        ]
    for language in config.target_languages:
        artifact = config.workdir / f"translate.{config.pivot}-{language}.json"
        if artifact.exists():
            data = json.loads(artifact.read_text(encoding="utf-8"))
            for term, cands in data["candidates"].items():
                state.translation_artifact.setdefault(term, {})[language] = cands
        lexicon_path = config.lexicons.get(language)
        if lexicon_path is not None and config.resolve(lexicon_path).exists():
            state.lexicons[language] = BilingualLexicon.from_tsv(
                config.resolve(lexicon_path), config.pivot, language
            )
    if config.auth is not None:
        state.auth_tokens = load_auth_tokens(config.auth)
    return state


def stage_eval_translations(config: PipelineConfig, k: int | None = None) -> dict:
    """Compare translation candidates with gold translations per language."""
    if not config.gold_translations:
        raise PipelineError("no gold_translations configured")
    k = k or config.params.top_k
    report = {"stage": "eval-translations", "k": k, "languages": {}}
    for language, gold_path in sorted(config.gold_translations.items()):
        artifact = _require(
            config.workdir / f"translate.{config.pivot}-{language}.json", "translate"
        )
        data = json.loads(artifact.read_text(encoding="utf-8"))
        candidates = {
            term: [c["target_term"] for c in cands]
            for term, cands in data["candidates"].items()
        }
        gold: dict = {}
        for line in config.resolve(gold_path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            gold[parts[0]] = set(parts[1:])
        hit_rate = evaluate_translations(gold, candidates, k=k)
        report["languages"][language] = {"gold_terms": len(gold), "hit_rate": hit_rate}
    _write_json(config.workdir / "reports" / "eval-translations.json", report)
    return report
