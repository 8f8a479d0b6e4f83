"""SKOS serialization of the thesaurus (RDF/XML and a JSON-LD-style form).

Every entry becomes one skos:Concept with id-based IRIs; labels carry
language tags (pivot-language preferred label, translations as labels in
their languages, variants as alternative labels).  Fields SKOS has no place
for (status, reliability, categorized explanations) ride in a small custom
namespace so an export can be re-imported without loss.  The serializers are
byte-deterministic: same store, same bytes.

The candidate-category system node is not exported; candidate status is, and
re-importing restores the node membership.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .errors import StoreError
from .store import (
    CANDIDATE_ROOT_ID,
    STATUS_CANDIDATE,
    Explanation,
    Revision,
    ThesaurusEntry,
    ThesaurusStore,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
DCT_NS = "http://purl.org/dc/terms/"
TF_NS = "urn:x-termforge:schema#"

DEFAULT_BASE_IRI = "urn:x-thesaurus:"
SCHEME_ID = "scheme"


def _iri(base: str, entry_id: str) -> str:
    return base + entry_id


def _id_from_iri(iri: str) -> str:
    return re.split(r"[:/#]", iri)[-1]


def export_skos(store: ThesaurusStore, fmt: str = "rdfxml", base_iri: str = DEFAULT_BASE_IRI) -> str:
    """Serialize the store; ``fmt`` is ``rdfxml`` or ``jsonld``."""
    if fmt == "rdfxml":
        return _export_rdfxml(store, base_iri)
    if fmt == "jsonld":
        return _export_jsonld(store, base_iri)
    raise ValueError(f"unknown SKOS format {fmt!r}")


def _exportable_entries(store: ThesaurusStore) -> list:
    entries = store.iter_entries()
    entries.sort(key=lambda e: e.id)
    return entries


def _entry_broader(entry: ThesaurusEntry) -> list:
    return [b for b in entry.broader if b != CANDIDATE_ROOT_ID]


def _entry_narrower(store: ThesaurusStore, entry: ThesaurusEntry) -> list:
    return [n for n in entry.narrower if n != CANDIDATE_ROOT_ID]


def _export_rdfxml(store: ThesaurusStore, base: str) -> str:
    pivot = store.pivot_language
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append(
        "<rdf:RDF"
        f' xmlns:rdf="{RDF_NS}"'
        f' xmlns:skos="{SKOS_NS}"'
        f' xmlns:dct="{DCT_NS}"'
        f' xmlns:tf="{TF_NS}">'
    )
    out.append(f"  <skos:ConceptScheme rdf:about={quoteattr(_iri(base, SCHEME_ID))}>")
    out.append(f"    <dct:language>{escape(pivot)}</dct:language>")
    out.append(
        "    <tf:translationLanguages>%s</tf:translationLanguages>"
        % escape(" ".join(store.translation_languages))
    )
    out.append("  </skos:ConceptScheme>")

    for entry in _exportable_entries(store):
        out.append(f"  <skos:Concept rdf:about={quoteattr(_iri(base, entry.id))}>")
        out.append(
            f'    <skos:prefLabel xml:lang="{pivot}">{escape(entry.term)}</skos:prefLabel>'
        )
        for variant in entry.variants:
            out.append(
                f'    <skos:altLabel xml:lang="{pivot}">{escape(variant)}</skos:altLabel>'
            )
        for lang in sorted(entry.translations):
            phrases = entry.translations[lang]
            for i, phrase in enumerate(phrases):
                element = "skos:prefLabel" if i == 0 else "skos:altLabel"
                out.append(
                    f'    <{element} xml:lang="{lang}">{escape(phrase)}</{element}>'
                )
        if entry.explanations:
            first = entry.explanations[0]
            out.append(
                f'    <skos:definition xml:lang="{pivot}">{escape(first.text)}</skos:definition>'
            )
        for exp in entry.explanations:
            out.append('    <tf:explanation rdf:parseType="Resource">')
            out.append(f"      <tf:text>{escape(exp.text)}</tf:text>")
            if exp.category:
                out.append(f"      <tf:topic>{escape(exp.category)}</tf:topic>")
            out.append("    </tf:explanation>")
        for parent_id in _entry_broader(entry):
            out.append(f"    <skos:broader rdf:resource={quoteattr(_iri(base, parent_id))}/>")
        for child_id in _entry_narrower(store, entry):
            out.append(f"    <skos:narrower rdf:resource={quoteattr(_iri(base, child_id))}/>")
        if entry.source:
            out.append(f"    <dct:source>{escape(entry.source)}</dct:source>")
        out.append(f"    <tf:status>{escape(entry.status)}</tf:status>")
        out.append(f"    <tf:reliability>{entry.reliability}</tf:reliability>")
        out.append(f"    <skos:inScheme rdf:resource={quoteattr(_iri(base, SCHEME_ID))}/>")
        out.append("  </skos:Concept>")
    out.append("</rdf:RDF>")
    return "\n".join(out) + "\n"


def _export_jsonld(store: ThesaurusStore, base: str) -> str:
    pivot = store.pivot_language
    graph = [
        {
            "@id": _iri(base, SCHEME_ID),
            "@type": "skos:ConceptScheme",
            "dct:language": pivot,
            "tf:translationLanguages": " ".join(store.translation_languages),
        }
    ]
    for entry in _exportable_entries(store):
        labels = [{"@language": pivot, "@value": entry.term}]
        alt_labels = [{"@language": pivot, "@value": v} for v in entry.variants]
        for lang in sorted(entry.translations):
            phrases = entry.translations[lang]
            if phrases:
                labels.append({"@language": lang, "@value": phrases[0]})
                alt_labels.extend({"@language": lang, "@value": p} for p in phrases[1:])
        node = {
            "@id": _iri(base, entry.id),
            "@type": "skos:Concept",
            "skos:prefLabel": labels,
            "skos:altLabel": alt_labels,
            "skos:definition": (
                [{"@language": pivot, "@value": entry.explanations[0].text}]
                if entry.explanations
                else []
            ),
            "tf:explanation": [
                {"tf:text": e.text, "tf:topic": e.category} for e in entry.explanations
            ],
            "skos:broader": [{"@id": _iri(base, b)} for b in _entry_broader(entry)],
            "skos:narrower": [
                {"@id": _iri(base, n)} for n in _entry_narrower(store, entry)
            ],
            "dct:source": entry.source,
            "tf:status": entry.status,
            "tf:reliability": entry.reliability,
            "skos:inScheme": {"@id": _iri(base, SCHEME_ID)},
        }
        graph.append(node)
    doc = {
        "@context": {
            "skos": SKOS_NS,
            "dct": DCT_NS,
            "tf": TF_NS,
        },
        "@graph": graph,
    }
    return json.dumps(doc, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def import_skos(text: str, clock=None) -> ThesaurusStore:
    """Rebuild a store from a SKOS document produced by :func:`export_skos`.

    Entry ids are preserved, narrower links are re-derived from broader, and
    each entry gets a fresh import revision.  Raises :class:`StoreError` on
    structural problems (the result is validated before it is returned).
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        concepts, scheme = _parse_jsonld(json.loads(text))
    else:
        concepts, scheme = _parse_rdfxml(text)

    pivot = scheme.get("language", "cs")
    translation_languages = tuple(
        scheme.get("translation_languages", "").split()
    ) or ("en", "de", "fr", "ru", "sk")
    store = ThesaurusStore(
        pivot_language=pivot, translation_languages=translation_languages, clock=clock
    )

    for concept in concepts:
        entry_id = concept["id"]
        if entry_id == CANDIDATE_ROOT_ID:
            continue
        labels = concept["pref_labels"]
        term = labels.get(pivot)
        if term is None:
            raise StoreError(f"concept {entry_id} has no preferred label in {pivot!r}")
        translations: dict = {}
        for lang, phrase in sorted(labels.items()):
            if lang != pivot:
                translations.setdefault(lang, []).append(phrase)
        variants = []
        for lang, phrase in concept["alt_labels"]:
            if lang == pivot:
                variants.append(phrase)
            else:
                translations.setdefault(lang, []).append(phrase)
        explanations = concept["explanations"]
        if not explanations and concept.get("definition"):
            explanations = [Explanation(concept["definition"], "")]
        status = concept.get("status") or "approved"
        broader = [b for b in concept["broader"] if b != CANDIDATE_ROOT_ID]
        if status == STATUS_CANDIDATE:
            broader = [CANDIDATE_ROOT_ID]
        entry = ThesaurusEntry(
            id=entry_id,
            term=term,
            variants=variants,
            explanations=explanations,
            translations=translations,
            broader=broader,
            status=status,
            source=concept.get("source", ""),
            reliability=int(concept.get("reliability", 3)),
            revisions=[Revision(store._clock(), "skos-import", "imported")],
        )
        store._entries[entry.id] = entry
        store._index_term(entry)

    # Re-derive the inverse relation instead of trusting skos:narrower.
    for entry in store._entries.values():
        entry.narrower = []
    for entry in store._entries.values():
        for parent_id in entry.broader:
            parent = store._entries.get(parent_id)
            if parent is None:
                raise StoreError(f"{entry.id}: broader {parent_id} is not in the document")
            parent.narrower.append(entry.id)
    for entry in store._entries.values():
        entry.narrower.sort()

    problems = store.validate()
    if problems:
        raise StoreError("imported SKOS violates invariants: " + "; ".join(problems[:5]))
    return store


def _parse_rdfxml(text: str):
    root = ET.fromstring(text)
    scheme: dict = {}
    concepts = []
    for node in root:
        tag = node.tag
        if tag == f"{{{SKOS_NS}}}ConceptScheme":
            lang = node.find(f"{{{DCT_NS}}}language")
            langs = node.find(f"{{{TF_NS}}}translationLanguages")
            scheme["language"] = lang.text if lang is not None else None
            scheme["translation_languages"] = langs.text if langs is not None else ""
            continue
        if tag != f"{{{SKOS_NS}}}Concept":
            continue
        about = node.attrib.get(f"{{{RDF_NS}}}about", "")
        concept = {
            "id": _id_from_iri(about),
            "pref_labels": {},
            "alt_labels": [],
            "explanations": [],
            "definition": None,
            "broader": [],
            "status": None,
            "source": "",
            "reliability": 3,
        }
        for child in node:
            ctag = child.tag
            lang = child.attrib.get("{http://www.w3.org/XML/1998/namespace}lang", "")
            if ctag == f"{{{SKOS_NS}}}prefLabel":
                concept["pref_labels"][lang] = child.text or ""
            elif ctag == f"{{{SKOS_NS}}}altLabel":
                concept["alt_labels"].append((lang, child.text or ""))
            elif ctag == f"{{{SKOS_NS}}}definition":
                concept["definition"] = child.text or ""
            elif ctag == f"{{{TF_NS}}}explanation":
                text_node = child.find(f"{{{TF_NS}}}text")
                topic_node = child.find(f"{{{TF_NS}}}topic")
                concept["explanations"].append(
                    Explanation(
                        text_node.text or "" if text_node is not None else "",
                        topic_node.text or "" if topic_node is not None else "",
                    )
                )
            elif ctag == f"{{{SKOS_NS}}}broader":
                concept["broader"].append(
                    _id_from_iri(child.attrib.get(f"{{{RDF_NS}}}resource", ""))
                )
            elif ctag == f"{{{DCT_NS}}}source":
                concept["source"] = child.text or ""
            elif ctag == f"{{{TF_NS}}}status":
                concept["status"] = child.text or ""
            elif ctag == f"{{{TF_NS}}}reliability":
                concept["reliability"] = int(child.text or "3")
        concepts.append(concept)
    return concepts, scheme


def _parse_jsonld(doc: dict):
    scheme: dict = {}
    concepts = []
    for node in doc.get("@graph", []):
        if node.get("@type") == "skos:ConceptScheme":
            scheme["language"] = node.get("dct:language")
            scheme["translation_languages"] = node.get("tf:translationLanguages", "")
            continue
        if node.get("@type") != "skos:Concept":
            continue
        pref_labels = {}
        for label in node.get("skos:prefLabel", []):
            pref_labels[label["@language"]] = label["@value"]
        alt_labels = [
            (label["@language"], label["@value"]) for label in node.get("skos:altLabel", [])
        ]
        definitions = node.get("skos:definition", [])
        concepts.append(
            {
                "id": _id_from_iri(node["@id"]),
                "pref_labels": pref_labels,
                "alt_labels": alt_labels,
                "explanations": [
                    Explanation(e.get("tf:text", ""), e.get("tf:topic", ""))
                    for e in node.get("tf:explanation", [])
                ],
                "definition": definitions[0]["@value"] if definitions else None,
                "broader": [_id_from_iri(b["@id"]) for b in node.get("skos:broader", [])],
                "status": node.get("tf:status"),
                "source": node.get("dct:source", ""),
                "reliability": node.get("tf:reliability", 3),
            }
        )
    return concepts, scheme


def stores_isomorphic(a: ThesaurusStore, b: ThesaurusStore) -> bool:
    """Entry-set equality up to revision history (ids preserved by export)."""
    return _projection(a) == _projection(b)


def _projection(store: ThesaurusStore):
    proj = {}
    for entry in store.iter_entries():
        proj[entry.id] = (
            entry.term,
            tuple(entry.variants),
            tuple((e.text, e.category) for e in entry.explanations),
            tuple(sorted((k, tuple(v)) for k, v in entry.translations.items() if v)),
            tuple(sorted(entry.broader)),
            tuple(sorted(entry.narrower)),
            entry.status,
            entry.source,
            entry.reliability,
        )
    return proj
