"""JSON HTTP API behavior against an in-process test client."""

import pytest
from fastapi.testclient import TestClient

from termforge.api import AppState, create_app
from termforge.corpus import build_corpus, concordance
from termforge.store import ThesaurusStore
from termforge.tokens import profile_for
from termforge.translations import collocate_profile, profile_cosine

from synth import paragraphs_to_documents

CLOCK = lambda: "2026-01-01T00:00:00+00:00"
EDITOR = {"Authorization": "Bearer tok-editor"}
TOKENS = {
    "tok-editor": {"name": "ed", "role": "editor"},
    "tok-reader": {"name": "ro", "role": "reader"},
}


@pytest.fixture()
def service(tmp_path):
    store = ThesaurusStore(clock=CLOCK)
    # "coordinate system" and "map" share the collocate "survey", so the
    # related-terms cosine between them is positive.
    paragraphs = [
        "the survey of the coordinate system",
        "the survey of the map",
        "a cartesian system is a coordinate system",
        "the cadastral map of the district",
    ]
    index = build_corpus(paragraphs_to_documents(paragraphs, "en"), profile_for("en"))
    state = AppState(
        store=store,
        store_path=tmp_path / "store.json",
        index=index,
        term_candidates={"en": ["coordinate system", "cartesian system", "map",
                                "cadastral map", "district"]},
        auth_tokens=dict(TOKENS),
    )
    client = TestClient(create_app(state))
    return client, store, state


def test_search_ranking(service):
    client, store, _ = service
    store.upsert_entry({"term": "map"}, editor="x")
    store.upsert_entry({"term": "map sheet"}, editor="x")
    store.upsert_entry({"term": "cadastral map"}, editor="x")
    body = client.get("/entries", params={"q": "map"}).json()
    terms = [r["term"] for r in body["results"]]
    assert terms[0] == "map"            # exact
    assert terms[1] == "map sheet"      # prefix
    assert body["total"] >= 2


def test_search_misspelling_surfaces_entry(service):
    client, store, _ = service
    store.upsert_entry({"term": "katastrální mapa"}, editor="x")
    body = client.get("/entries", params={"q": "katastralní mapa"}).json()
    assert body["results"]
    assert body["results"][0]["term"] == "katastrální mapa"


def test_search_candidates_flag(service):
    client, store, _ = service
    store.upsert_entry({"term": "hidden term", "status": "candidate"}, editor="x")
    without = client.get("/entries", params={"q": "hidden term"}).json()
    with_flag = client.get(
        "/entries", params={"q": "hidden term", "include_candidates": "true"}
    ).json()
    assert without["results"] == []
    assert with_flag["results"][0]["term"] == "hidden term"


def test_entry_detail_examples_match_concordance(service):
    client, store, state = service
    eid = store.upsert_entry({"term": "coordinate system"}, editor="x")
    detail = client.get(f"/entries/{eid}").json()
    expected = concordance(state.index, "coordinate system", state.window)
    assert len(detail["examples"]) == len(expected)
    for got, line in zip(detail["examples"], expected):
        assert got["match"] == " ".join(line.match)
        assert got["doc_id"] == line.doc_id
    assert detail["entry"]["term"] == "coordinate system"


def test_entry_detail_multi_parent_paths(service):
    client, store, _ = service
    a = store.upsert_entry({"term": "parent a"}, editor="x")
    b = store.upsert_entry({"term": "parent b"}, editor="x")
    c = store.upsert_entry({"term": "child", "broader": [a, b]}, editor="x")
    detail = client.get(f"/entries/{c}").json()
    assert {p["id"] for p in detail["broader_terms"]} == {a, b}


def test_entry_not_found(service):
    client, _, _ = service
    response = client.get("/entries/zzz")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "not_found"


def test_related_terms_cosine_oracle(service):
    client, store, state = service
    eid = store.upsert_entry({"term": "coordinate system"}, editor="x")
    store.upsert_entry({"term": "map"}, editor="x")
    related = client.get(f"/entries/{eid}/related").json()["related"]

    base = collocate_profile(state.index, "coordinate system", state.window)
    for item in related:
        other = collocate_profile(state.index, item["term"], state.window)
        assert item["similarity"] == pytest.approx(profile_cosine(base, other))
    assert any(r["in_store"] for r in related if r["term"] == "map")


def test_related_symmetry(service):
    _, _, state = service
    a = collocate_profile(state.index, "map", state.window)
    b = collocate_profile(state.index, "coordinate system", state.window)
    assert profile_cosine(a, b) == profile_cosine(b, a)


def test_suggestions_endpoint(service):
    client, store, _ = service
    store.upsert_entry({"term": "coordinate system"}, editor="x")
    eid = store.upsert_entry(
        {"term": "cartesian coordinate system", "status": "candidate"}, editor="x"
    )
    body = client.get(f"/entries/{eid}/suggestions").json()
    hypernyms = {h["hypernym"]: h for h in body["hypernyms"]}
    assert "coordinate system" in hypernyms
    assert hypernyms["coordinate system"]["store_ids"]


def test_mutations_require_editor(service):
    client, _, _ = service
    assert client.post("/entries", json={"term": "x"}).status_code == 403
    bad = client.post("/entries", json={"term": "x"},
                      headers={"Authorization": "Bearer wrong"})
    assert bad.status_code == 401
    reader = client.post("/entries", json={"term": "x"},
                         headers={"Authorization": "Bearer tok-reader"})
    assert reader.status_code == 403


def test_create_and_update_entry(service):
    client, store, _ = service
    created = client.post("/entries", json={"term": "new term"}, headers=EDITOR).json()
    eid = created["id"]
    assert store.get(eid).term == "new term"
    updated = client.put(
        f"/entries/{eid}",
        json={"variants": ["nt"], "expected_revision": 1},
        headers=EDITOR,
    )
    assert updated.status_code == 200
    stale = client.put(
        f"/entries/{eid}",
        json={"variants": ["other"], "expected_revision": 1},
        headers=EDITOR,
    )
    assert stale.status_code == 409
    assert stale.json()["error"]["code"] == "conflict"


def test_review_flow_and_double_review(service):
    client, store, _ = service
    parent1 = store.upsert_entry({"term": "parent one"}, editor="x")
    parent2 = store.upsert_entry({"term": "parent two"}, editor="x")
    cand = store.upsert_entry({"term": "fresh term", "status": "candidate",
                               "source": "auto-extraction rank=7.5"}, editor="x")

    queue = client.get("/candidates").json()
    assert queue["results"][0]["id"] == cand
    assert queue["results"][0]["rank"] == 7.5

    ok = client.post(
        f"/candidates/{cand}/review",
        json={"decision": "approve", "broader": [parent1, parent2]},
        headers=EDITOR,
    )
    assert ok.status_code == 200
    tree = client.get("/tree").json()["tree"]
    under = {
        node["term"]: [c["id"] for c in node["children"]] for node in tree
    }
    assert under["parent one"] == [cand]
    assert under["parent two"] == [cand]

    double = client.post(
        f"/candidates/{cand}/review", json={"decision": "reject"}, headers=EDITOR
    )
    assert double.status_code == 409
    assert double.json()["error"]["code"] == "review_state"


def test_cycle_rejected_through_api(service):
    client, store, _ = service
    a = store.upsert_entry({"term": "a"}, editor="x")
    b = store.upsert_entry({"term": "b", "broader": [a]}, editor="x")
    response = client.put(f"/entries/{a}", json={"broader": [b]}, headers=EDITOR)
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "cycle"


def test_statelessness(service):
    client, store, _ = service
    store.upsert_entry({"term": "coordinate system"}, editor="x")
    for path in ("/entries?q=system", "/tree", "/export/skos", "/export/dump"):
        first = client.get(path)
        second = client.get(path)
        assert first.content == second.content


def test_pagination(service):
    client, store, _ = service
    for i in range(7):
        store.upsert_entry({"term": f"term {i:02d}"}, editor="x")
    page1 = client.get("/entries", params={"page_size": 3}).json()
    page3 = client.get("/entries", params={"page_size": 3, "page": 3}).json()
    assert len(page1["results"]) == 3
    assert page1["total"] == 7
    assert len(page3["results"]) == 1


def test_skos_endpoint_content_type(service):
    client, _, _ = service
    rdf = client.get("/export/skos")
    assert rdf.headers["content-type"].startswith("application/rdf+xml")
    assert rdf.text.startswith("<?xml")
    jsonld = client.get("/export/skos", params={"fmt": "jsonld"})
    assert jsonld.headers["content-type"].startswith("application/ld+json")


def test_store_persisted_after_mutation(service, tmp_path):
    client, _, state = service
    client.post("/entries", json={"term": "persisted"}, headers=EDITOR)
    loaded = ThesaurusStore.load(state.store_path)
    assert loaded.ids_by_term("persisted")
