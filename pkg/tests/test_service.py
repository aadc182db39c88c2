import warnings

import pytest

from socnetkit.service.app import create_app

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient


DOCS = [
    {"id": "d1", "url": "http://a.b/x", "title": "ann may meets bo lee",
     "body": "they talk about mining graphs"},
    {"id": "d2", "url": "http://a.b/y", "title": "bo lee alone",
     "body": "bo lee writes about mining"},
    {"id": "d3", "url": "http://c.d/z", "title": "ann may news",
     "body": "ann may studies graphs daily"},
]


@pytest.fixture()
def client():
    with TestClient(create_app()) as test_client:
        yield test_client


@pytest.fixture()
def corpus_id(client):
    response = client.post("/corpora", json={"documents": DOCS})
    assert response.status_code == 200
    return response.json()["corpus_id"]


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_ingest_manifest_and_dedup(client):
    first = client.post("/corpora", json={"documents": DOCS}).json()
    second = client.post("/corpora", json={"documents": DOCS}).json()
    assert first["corpus_id"] == second["corpus_id"]
    assert first["manifest"]["n_documents"] == 3
    assert first["manifest"]["checksum"].startswith("sha256:")
    assert first["artifact_json"] is None


def test_ingest_with_artifact(client):
    body = client.post(
        "/corpora", json={"documents": DOCS, "include_artifact": True}
    ).json()
    assert body["artifact_json"].startswith("{")
    import hashlib

    digest = hashlib.sha256(body["artifact_json"].encode()).hexdigest()
    assert body["manifest"]["checksum"] == f"sha256:{digest}"


def test_ingest_duplicate_doc_id_is_400(client):
    docs = [DOCS[0], DOCS[0]]
    response = client.post("/corpora", json={"documents": docs})
    assert response.status_code == 400
    assert response.json()["error"] == "DuplicateDocumentError"


def test_manifest_endpoint(client, corpus_id):
    body = client.get(f"/corpora/{corpus_id}").json()
    assert body["n_documents"] == 3


def test_unknown_corpus_is_404(client):
    assert client.get("/corpora/nope").status_code == 404
    response = client.post("/corpora/nope/phrase-hits", json={"phrase": "x"})
    assert response.status_code == 404


def test_phrase_hits_endpoint(client, corpus_id):
    body = client.post(
        f"/corpora/{corpus_id}/phrase-hits", json={"phrase": "ann may"}
    ).json()
    assert body["hits"] == 2


def test_phrase_hits_empty_phrase_is_400(client, corpus_id):
    response = client.post(f"/corpora/{corpus_id}/phrase-hits", json={"phrase": " "})
    assert response.status_code == 400
    assert response.json()["error"] == "InvalidQueryError"


def test_co_hits_endpoint(client, corpus_id):
    body = client.post(
        f"/corpora/{corpus_id}/co-hits",
        json={"phrase_a": "ann may", "phrase_b": "bo lee"},
    ).json()
    assert body == {"singleton_a": 2, "singleton_b": 2, "doubleton": 1}


def test_search_endpoint(client, corpus_id):
    body = client.post(
        f"/corpora/{corpus_id}/search", json={"query": '"ann may"', "max_results": 1}
    ).json()
    assert len(body["snippets"]) == 1
    assert body["snippets"][0]["rank"] == 1


def test_hit_probability_endpoint(client, corpus_id):
    body = client.post(
        f"/corpora/{corpus_id}/hit-probability", json={"phrase": "mining"}
    ).json()
    assert body["probability"] == pytest.approx(2 / 3)


def test_keyword_endpoint(client, corpus_id):
    body = client.post(
        f"/corpora/{corpus_id}/keywords", json={"actor": "ann may"}
    ).json()
    assert body["actor"] == "ann may"
    assert body["rows"]
    words = {row["word"] for row in body["rows"]}
    assert "graphs" in words
    assert "ann" not in words
    for row in body["rows"]:
        assert row["delta"] >= 0.0


def test_build_query_endpoint(client):
    body = client.post(
        "/queries/build",
        json={"actor_a": "Ann May", "actor_b": "Bo Lee",
              "keywords": ["mining", "graphs"], "mode": "K1K2"},
    ).json()
    assert body["query"] == '"Ann May" "Bo Lee" mining graphs'


def test_build_query_missing_keyword_is_400(client):
    response = client.post(
        "/queries/build",
        json={"actor_a": "A", "actor_b": "B", "keywords": [], "mode": "K1"},
    )
    assert response.status_code == 400
    assert response.json()["error"] == "MissingKeywordError"


def test_request_validation_is_422(client, corpus_id):
    response = client.post(f"/corpora/{corpus_id}/search", json={"bad": "payload"})
    assert response.status_code == 422


def test_extract_srs(client, corpus_id):
    body = client.post(
        "/extract",
        json={"corpus_id": corpus_id, "seeds": ["ann may", "bo lee"], "method": "srs"},
    ).json()
    assert len(body["graph"]["nodes"]) == 2
    assert len(body["graph"]["edges"]) == 1
    assert body["scores"][0]["score"] == pytest.approx(1 / 3)


def test_extract_ars_with_inline_records(client):
    records = [
        {"record_id": "r1", "title": "t", "authors": ["Ann May", "Bo Lee"],
         "venue": "V", "year": 2004},
        {"record_id": "r2", "title": "t", "authors": ["Bo Lee", "Cy Kim"],
         "venue": "V", "year": 2005},
    ]
    body = client.post(
        "/extract",
        json={"seeds": ["Ann May"], "method": "ARS", "records": records},
    ).json()
    names = {node["name"] for node in body["graph"]["nodes"]}
    assert names == {"Ann May", "Bo Lee"}
    assert len(body["graph"]["edges"]) == 1


def test_extract_ars_without_records_is_400(client):
    response = client.post("/extract", json={"seeds": ["Ann May"], "method": "ARS"})
    assert response.status_code == 400


def test_extract_respects_alpha_override(client, corpus_id):
    body = client.post(
        "/extract",
        json={"corpus_id": corpus_id, "seeds": ["ann may", "bo lee"],
              "method": "SRS", "alpha": 0.99},
    ).json()
    assert body["graph"]["edges"] == []


def test_extract_rejects_bad_config(client, corpus_id):
    response = client.post(
        "/extract",
        json={"corpus_id": corpus_id, "seeds": ["a", "b"], "method": "SRS",
              "config": {"keyword_cap": 0}},
    )
    assert response.status_code == 400
    assert response.json()["error"] == "ConfigError"


def test_evaluate_endpoint(client, corpus_id):
    graph = client.post(
        "/extract",
        json={"corpus_id": corpus_id, "seeds": ["ann may", "bo lee"], "method": "SRS"},
    ).json()["graph"]
    body = client.post("/evaluate", json={"graph": graph, "benchmark": graph}).json()
    assert body["sim_g"] == 1.0
    assert body["undefined"] == []


def test_evaluate_flags_undefined(client):
    empty = {"nodes": [{"id": "n0", "name": "a", "labels": []}], "edges": []}
    body = client.post("/evaluate", json={"graph": empty, "benchmark": empty}).json()
    assert body["sim_g"] is None
    assert "precision" in body["undefined"]
