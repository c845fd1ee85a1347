import json

import pytest
from fastapi.testclient import TestClient

from evmatrix.service import create_app


@pytest.fixture
def client(small_synthetic, tmp_path, monkeypatch):
    # matrices land in the shared data dir; isolate per test via copy
    import shutil

    data = tmp_path / "data"
    shutil.copytree(small_synthetic, data)
    return TestClient(create_app(data))


@pytest.fixture
def matrix_id(client):
    return client.post("/matrices", json={"seed_id": "SR0000"}).json()["matrix_id"]


def test_corpus_stats(client):
    r = client.get("/corpora/fixture/stats")
    assert r.status_code == 200
    body = r.json()
    assert body["n_documents"] == 40
    assert body["type_counts"]["systematic_review"] >= 1
    assert client.get("/corpora/other/stats").status_code == 404


def test_create_and_get_matrix(client):
    r = client.post("/matrices", json={"seed_id": "SR0000"})
    assert r.status_code == 201
    body = r.json()
    assert body["seed_id"] == "SR0000"
    assert body["rows"][0] == "SR0000"
    assert body["last_seq"] == 1
    mid = body["matrix_id"]
    assert client.get(f"/matrices/{mid}").json()["matrix_id"] == mid
    listed = client.get("/matrices").json()["items"]
    assert [m["matrix_id"] for m in listed] == [mid]


def test_create_matrix_bad_seed(client):
    assert client.post("/matrices", json={"seed_id": "missing"}).status_code == 404
    assert client.post("/matrices", json={}).status_code == 400
    # a primary study cannot seed a matrix
    assert client.post("/matrices", json={"seed_id": "PS0001"}).status_code == 400


def test_unknown_matrix_404(client):
    assert client.get("/matrices/nope").status_code == 404
    assert client.get("/matrices/nope/ranking").status_code == 404


def test_ranking_scopes_and_shape(client, matrix_id):
    r = client.get(f"/matrices/{matrix_id}/ranking?scope=all")
    assert r.status_code == 200
    items = r.json()["items"]
    assert {"doc_id", "score", "predicted_label", "confidence"} <= set(items[0])
    scores = [i["score"] for i in items]
    assert scores == sorted(scores, reverse=True)
    # unknown scope excludes the (relevant) seed
    unknown = client.get(f"/matrices/{matrix_id}/ranking?scope=unknown").json()["items"]
    assert all(i["doc_id"] != "SR0000" for i in unknown)
    assert len(unknown) == len(items) - 1
    assert client.get(f"/matrices/{matrix_id}/ranking?scope=bad").status_code == 400


def test_read_your_write_classify(client, matrix_id):
    doc = client.get(f"/matrices/{matrix_id}/ranking?scope=unknown").json()["items"][0]["doc_id"]
    r = client.post(f"/matrices/{matrix_id}/classify", json={"doc_id": doc, "label": "relevant"})
    assert r.status_code == 200
    assert client.get(f"/matrices/{matrix_id}").json()["labels"][doc] == "relevant"
    unknown_ids = [i["doc_id"] for i in
                   client.get(f"/matrices/{matrix_id}/ranking?scope=unknown").json()["items"]]
    assert doc not in unknown_ids


def test_classify_errors(client, matrix_id):
    assert client.post(f"/matrices/{matrix_id}/classify",
                       json={"doc_id": "nope", "label": "relevant"}).status_code == 404
    assert client.post(f"/matrices/{matrix_id}/classify",
                       json={"doc_id": "PS0001", "label": "bogus"}).status_code == 400
    assert client.post(f"/matrices/{matrix_id}/classify", json={}).status_code == 400


def test_stale_seq_precondition_409(client, matrix_id):
    doc = "PS0001"
    ok = client.post(f"/matrices/{matrix_id}/classify",
                     json={"doc_id": doc, "label": "relevant", "if_seq": 1})
    assert ok.status_code == 200
    stale = client.post(f"/matrices/{matrix_id}/classify",
                        json={"doc_id": doc, "label": "unknown", "if_seq": 1})
    assert stale.status_code == 409


def test_boost_roundtrip_and_errors(client, matrix_id):
    r = client.post(f"/matrices/{matrix_id}/boost", json={"term": "statin", "delta_steps": 3})
    assert r.status_code == 200
    assert r.json()["multiplier"] == pytest.approx(1.3)
    assert client.post(f"/matrices/{matrix_id}/boost",
                       json={"term": "zzz", "delta_steps": 1}).status_code == 400
    assert client.post(f"/matrices/{matrix_id}/boost",
                       json={"term": "statin"}).status_code == 400


def test_suggestions_disjoint(client, matrix_id):
    r = client.get(f"/matrices/{matrix_id}/suggestions?k=7")
    assert r.status_code == 200
    body = r.json()
    rel = {d["doc_id"] for d in body["predicted_relevant"]}
    irr = {d["doc_id"] for d in body["predicted_non_relevant"]}
    assert len(rel) == 7 and len(irr) == 7
    assert not rel & irr


def test_projection_endpoint_all_methods(client, matrix_id):
    for method in ("pca", "mds", "tsne"):
        r = client.get(f"/matrices/{matrix_id}/projection?method={method}")
        assert r.status_code == 200, method
        body = r.json()
        coords = body["coords"]
        n_docs = len(client.get(f"/matrices/{matrix_id}").json()["labels"])
        assert len(coords) == n_docs
        assert all(abs(x) <= 1.0 + 1e-12 and abs(y) <= 1.0 + 1e-12
                   for x, y in coords.values())
    # lda with a single labeled doc falls back to pca
    r = client.get(f"/matrices/{matrix_id}/projection?method=lda")
    assert r.json()["quality"].get("fallback") == "pca"
    assert client.get(f"/matrices/{matrix_id}/projection?method=umap").status_code == 400


def test_projection_centroids_present_for_linear_methods(client, matrix_id):
    pca = client.get(f"/matrices/{matrix_id}/projection?method=pca").json()
    assert pca["centroids"]["relevant"] is not None
    assert pca["centroids"]["non_relevant"] is None  # q_irr still zero
    tsne = client.get(f"/matrices/{matrix_id}/projection?method=tsne").json()
    assert tsne["centroids"] == {"relevant": None, "non_relevant": None}


def test_keywords_relevant_and_selection(client, matrix_id):
    r = client.get(f"/matrices/{matrix_id}/keywords?set=relevant&method=frequent&k=10")
    assert r.status_code == 200
    assert r.json()["method"] == "frequent"
    assert len(r.json()["terms"]) <= 10

    r = client.get(
        f"/matrices/{matrix_id}/keywords?set=relevant&method=relevance&k=10&lambda=0.5"
    )
    assert r.status_code == 200
    assert r.json()["lambda"] == 0.5

    sel = client.post(
        f"/matrices/{matrix_id}/keywords?method=frequent&k=5",
        json={"doc_ids": ["PS0001", "PS0002"]},
    )
    assert sel.status_code == 200
    assert client.post(f"/matrices/{matrix_id}/keywords?method=frequent",
                       json={"doc_ids": ["ghost"]}).status_code == 404
    assert client.get(f"/matrices/{matrix_id}/keywords?set=selection").status_code == 400


def test_document_detail_and_highlight(client, matrix_id):
    plain = client.get("/documents/PS0001")
    assert plain.status_code == 200
    assert plain.json()["type"] == "primary_study"
    assert "prediction" not in plain.json()

    with_model = client.get(f"/documents/PS0001?matrix={matrix_id}&highlight=true")
    body = with_model.json()
    assert body["prediction"]["label"] in ("relevant", "non_relevant")
    spans = body["highlight"]["spans"]
    text = body["highlight"]["text"]
    for s, e, polarity in spans:
        assert polarity in ("relevant", "non_relevant")
        assert text[s:e].lower() == text[s:e].lower().strip()

    assert client.get("/documents/ghost").status_code == 404
    assert client.get("/documents/PS0001?highlight=true").status_code == 400


def test_export_json_and_csv(client, matrix_id):
    client.post(f"/matrices/{matrix_id}/classify", json={"doc_id": "PS0001", "label": "relevant"})
    full = client.get(f"/matrices/{matrix_id}/export?only_relevant=false").json()
    assert "PS0001" in full["cols"]
    only = client.get(f"/matrices/{matrix_id}/export?only_relevant=true").json()
    assert only["rows"] == ["SR0000"]
    assert only["cols"] == ["PS0001"]
    csv_text = client.get(f"/matrices/{matrix_id}/export?format=csv").text
    header = csv_text.splitlines()[0]
    assert header.startswith(",")


def test_replay_after_restart_is_byte_identical(small_synthetic, tmp_path):
    import shutil

    data = tmp_path / "data"
    shutil.copytree(small_synthetic, data)
    client = TestClient(create_app(data))
    mid = client.post("/matrices", json={"seed_id": "SR0000"}).json()["matrix_id"]
    for doc, label in [("PS0003", "relevant"), ("PS0005", "non_relevant"),
                       ("PS0001", "relevant")]:
        client.post(f"/matrices/{mid}/classify", json={"doc_id": doc, "label": label})
    client.post(f"/matrices/{mid}/boost", json={"term": "statin", "delta_steps": 2})
    before = {
        "ranking": client.get(f"/matrices/{mid}/ranking?scope=all").content,
        "matrix": client.get(f"/matrices/{mid}").content,
        "model": client.get(f"/matrices/{mid}/model").content,
        "suggestions": client.get(f"/matrices/{mid}/suggestions?k=5").content,
    }
    restarted = TestClient(create_app(data))
    assert restarted.get(f"/matrices/{mid}/ranking?scope=all").content == before["ranking"]
    assert restarted.get(f"/matrices/{mid}").content == before["matrix"]
    assert restarted.get(f"/matrices/{mid}/model").content == before["model"]
    assert restarted.get(f"/matrices/{mid}/suggestions?k=5").content == before["suggestions"]


def test_concurrent_classifies_are_serialized(client, matrix_id):
    from concurrent.futures import ThreadPoolExecutor

    docs = [i["doc_id"] for i in
            client.get(f"/matrices/{matrix_id}/ranking?scope=unknown").json()["items"]][:12]

    def classify(doc):
        return client.post(f"/matrices/{matrix_id}/classify",
                           json={"doc_id": doc, "label": "relevant"}).status_code

    with ThreadPoolExecutor(max_workers=6) as pool:
        codes = list(pool.map(classify, docs))
    assert all(c == 200 for c in codes)
    assert client.get(f"/matrices/{matrix_id}").json()["last_seq"] == 1 + len(docs)
    assert client.get(f"/matrices/{matrix_id}").json()["iteration"] == len(docs)
