import json

import numpy as np
import pytest

from evmatrix.corpus import load_corpus
from evmatrix.store import SequenceError, SessionEvent, SessionStore


@pytest.fixture
def store(small_synthetic, tmp_path):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    return SessionStore(corpus, data_dir=tmp_path / "matrices")


def test_create_matrix_event_and_state(store):
    session = store.create_matrix("SR0000")
    assert session.last_seq == 1
    assert session.matrix is not None
    assert session.matrix.labels["SR0000"] == "relevant"
    assert session.model is not None and session.model.iteration == 0


def test_classify_triggers_model_update(store):
    session = store.create_matrix("SR0000")
    doc = session.matrix.cols[0]
    store.classify(session.matrix_id, doc, "relevant")
    assert session.model.iteration == 1
    assert session.matrix.labels[doc] == "relevant"
    # overwrite back to unknown still counts as feedback
    store.classify(session.matrix_id, doc, "unknown")
    assert session.model.iteration == 2
    assert session.matrix.labels[doc] == "unknown"
    rel, irr = session.feedback_sets()
    assert doc not in [v.doc_id for v in rel]


def test_seq_contiguity_enforced(store):
    session = store.create_matrix("SR0000")
    event = SessionEvent(seq=5, timestamp="t", kind="boost",
                         payload={"term": "statin", "delta_steps": 1})
    with pytest.raises(SequenceError):
        session.apply_event(event)


def test_stale_precondition_conflict(store):
    session = store.create_matrix("SR0000")
    doc = session.matrix.cols[0]
    store.classify(session.matrix_id, doc, "relevant", if_seq=1)
    with pytest.raises(SequenceError):
        store.classify(session.matrix_id, doc, "unknown", if_seq=1)


def test_classify_unknown_doc_and_bad_label(store):
    session = store.create_matrix("SR0000")
    with pytest.raises(KeyError):
        store.classify(session.matrix_id, "nope", "relevant")
    with pytest.raises(ValueError):
        store.classify(session.matrix_id, session.matrix.cols[0], "maybe")


def test_boost_unknown_term(store):
    session = store.create_matrix("SR0000")
    with pytest.raises(ValueError):
        store.boost(session.matrix_id, "notaterm", 1)


def test_set_params_event(store):
    session = store.create_matrix("SR0000")
    store.set_params(session.matrix_id, {"alpha": 0.9, "beta": 0.1, "gamma": 1.0,
                                         "delta": 0.2, "top_k": 5})
    assert session.model.params.alpha == 0.9
    assert session.model.params.top_k == 5


def test_replay_reproduces_state_exactly(small_synthetic, tmp_path):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    data_dir = tmp_path / "matrices"
    store = SessionStore(corpus, data_dir=data_dir)
    session = store.create_matrix("SR0000")
    mid = session.matrix_id
    cols = session.matrix.cols
    store.classify(mid, cols[0], "relevant")
    store.boost(mid, "statin", 3)
    store.classify(mid, cols[1], "non_relevant")
    store.classify(mid, cols[2], "relevant")
    store.boost(mid, "cholesterol", -2)

    replayed = SessionStore(corpus, data_dir=data_dir)
    live, back = store.get(mid), replayed.get(mid)
    assert back.last_seq == live.last_seq
    assert back.matrix.labels == live.matrix.labels
    assert np.array_equal(back.model.q_rel, live.model.q_rel)
    assert np.array_equal(back.model.q_irr, live.model.q_irr)
    assert np.array_equal(back.model.boosts, live.model.boosts)
    assert back.ranking("all") == live.ranking("all")


def test_empty_log_directory_loads_cleanly(small_synthetic, tmp_path):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    store = SessionStore(corpus, data_dir=tmp_path / "matrices")
    assert store.list_matrices() == []


def test_event_log_format(small_synthetic, tmp_path):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    data_dir = tmp_path / "matrices"
    store = SessionStore(corpus, data_dir=data_dir)
    session = store.create_matrix("SR0000")
    store.classify(session.matrix_id, session.matrix.cols[0], "relevant")
    log = data_dir / f"{session.matrix_id}.events.jsonl"
    events = [json.loads(line) for line in log.read_text().splitlines()]
    assert [e["seq"] for e in events] == [1, 2]
    assert events[0]["kind"] == "create_matrix"
    assert events[1]["payload"] == {"doc_id": session.matrix.cols[0], "label": "relevant"}


def test_snapshot_written_periodically(small_synthetic, tmp_path):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    data_dir = tmp_path / "matrices"
    store = SessionStore(corpus, data_dir=data_dir)
    session = store.create_matrix("SR0000")
    doc = session.matrix.cols[0]
    for _ in range(30):  # crosses the snapshot interval
        store.boost(session.matrix_id, "statin", 1)
    snap_path = data_dir / f"{session.matrix_id}.snapshot.json"
    assert snap_path.exists()
    snap = json.loads(snap_path.read_text())
    assert snap["last_seq"] % 25 == 0
    assert "model" in snap and "labels" in snap


def test_in_memory_store_without_data_dir(small_synthetic):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    store = SessionStore(corpus, data_dir=None)
    session = store.create_matrix("SR0000")
    store.classify(session.matrix_id, session.matrix.cols[0], "relevant")
    assert session.last_seq == 2
