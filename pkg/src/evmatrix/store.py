"""Durable per-matrix session state, event-sourced.

Every mutation (create, classify, boost, parameter change) is appended to a
JSON-lines log, one file per matrix, before it is applied. Replaying a log
from the empty state reproduces the live state exactly: classify events
always feed the model the full current relevant/non-relevant sets, so the
query vectors are a pure function of the event sequence. Snapshots are
written periodically for inspection but the log stays authoritative.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .corpus import Corpus
from .matrix import LABELS, EvidenceMatrix, build_initial_matrix
from .relevance import (
    RelevanceModel,
    RocchioParams,
    init_model,
    rank_documents,
    set_boost,
    snapshot,
    update_model,
)
from .textindex import DocumentVector, Vocabulary, build_index

EVENT_KINDS = ("create_matrix", "classify", "boost", "set_params")
SNAPSHOT_EVERY = 25


class SequenceError(Exception):
    """Event sequence gap, replayed seq, or stale client precondition."""


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    timestamp: str
    kind: str
    payload: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "seq": self.seq,
                "timestamp": self.timestamp,
                "kind": self.kind,
                "payload": self.payload,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "SessionEvent":
        obj = json.loads(line)
        return cls(
            seq=obj["seq"],
            timestamp=obj["timestamp"],
            kind=obj["kind"],
            payload=obj["payload"],
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class MatrixSession:
    """Live state of one matrix: the matrix itself, its relevance model,
    and the applied event count. Mutations must come through apply_event."""

    def __init__(self, corpus: Corpus, vocab: Vocabulary, vectors: dict[str, DocumentVector]):
        self.corpus = corpus
        self.vocab = vocab
        self.vectors = vectors
        self.matrix: EvidenceMatrix | None = None
        self.model: RelevanceModel | None = None
        self.last_seq = 0
        self._projection_cache: dict = {}

    @property
    def matrix_id(self) -> str:
        assert self.matrix is not None
        return self.matrix.matrix_id

    def label_state_hash(self) -> str:
        assert self.matrix is not None
        items = json.dumps(sorted(self.matrix.labels.items()))
        return hashlib.sha256(items.encode()).hexdigest()[:16]

    def feedback_sets(self) -> tuple[list[DocumentVector], list[DocumentVector]]:
        """Full current relevant / non-relevant vector sets, in matrix
        order (rows then columns) so float summation order is reproducible."""
        assert self.matrix is not None
        rel, irr = [], []
        for doc_id in self.matrix.doc_ids:
            label = self.matrix.labels[doc_id]
            if label == "relevant":
                rel.append(self.vectors[doc_id])
            elif label == "non_relevant":
                irr.append(self.vectors[doc_id])
        return rel, irr

    def candidate_vectors(self, scope: str = "all") -> list[DocumentVector]:
        assert self.matrix is not None
        ids = self.matrix.doc_ids
        if scope == "unknown":
            ids = [d for d in ids if self.matrix.labels[d] == "unknown"]
        elif scope != "all":
            raise ValueError(f"scope must be 'unknown' or 'all', got {scope!r}")
        return [self.vectors[d] for d in ids]

    def ranking(self, scope: str = "all") -> list[tuple[str, float]]:
        assert self.model is not None
        return rank_documents(self.model, self.candidate_vectors(scope))

    def apply_event(self, event: SessionEvent) -> None:
        if event.seq != self.last_seq + 1:
            raise SequenceError(
                f"event seq {event.seq} does not follow last applied seq {self.last_seq}"
            )
        if event.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {event.kind!r}")
        handler = getattr(self, f"_apply_{event.kind}")
        handler(event.payload)
        self.last_seq = event.seq
        self._projection_cache.clear()

    def _apply_create_matrix(self, payload: dict) -> None:
        if self.matrix is not None:
            raise SequenceError("matrix already created for this session")
        seed_id = payload["seed_id"]
        self.matrix = build_initial_matrix(
            self.corpus, seed_id, matrix_id=payload["matrix_id"]
        )
        params = RocchioParams.from_dict(payload["params"])
        self.model = init_model(self.vectors[seed_id], self.vocab, params)

    def _apply_classify(self, payload: dict) -> None:
        assert self.matrix is not None and self.model is not None
        doc_id, label = payload["doc_id"], payload["label"]
        if label not in LABELS:
            raise ValueError(f"invalid label {label!r}")
        self.matrix.set_label(doc_id, label)
        rel, irr = self.feedback_sets()
        update_model(self.model, rel, irr)

    def _apply_boost(self, payload: dict) -> None:
        assert self.model is not None
        set_boost(self.model, payload["term"], payload["delta_steps"])

    def _apply_set_params(self, payload: dict) -> None:
        assert self.model is not None
        self.model.params = RocchioParams.from_dict(payload["params"])


class SessionStore:
    """All matrix sessions over one corpus, with optional durability.

    Mutations on one matrix are serialized by a per-matrix lock; the event
    is written to the log before it is applied, so a crash between the two
    is healed by replay on next start.
    """

    def __init__(
        self,
        corpus: Corpus,
        data_dir: str | Path | None = None,
        params: RocchioParams | None = None,
        max_vocab: int = 5000,
    ):
        self.corpus = corpus
        self.params = params or RocchioParams()
        docs = [corpus.documents[d] for d in sorted(corpus.documents)]
        self.vocab, vector_list = build_index(docs, max_vocab)
        self.vectors = {v.doc_id: v for v in vector_list}
        self.sessions: dict[str, MatrixSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._store_lock = threading.Lock()
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            self._replay_logs()

    # -- persistence ------------------------------------------------------

    def _log_path(self, matrix_id: str) -> Path | None:
        if self.data_dir is None:
            return None
        return self.data_dir / f"{matrix_id}.events.jsonl"

    def _snapshot_path(self, matrix_id: str) -> Path | None:
        if self.data_dir is None:
            return None
        return self.data_dir / f"{matrix_id}.snapshot.json"

    def _replay_logs(self) -> None:
        assert self.data_dir is not None
        for path in sorted(self.data_dir.glob("*.events.jsonl")):
            session = self._new_session()
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    session.apply_event(SessionEvent.from_json(line))
            if session.matrix is not None:
                self.sessions[session.matrix_id] = session
                self._locks[session.matrix_id] = threading.Lock()

    def _append(self, matrix_id: str, event: SessionEvent) -> None:
        path = self._log_path(matrix_id)
        if path is not None:
            with path.open("a", encoding="utf-8") as fh:
                fh.write(event.to_json() + "\n")

    def _maybe_snapshot(self, session: MatrixSession) -> None:
        path = self._snapshot_path(session.matrix_id)
        if path is None or session.last_seq % SNAPSHOT_EVERY != 0:
            return
        assert session.model is not None and session.matrix is not None
        payload = {
            "matrix_id": session.matrix_id,
            "last_seq": session.last_seq,
            "labels": session.matrix.labels,
            "model": snapshot(session.model),
        }
        path.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")

    # -- public API -------------------------------------------------------

    def get(self, matrix_id: str) -> MatrixSession:
        try:
            return self.sessions[matrix_id]
        except KeyError:
            raise KeyError(f"unknown matrix {matrix_id!r}") from None

    def list_matrices(self) -> list[str]:
        return sorted(self.sessions)

    def _new_session(self) -> MatrixSession:
        return MatrixSession(self.corpus, self.vocab, self.vectors)

    def create_matrix(self, seed_id: str, matrix_id: str | None = None) -> MatrixSession:
        with self._store_lock:
            matrix_id = matrix_id or f"m{uuid.uuid4().hex[:12]}"
            if matrix_id in self.sessions:
                raise ValueError(f"matrix id {matrix_id!r} already exists")
            session = self._new_session()
            event = SessionEvent(
                seq=1,
                timestamp=_now(),
                kind="create_matrix",
                payload={
                    "seed_id": seed_id,
                    "matrix_id": matrix_id,
                    "params": self.params.to_dict(),
                },
            )
            # validate before persisting anything
            session.apply_event(event)
            self._append(matrix_id, event)
            self.sessions[matrix_id] = session
            self._locks[matrix_id] = threading.Lock()
            return session

    def _mutate(self, matrix_id: str, kind: str, payload: dict, if_seq: int | None) -> MatrixSession:
        session = self.get(matrix_id)
        with self._locks[matrix_id]:
            if if_seq is not None and if_seq != session.last_seq:
                raise SequenceError(
                    f"stale precondition: client saw seq {if_seq}, log is at {session.last_seq}"
                )
            event = SessionEvent(
                seq=session.last_seq + 1,
                timestamp=_now(),
                kind=kind,
                payload=payload,
            )
            self._append(matrix_id, event)
            session.apply_event(event)
            self._maybe_snapshot(session)
            return session

    def classify(
        self, matrix_id: str, doc_id: str, label: str, if_seq: int | None = None
    ) -> MatrixSession:
        session = self.get(matrix_id)
        assert session.matrix is not None
        if doc_id not in session.matrix.labels:
            raise KeyError(f"document {doc_id!r} is not in matrix {matrix_id!r}")
        if label not in LABELS:
            raise ValueError(f"invalid label {label!r}")
        return self._mutate(
            matrix_id, "classify", {"doc_id": doc_id, "label": label}, if_seq
        )

    def boost(
        self, matrix_id: str, term: str, delta_steps: int, if_seq: int | None = None
    ) -> MatrixSession:
        session = self.get(matrix_id)
        assert session.model is not None
        if term not in session.model.vocab:
            raise ValueError(f"term {term!r} is not in the vocabulary")
        return self._mutate(
            matrix_id, "boost", {"term": term, "delta_steps": delta_steps}, if_seq
        )

    def set_params(
        self, matrix_id: str, params: dict, if_seq: int | None = None
    ) -> MatrixSession:
        validated = RocchioParams.from_dict(params)
        return self._mutate(
            matrix_id, "set_params", {"params": validated.to_dict()}, if_seq
        )
