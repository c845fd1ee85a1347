"""HTTP API over the curation workbench.

Exposes the corpus, matrix sessions, the feedback loop, projections, and
keyword summaries. Every mutating route appends a session event before
responding; read routes never touch the logs. Clients may pass "if_seq"
with mutations for optimistic concurrency (mismatch -> 409).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .corpus import Corpus, CorpusError, load_corpus
from .keywords import (
    DEFAULT_HIGHLIGHT_TOP_N,
    DEFAULT_LAMBDA,
    highlight_spans,
    top_frequent,
    top_relevant,
)
from .matrix import export_matrix, export_matrix_csv
from .projection import METHODS, ProjectionError, project
from .relevance import RocchioParams, predict_label, snapshot, suggest
from .store import MatrixSession, SequenceError, SessionStore

DEFAULT_PROJECTION_SEED = 0


def find_corpus_file(data_dir: Path) -> Path:
    candidates = sorted(data_dir.glob("*.jsonl"))
    if not candidates:
        raise CorpusError(f"no corpus .jsonl file found in {data_dir}")
    if len(candidates) > 1:
        raise CorpusError(
            f"multiple corpus files in {data_dir}: {[c.name for c in candidates]}"
        )
    return candidates[0]


def create_app(
    data_dir: str | Path,
    max_vocab: int = 5000,
    params: RocchioParams | None = None,
    static_dir: str | Path | None = None,
    corpus: Corpus | None = None,
) -> FastAPI:
    data_dir = Path(data_dir)
    if corpus is None:
        corpus_path = find_corpus_file(data_dir)
        corpus = load_corpus(corpus_path)
        corpus_id = corpus_path.stem
    else:
        corpus_id = "corpus"
    store = SessionStore(
        corpus,
        data_dir=data_dir / "matrices",
        params=params,
        max_vocab=max_vocab,
    )

    app = FastAPI(title="evmatrix", version="0.1.0")
    app.state.store = store
    app.state.corpus_id = corpus_id

    @app.exception_handler(SequenceError)
    async def _seq_conflict(request: Request, exc: SequenceError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    def get_session(matrix_id: str) -> MatrixSession:
        try:
            return store.get(matrix_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown matrix {matrix_id!r}")

    def matrix_summary(session: MatrixSession) -> dict:
        assert session.matrix is not None and session.model is not None
        record = export_matrix(session.matrix, only_relevant=False)
        record["layer"] = dict(session.matrix.layer)
        record["last_seq"] = session.last_seq
        record["iteration"] = session.model.iteration
        record["params"] = session.model.params.to_dict()
        return record

    # -- corpus and documents ---------------------------------------------

    @app.get("/corpora/{corpus_key}/stats")
    def corpus_stats(corpus_key: str):
        if corpus_key != corpus_id:
            raise HTTPException(status_code=404, detail=f"unknown corpus {corpus_key!r}")
        report = corpus.report.to_dict()
        report["vocabulary_size"] = len(store.vocab)
        report["n_matrices"] = len(store.sessions)
        return report

    @app.get("/documents/{doc_id}")
    def document_detail(
        doc_id: str,
        highlight: bool = False,
        top_n: int = DEFAULT_HIGHLIGHT_TOP_N,
        matrix: str | None = None,
    ):
        try:
            doc = corpus.get(doc_id)
        except CorpusError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        out = {
            "id": doc.id,
            "type": doc.doc_type,
            "title": doc.title,
            "abstract": doc.abstract,
            "year": doc.year,
            "authors": list(doc.authors),
            "references": list(doc.references),
        }
        if matrix is not None:
            session = get_session(matrix)
            assert session.model is not None
            label, confidence, no_signal = predict_label(
                session.model, store.vectors[doc_id]
            )
            out["prediction"] = {
                "label": label,
                "confidence": confidence,
                "no_signal": no_signal,
            }
            if highlight:
                spans = highlight_spans(doc, session.model, top_n=top_n)
                out["highlight"] = {
                    "text": doc.text,
                    "spans": [[s, e, p] for s, e, p in spans],
                }
        elif highlight:
            raise HTTPException(
                status_code=400,
                detail="highlighting needs a matrix context; pass ?matrix=<id>",
            )
        return out

    # -- matrices -----------------------------------------------------------

    @app.post("/matrices", status_code=201)
    def create_matrix(body: dict = Body(...)):
        seed_id = body.get("seed_id")
        if not isinstance(seed_id, str) or not seed_id:
            raise HTTPException(status_code=400, detail="body must carry a seed_id")
        try:
            session = store.create_matrix(seed_id)
        except CorpusError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return matrix_summary(session)

    @app.get("/matrices")
    def list_matrices():
        items = []
        for matrix_id in store.list_matrices():
            session = store.sessions[matrix_id]
            assert session.matrix is not None
            items.append(
                {
                    "matrix_id": matrix_id,
                    "seed_id": session.matrix.seed_id,
                    "n_rows": len(session.matrix.rows),
                    "n_cols": len(session.matrix.cols),
                    "last_seq": session.last_seq,
                }
            )
        return {"items": items}

    @app.get("/matrices/{matrix_id}")
    def get_matrix(matrix_id: str):
        return matrix_summary(get_session(matrix_id))

    @app.get("/matrices/{matrix_id}/model")
    def get_model(matrix_id: str):
        session = get_session(matrix_id)
        assert session.model is not None
        return snapshot(session.model)

    # -- relevance loop -----------------------------------------------------

    @app.get("/matrices/{matrix_id}/ranking")
    def ranking(matrix_id: str, scope: str = "unknown"):
        session = get_session(matrix_id)
        if scope not in ("unknown", "all"):
            raise HTTPException(status_code=400, detail="scope must be unknown|all")
        items = [
            {
                "doc_id": doc_id,
                "score": score,
                "predicted_label": "relevant" if score >= 0.0 else "non_relevant",
                "confidence": min(abs(score), 1.0),
            }
            for doc_id, score in session.ranking(scope)
        ]
        return {"items": items}

    @app.get("/matrices/{matrix_id}/suggestions")
    def suggestions(matrix_id: str, k: int | None = Query(default=None, ge=1)):
        session = get_session(matrix_id)
        assert session.model is not None
        if k is None:
            k = session.model.params.top_k
        rel, irr = suggest(session.model, session.candidate_vectors("unknown"), k)
        return {
            "predicted_relevant": [{"doc_id": d, "score": s} for d, s in rel],
            "predicted_non_relevant": [{"doc_id": d, "score": s} for d, s in irr],
        }

    @app.post("/matrices/{matrix_id}/classify")
    def classify(matrix_id: str, body: dict = Body(...)):
        session = get_session(matrix_id)
        doc_id = body.get("doc_id")
        label = body.get("label")
        if not isinstance(doc_id, str) or not isinstance(label, str):
            raise HTTPException(status_code=400, detail="body needs doc_id and label")
        try:
            store.classify(matrix_id, doc_id, label, if_seq=body.get("if_seq"))
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc.args[0]))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"matrix_id": matrix_id, "doc_id": doc_id, "label": label,
                "last_seq": session.last_seq}

    @app.post("/matrices/{matrix_id}/boost")
    def boost(matrix_id: str, body: dict = Body(...)):
        session = get_session(matrix_id)
        term = body.get("term")
        steps = body.get("delta_steps")
        if not isinstance(term, str) or not isinstance(steps, int):
            raise HTTPException(
                status_code=400, detail="body needs term and integer delta_steps"
            )
        try:
            store.boost(matrix_id, term, steps, if_seq=body.get("if_seq"))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        assert session.model is not None
        idx = session.model.vocab.index[term]
        return {
            "matrix_id": matrix_id,
            "term": term,
            "multiplier": float(session.model.boosts[idx]),
            "last_seq": session.last_seq,
        }

    @app.post("/matrices/{matrix_id}/params")
    def set_params(matrix_id: str, body: dict = Body(...)):
        get_session(matrix_id)
        params = body.get("params")
        if not isinstance(params, dict):
            raise HTTPException(status_code=400, detail="body needs a params object")
        try:
            session = store.set_params(matrix_id, params, if_seq=body.get("if_seq"))
        except (TypeError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        assert session.model is not None
        return {"matrix_id": matrix_id, "params": session.model.params.to_dict(),
                "last_seq": session.last_seq}

    # -- views --------------------------------------------------------------

    @app.get("/matrices/{matrix_id}/projection")
    def projection(
        matrix_id: str,
        method: str = "pca",
        seed: int = DEFAULT_PROJECTION_SEED,
    ):
        session = get_session(matrix_id)
        if method not in METHODS:
            raise HTTPException(
                status_code=400, detail=f"method must be one of {'|'.join(METHODS)}"
            )
        assert session.matrix is not None and session.model is not None
        cache_key = (method, seed, session.label_state_hash())
        cached = session._projection_cache.get(cache_key)
        if cached is None:
            try:
                cached = project(
                    session.candidate_vectors("all"),
                    session.matrix.labels,
                    method,
                    seed=seed,
                    vocab_size=len(session.vocab),
                )
            except ProjectionError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            session._projection_cache[cache_key] = cached
        out = cached.to_dict()
        centroids = {"relevant": None, "non_relevant": None}
        if cached.transform is not None:
            w_rel, w_irr = session.model.weighted_queries()
            if w_rel.any():
                centroids["relevant"] = list(cached.transform.map(w_rel))
            if w_irr.any():
                centroids["non_relevant"] = list(cached.transform.map(w_irr))
        out["centroids"] = centroids
        out["labels"] = dict(session.matrix.labels)
        out["doc_types"] = {
            d: corpus.get(d).doc_type for d in session.matrix.doc_ids
        }
        return out

    def keyword_summary(
        session: MatrixSession,
        doc_ids: list[str],
        method: str,
        k: int,
        lam: float,
    ) -> dict:
        docs = [corpus.get(d) for d in doc_ids]
        if method == "frequent":
            return top_frequent(docs, k).to_dict()
        if not docs:
            raise HTTPException(status_code=400, detail="empty document group")
        assert session.matrix is not None
        background = [corpus.get(d) for d in session.matrix.doc_ids]
        return top_relevant(docs, background, store.vocab, k, lam).to_dict()

    @app.get("/matrices/{matrix_id}/keywords")
    def keywords_get(
        matrix_id: str,
        set: str = Query(default="relevant"),
        method: str = Query(default="frequent"),
        k: int = Query(default=40, ge=1),
        lam: float = Query(default=DEFAULT_LAMBDA, alias="lambda", ge=0.0, le=1.0),
    ):
        session = get_session(matrix_id)
        if method not in ("frequent", "relevance"):
            raise HTTPException(status_code=400, detail="method must be frequent|relevance")
        if set != "relevant":
            raise HTTPException(
                status_code=400,
                detail="GET supports set=relevant; POST a doc-id list for selections",
            )
        assert session.matrix is not None
        group = session.matrix.labeled("relevant")
        return keyword_summary(session, group, method, k, lam)

    @app.post("/matrices/{matrix_id}/keywords")
    def keywords_selection(
        matrix_id: str,
        body: dict = Body(...),
        method: str = Query(default="frequent"),
        k: int = Query(default=40, ge=1),
        lam: float = Query(default=DEFAULT_LAMBDA, alias="lambda", ge=0.0, le=1.0),
    ):
        session = get_session(matrix_id)
        if method not in ("frequent", "relevance"):
            raise HTTPException(status_code=400, detail="method must be frequent|relevance")
        doc_ids = body.get("doc_ids")
        if not isinstance(doc_ids, list) or any(not isinstance(d, str) for d in doc_ids):
            raise HTTPException(status_code=400, detail="body needs doc_ids: [str]")
        assert session.matrix is not None
        unknown = [d for d in doc_ids if d not in session.matrix.labels]
        if unknown:
            raise HTTPException(
                status_code=404, detail=f"doc ids not in matrix: {unknown[:5]}"
            )
        return keyword_summary(session, doc_ids, method, k, lam)

    @app.get("/matrices/{matrix_id}/export")
    def export(
        matrix_id: str,
        only_relevant: bool = False,
        format: str = Query(default="json"),
    ):
        session = get_session(matrix_id)
        assert session.matrix is not None
        if format == "csv":
            return PlainTextResponse(
                export_matrix_csv(session.matrix, only_relevant),
                media_type="text/csv",
            )
        if format != "json":
            raise HTTPException(status_code=400, detail="format must be json|csv")
        return export_matrix(session.matrix, only_relevant)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
