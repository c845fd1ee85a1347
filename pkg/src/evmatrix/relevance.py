"""Relevance model: feedback-driven query updates, boosts, ranking.

Two query centroids are maintained over the vocabulary. The relevant query
starts as the seed review's TF-IDF vector and is updated on every feedback
round as

    q_new = alpha * q_prev + beta * q_0
            + mean_{d in R} d * (gamma * boosts)
            - mean_{d in I} d * (delta * boosts)

with empty-set means treated as zero and negative components clamped to 0.
The non-relevant query follows the mirrored rule (R and I swapped, its own
history, zero initial query). Per-term boost multipliers let users raise or
lower a word's influence; they enter the update and the ranking score.

Ranking scores a document by cosine against the boosted relevant query
minus cosine against the boosted non-relevant query.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .textindex import DocumentVector, Vocabulary

BOOST_MIN = 0.0
BOOST_MAX = 2.0
BOOST_STEP = 0.1


@dataclass(frozen=True)
class RocchioParams:
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 1.0
    delta: float = 0.1
    top_k: int = 10

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.top_k < 1:
            raise ValueError("top_k must be a positive integer")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "top_k": self.top_k,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RocchioParams":
        return cls(**obj)


class RelevanceModel:
    """Mutable per-matrix model state. Mutations (update, boosts) must be
    serialized by the owning session; reads are safe between mutations."""

    def __init__(self, vocab: Vocabulary, q0: np.ndarray, params: RocchioParams):
        self.vocab = vocab
        self.params = params
        self.q0 = q0
        self.q_rel = q0.copy()
        self.q_irr = np.zeros_like(q0)
        self.boosts = np.ones_like(q0)
        self.iteration = 0

    def weighted_queries(self) -> tuple[np.ndarray, np.ndarray]:
        return self.q_rel * self.boosts, self.q_irr * self.boosts


def init_model(
    seed_vector: DocumentVector,
    vocab: Vocabulary,
    params: RocchioParams | None = None,
) -> RelevanceModel:
    if seed_vector.is_empty:
        raise ValueError("seed vector is empty; cannot initialize the model")
    q0 = seed_vector.to_dense(len(vocab))
    return RelevanceModel(vocab, q0, params or RocchioParams())


def _centroid(vectors: list[DocumentVector], size: int) -> np.ndarray:
    """Mean of the given sparse vectors; zeros for an empty set."""
    out = np.zeros(size)
    if not vectors:
        return out
    for vec in vectors:
        for idx, w in vec.weights.items():
            out[idx] += w
    out /= len(vectors)
    return out


def update_model(
    model: RelevanceModel,
    relevant: list[DocumentVector],
    non_relevant: list[DocumentVector],
) -> None:
    """One feedback round. `relevant` and `non_relevant` are the full
    current sets (not deltas), disjoint by document id."""
    size = len(model.vocab)
    for vec in (*relevant, *non_relevant):
        if vec.weights and max(vec.weights) >= size:
            raise ValueError(
                f"vector for {vec.doc_id!r} does not match the model vocabulary"
            )
    p = model.params
    mean_rel = _centroid(relevant, size)
    mean_irr = _centroid(non_relevant, size)

    q_rel_raw = (
        p.alpha * model.q_rel
        + p.beta * model.q0
        + mean_rel * (p.gamma * model.boosts)
        - mean_irr * (p.delta * model.boosts)
    )
    # mirrored rule: swap the sets; the non-relevant query's own q0 is zero
    q_irr_raw = (
        p.alpha * model.q_irr
        + mean_irr * (p.gamma * model.boosts)
        - mean_rel * (p.delta * model.boosts)
    )
    model.q_rel = np.maximum(q_rel_raw, 0.0)
    model.q_irr = np.maximum(q_irr_raw, 0.0)
    model.iteration += 1


def set_boost(model: RelevanceModel, term: str, delta_steps: int) -> float:
    """Nudge a term's boost by delta_steps clicks of 0.1, clamped to [0, 2].
    Returns the new multiplier."""
    idx = model.vocab.index.get(term)
    if idx is None:
        raise KeyError(f"term {term!r} is not in the vocabulary")
    new = float(np.clip(model.boosts[idx] + BOOST_STEP * delta_steps, BOOST_MIN, BOOST_MAX))
    model.boosts[idx] = new
    return new


def score_documents(
    model: RelevanceModel, candidates: list[DocumentVector]
) -> dict[str, float]:
    """score(d) = cos(d, q_rel*boosts) - cos(d, q_irr*boosts).

    Document vectors are unit-normalized (or empty), so each cosine is a
    sparse dot against the weighted query divided by the query norm.
    """
    w_rel, w_irr = model.weighted_queries()
    n_rel = float(np.linalg.norm(w_rel))
    n_irr = float(np.linalg.norm(w_irr))
    scores: dict[str, float] = {}
    for vec in candidates:
        norm = vec.norm()
        if norm == 0.0:
            scores[vec.doc_id] = 0.0
            continue
        dot_rel = sum(w * w_rel[idx] for idx, w in vec.weights.items())
        dot_irr = sum(w * w_irr[idx] for idx, w in vec.weights.items())
        s_rel = dot_rel / (norm * n_rel) if n_rel > 0.0 else 0.0
        s_irr = dot_irr / (norm * n_irr) if n_irr > 0.0 else 0.0
        scores[vec.doc_id] = float(s_rel - s_irr)
    return scores


def rank_documents(
    model: RelevanceModel, candidates: list[DocumentVector]
) -> list[tuple[str, float]]:
    """Candidates ordered by descending score, ties ascending by doc id."""
    scores = score_documents(model, candidates)
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def suggest(
    model: RelevanceModel, unknown_docs: list[DocumentVector], k: int
) -> tuple[list[tuple[str, float]], list[tuple[str, float]]]:
    """Top-k as predicted relevant, bottom-k as predicted non-relevant.

    The lists never overlap: when 2k exceeds the number of unknown documents
    every document is assigned to exactly one side, split at the score-sign
    boundary (clamped so neither side exceeds k). The non-relevant list is
    ordered most-dissimilar first.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    ranked = rank_documents(model, unknown_docs)
    n = len(ranked)
    if n == 0:
        return [], []
    if 2 * k <= n:
        return ranked[:k], ranked[-k:][::-1]
    nonneg = sum(1 for _, s in ranked if s >= 0.0)
    split = min(max(nonneg, n - k), k)
    return ranked[:split], ranked[split:][::-1]


def predict_label(
    model: RelevanceModel, vec: DocumentVector
) -> tuple[str, float, bool]:
    """(label, confidence, no_signal). Score >= 0 predicts relevant;
    confidence is |score| clipped to [0, 1]. Empty vectors carry no signal
    and default to (relevant, 0.0, True)."""
    if vec.is_empty:
        return "relevant", 0.0, True
    score = score_documents(model, [vec])[vec.doc_id]
    label = "relevant" if score >= 0.0 else "non_relevant"
    return label, float(min(abs(score), 1.0)), False


def snapshot(model: RelevanceModel) -> dict:
    """Sparse, term-keyed snapshot for inspection and persistence."""
    terms = model.vocab.terms

    def sparse(arr: np.ndarray) -> dict[str, float]:
        return {terms[i]: float(v) for i, v in enumerate(arr) if v != 0.0}

    return {
        "iteration": model.iteration,
        "params": model.params.to_dict(),
        "boosts": {
            terms[i]: float(v) for i, v in enumerate(model.boosts) if v != 1.0
        },
        "q_rel": sparse(model.q_rel),
        "q_irr": sparse(model.q_irr),
    }
