"""Simulated curation: a perfectly accurate reviewer follows the model's
suggestions until the matrix is fully labeled.

Each round takes both suggestion lists (predicted relevant and predicted
non-relevant), assigns every suggested document its true label, and runs
one model update with the full labeled sets. The report tracks recall of
the true-relevant set against the fraction of the matrix reviewed.

The comparison baseline is analytic, not an empirical shuffle: reviewing m
documents in uniform random order finds each still-unknown true-relevant
document with probability m / n_unknown, so expected recall after m reviews
is (seed_hit + m * (T - seed_hit) / (N - 1)) / T for a matrix of N documents
with T true-relevant ones and the seed pre-labeled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import load_corpus
from .matrix import build_initial_matrix
from .relevance import RocchioParams, init_model, suggest, update_model
from .textindex import build_index


@dataclass
class SimulationReport:
    rounds: int = 0
    reviewed_count: int = 0
    recall_curve: list[tuple[float, float]] = field(default_factory=list)
    baseline_curve: list[tuple[float, float]] = field(default_factory=list)
    final_recall: float = 0.0

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "reviewed_count": self.reviewed_count,
            "recall_curve": [[f, r] for f, r in self.recall_curve],
            "baseline_curve": [[f, r] for f, r in self.baseline_curve],
            "final_recall": self.final_recall,
        }


def load_truth(path: str | Path) -> dict[str, str]:
    truth = json.loads(Path(path).read_text(encoding="utf-8"))
    bad = {k: v for k, v in truth.items() if v not in ("relevant", "non_relevant")}
    if bad:
        raise ValueError(f"truth labels must be relevant/non_relevant, got {bad}")
    return truth


def simulate_curation(
    corpus_path: str | Path,
    seed_id: str,
    truth_path: str | Path,
    k: int = 10,
    max_rounds: int = 50,
    max_vocab: int = 5000,
    params: RocchioParams | None = None,
) -> SimulationReport:
    corpus = load_corpus(corpus_path)
    truth = load_truth(truth_path)
    matrix = build_initial_matrix(corpus, seed_id)

    missing = [d for d in matrix.doc_ids if d not in truth]
    if missing:
        raise ValueError(
            f"truth file misses {len(missing)} matrix documents, e.g. {missing[:5]}"
        )

    docs = [corpus.documents[d] for d in sorted(corpus.documents)]
    vocab, vector_list = build_index(docs, max_vocab)
    vectors = {v.doc_id: v for v in vector_list}
    model = init_model(vectors[seed_id], vocab, params)

    n_total = len(matrix.doc_ids)
    true_rel = {d for d in matrix.doc_ids if truth[d] == "relevant"}
    seed_hit = 1 if truth[seed_id] == "relevant" else 0

    def recall() -> float:
        if not true_rel:
            return 1.0
        found = sum(1 for d in true_rel if matrix.labels[d] == "relevant")
        return found / len(true_rel)

    def baseline(reviewed: int) -> float:
        """Expected recall when `reviewed` documents are drawn uniformly at
        random from the N-1 initially unknown ones."""
        if not true_rel:
            return 1.0
        if n_total <= 1:
            return seed_hit / len(true_rel)
        expected = seed_hit + reviewed * (len(true_rel) - seed_hit) / (n_total - 1)
        return expected / len(true_rel)

    report = SimulationReport()
    reviewed = 0
    for _ in range(max_rounds):
        unknown_ids = [d for d in matrix.doc_ids if matrix.labels[d] == "unknown"]
        if not unknown_ids:
            break
        pred_rel, pred_irr = suggest(model, [vectors[d] for d in unknown_ids], k)
        for doc_id, _score in (*pred_rel, *pred_irr):
            matrix.set_label(doc_id, truth[doc_id])
            reviewed += 1
        rel_vecs = [vectors[d] for d in matrix.doc_ids if matrix.labels[d] == "relevant"]
        irr_vecs = [
            vectors[d] for d in matrix.doc_ids if matrix.labels[d] == "non_relevant"
        ]
        update_model(model, rel_vecs, irr_vecs)
        report.rounds += 1
        labeled = sum(1 for d in matrix.doc_ids if matrix.labels[d] != "unknown")
        report.recall_curve.append((labeled / n_total, recall()))
        report.baseline_curve.append((labeled / n_total, baseline(reviewed)))

    report.reviewed_count = reviewed
    report.final_recall = report.recall_curve[-1][1] if report.recall_curve else recall()
    return report
