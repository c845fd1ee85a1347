"""Word-cloud term summaries and abstract highlighting.

Group summaries come in two flavors: raw frequency, and a relevance score
that balances in-group frequency against lift over the whole matrix:

    score(w) = lam * ln p(w|group) + (1 - lam) * ln(p(w|group) / p(w))

with add-one smoothing over the capped vocabulary on both distributions.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Document
from .relevance import RelevanceModel
from .textindex import Vocabulary, tokenize, tokenize_with_offsets

DEFAULT_LAMBDA = 0.6
DEFAULT_HIGHLIGHT_TOP_N = 25


@dataclass
class TermSummary:
    terms: list[tuple[str, float, float]]  # (term, score, display_weight)
    method: str
    lam: float | None = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "lambda": self.lam,
            "terms": [[t, s, w] for t, s, w in self.terms],
        }


def _with_display_weights(
    scored: list[tuple[str, float]], method: str, lam: float | None = None
) -> TermSummary:
    """Min-max normalize scores into [0, 1] display weights (all-equal
    scores display at full weight)."""
    if not scored:
        return TermSummary(terms=[], method=method, lam=lam)
    lo = min(s for _, s in scored)
    hi = max(s for _, s in scored)
    span = hi - lo
    terms = [
        (t, s, (s - lo) / span if span > 0 else 1.0) for t, s in scored
    ]
    return TermSummary(terms=terms, method=method, lam=lam)


def top_frequent(docs: list[Document], k: int) -> TermSummary:
    """Most frequent terms across the group, by total raw token count."""
    counts: Counter[str] = Counter()
    for doc in docs:
        counts.update(tokenize(doc.text))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return _with_display_weights([(t, float(c)) for t, c in ranked], "frequent")


def _vocab_counts(docs: list[Document], vocab: Vocabulary) -> tuple[Counter, int]:
    counts: Counter[str] = Counter()
    for doc in docs:
        for term in tokenize(doc.text):
            if term in vocab:
                counts[term] += 1
    return counts, sum(counts.values())


def top_relevant(
    group: list[Document],
    background: list[Document],
    vocab: Vocabulary,
    k: int,
    lam: float = DEFAULT_LAMBDA,
) -> TermSummary:
    """Relevance-weighted terms for the group against the matrix background.

    Candidates are the group's own in-vocabulary terms; scores use add-one
    smoothed distributions so lift is defined even for rare terms.
    """
    if not group:
        raise ValueError("top_relevant requires a non-empty group")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    g_counts, g_total = _vocab_counts(group, vocab)
    b_counts, b_total = _vocab_counts(background, vocab)
    V = len(vocab)
    scored = []
    for term, c in g_counts.items():
        p_group = (c + 1) / (g_total + V)
        p_all = (b_counts.get(term, 0) + 1) / (b_total + V)
        score = lam * math.log(p_group) + (1.0 - lam) * math.log(p_group / p_all)
        scored.append((term, score))
    scored.sort(key=lambda kv: (-kv[1], kv[0]))
    return _with_display_weights(scored[:k], "relevance", lam)


def highlight_spans(
    doc: Document,
    model: RelevanceModel,
    top_n: int = DEFAULT_HIGHLIGHT_TOP_N,
) -> list[tuple[int, int, str]]:
    """Character spans (half-open, over title + " " + abstract) of tokens
    matching the model's strongest terms.

    A term in both top lists takes the polarity with the larger weight.
    Spans are disjoint and sorted by start offset.
    """
    w_rel, w_irr = model.weighted_queries()
    terms = model.vocab.terms

    def top_terms(weights) -> dict[str, float]:
        pairs = [(terms[i], float(w)) for i, w in enumerate(weights) if w > 0.0]
        pairs.sort(key=lambda kv: (-kv[1], kv[0]))
        return dict(pairs[:top_n])

    rel_terms = top_terms(w_rel)
    irr_terms = top_terms(w_irr)

    spans = []
    for term, start, end in tokenize_with_offsets(doc.text):
        in_rel = term in rel_terms
        in_irr = term in irr_terms
        if not in_rel and not in_irr:
            continue
        if in_rel and in_irr:
            polarity = "relevant" if rel_terms[term] >= irr_terms[term] else "non_relevant"
        else:
            polarity = "relevant" if in_rel else "non_relevant"
        spans.append((start, end, polarity))
    return spans
