"""Tokenization, vocabulary construction, and TF-IDF document vectors.

Weighting is log-scaled tf with smoothed idf:

    tf(w, d)  = 1 + ln(count(w, d))        for count >= 1
    idf(w)    = ln(n_docs / df(w)) + 1
    weight    = tf * idf, then L2-normalized per document

All weights stay positive, so query vectors built from these documents can
be read directly as term importances.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .corpus import Document

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_NUMERIC_RE = re.compile(r"^\d+$")

MIN_TOKEN_LEN = 2
MAX_TOKEN_LEN = 40
DEFAULT_MAX_VOCAB = 5000


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The bundled English stopword list (one lowercase word per line)."""
    text = (
        resources.files("evmatrix.data").joinpath("stopwords_en.txt").read_text("utf-8")
    )
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop short/long/numeric tokens
    and stopwords. No stemming: downstream word clouds show raw terms."""
    stops = stopwords()
    out = []
    for token in _TOKEN_RE.findall(text.lower()):
        if not MIN_TOKEN_LEN <= len(token) <= MAX_TOKEN_LEN:
            continue
        if _NUMERIC_RE.match(token):
            continue
        if token in stops:
            continue
        out.append(token)
    return out


def tokenize_with_offsets(text: str) -> list[tuple[str, int, int]]:
    """Like tokenize() but yields (term, start, end) character spans into
    `text` (half-open). Slicing and lowercasing the span reproduces the term."""
    stops = stopwords()
    out = []
    for match in _TOKEN_RE.finditer(text.lower()):
        token = match.group(0)
        if not MIN_TOKEN_LEN <= len(token) <= MAX_TOKEN_LEN:
            continue
        if _NUMERIC_RE.match(token):
            continue
        if token in stops:
            continue
        out.append((token, match.start(), match.end()))
    return out


@dataclass
class Vocabulary:
    """Capped term dictionary over an indexed document set.

    terms are unique and sorted ascending; the cap keeps the most frequent
    `max_vocab` terms by document frequency (ties lexicographic).
    """

    terms: list[str]
    df: list[int]
    n_docs: int
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {t: i for i, t in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def idf(self, term_idx: int) -> float:
        return math.log(self.n_docs / self.df[term_idx]) + 1.0


@dataclass
class DocumentVector:
    """Sparse unit-normalized TF-IDF vector; empty when no indexed term
    appears in the document."""

    doc_id: str
    weights: dict[int, float]

    @property
    def is_empty(self) -> bool:
        return not self.weights

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))

    def to_dense(self, size: int) -> np.ndarray:
        dense = np.zeros(size)
        for idx, w in self.weights.items():
            dense[idx] = w
        return dense


def build_vocabulary(token_lists: list[list[str]], max_vocab: int) -> Vocabulary:
    df_counts: dict[str, int] = {}
    for tokens in token_lists:
        for term in set(tokens):
            df_counts[term] = df_counts.get(term, 0) + 1
    # keep the max_vocab highest-df terms, ties broken lexicographically
    ranked = sorted(df_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:max_vocab]
    kept = sorted(term for term, _ in ranked)
    return Vocabulary(terms=kept, df=[df_counts[t] for t in kept], n_docs=len(token_lists))


def vectorize(tokens: list[str], vocab: Vocabulary, doc_id: str) -> DocumentVector:
    counts: dict[int, int] = {}
    for term in tokens:
        idx = vocab.index.get(term)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    weights = {
        idx: (1.0 + math.log(c)) * vocab.idf(idx) for idx, c in counts.items()
    }
    norm = math.sqrt(sum(w * w for w in weights.values()))
    if norm > 0:
        weights = {idx: w / norm for idx, w in weights.items()}
    return DocumentVector(doc_id=doc_id, weights=weights)


def build_index(
    docs: list[Document], max_vocab: int = DEFAULT_MAX_VOCAB
) -> tuple[Vocabulary, list[DocumentVector]]:
    """Vocabulary plus one vector per document (order preserved).

    Documents whose text contains no in-vocabulary term get an empty vector;
    callers can spot them via DocumentVector.is_empty.
    """
    if not docs:
        raise ValueError("build_index requires at least one document")
    if max_vocab < 1:
        raise ValueError("max_vocab must be positive")
    token_lists = [tokenize(doc.text) for doc in docs]
    vocab = build_vocabulary(token_lists, max_vocab)
    vectors = [
        vectorize(tokens, vocab, doc.id) for doc, tokens in zip(docs, token_lists)
    ]
    return vocab, vectors


def cosine(a: DocumentVector | np.ndarray, b: DocumentVector | np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    if isinstance(a, DocumentVector) and isinstance(b, DocumentVector):
        if len(a.weights) > len(b.weights):
            a, b = b, a
        dot = sum(w * b.weights.get(idx, 0.0) for idx, w in a.weights.items())
        na, nb = a.norm(), b.norm()
    elif isinstance(a, DocumentVector):
        dot = sum(w * b[idx] for idx, w in a.weights.items())
        na, nb = a.norm(), float(np.linalg.norm(b))
    elif isinstance(b, DocumentVector):
        return cosine(b, a)
    else:
        dot = float(np.dot(a, b))
        na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)
