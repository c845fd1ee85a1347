"""2D projections of document vectors for the overview scatter.

Four methods: PCA, two-class Fisher LDA, classical (Torgerson) MDS on
cosine distances, and exact t-SNE. Coordinates are rescaled per axis into
[-1, 1]. PCA, LDA, and MDS also yield a fitted transform so query centroids
can be placed in the same plane; t-SNE has no out-of-sample mapping.

Matrices hold hundreds of documents, so everything is computed densely on
the capped vocabulary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .textindex import DocumentVector

METHODS = ("pca", "lda", "mds", "tsne")

TSNE_ITERATIONS = 500
TSNE_EXAGGERATION = 12.0
TSNE_EXAGGERATION_ITERS = 250
TSNE_LEARNING_RATE = 200.0
TSNE_INIT_STD = 1e-4

_DEGENERATE_TOL = 1e-12


class ProjectionError(ValueError):
    pass


@dataclass
class LinearTransform:
    """Out-of-sample map for pca/lda: x -> ((x - mean) @ components) / scale."""

    mean: np.ndarray
    components: np.ndarray  # (vocab, 2)
    scale: tuple[float, float]

    def map(self, x: np.ndarray) -> tuple[float, float]:
        raw = (x - self.mean) @ self.components
        return float(raw[0] / self.scale[0]), float(raw[1] / self.scale[1])


@dataclass
class MdsTransform:
    """Out-of-sample map for classical MDS (Gower's interpolation).

    For a new point with squared distances d2 to the training points:
        b_i = -0.5 * (d2_i - mean(d2) + mean(c) - c_i)   with c = diag(B)
        y   = diag(1/sqrt(l)) @ V^T b   for the top-2 eigenpairs (l, V)
    """

    train: np.ndarray  # (n, vocab) dense training vectors, for distances
    eigvecs: np.ndarray  # (n, 2)
    eigvals: np.ndarray  # (2,)
    center_norms: np.ndarray  # diag(B)
    scale: tuple[float, float]

    def map(self, x: np.ndarray) -> tuple[float, float]:
        d2 = _cosine_distances_to(self.train, x) ** 2
        b = -0.5 * (d2 - d2.mean() + self.center_norms.mean() - self.center_norms)
        out = np.zeros(2)
        for k in range(2):
            if self.eigvals[k] > _DEGENERATE_TOL:
                out[k] = (self.eigvecs[:, k] @ b) / math.sqrt(self.eigvals[k])
        return float(out[0] / self.scale[0]), float(out[1] / self.scale[1])


@dataclass
class Projection:
    method: str
    seed: int
    coords: dict[str, tuple[float, float]]
    quality: dict
    transform: LinearTransform | MdsTransform | None = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "seed": self.seed,
            "quality": self.quality,
            "coords": {d: [x, y] for d, (x, y) in self.coords.items()},
        }


def _rescale(coords: np.ndarray) -> tuple[np.ndarray, tuple[float, float]]:
    out = coords.copy()
    scale = []
    for k in range(coords.shape[1]):
        m = float(np.max(np.abs(coords[:, k]))) if coords.size else 0.0
        if m > 0.0:
            out[:, k] = coords[:, k] / m
            scale.append(m)
        else:
            scale.append(1.0)
    return out, (scale[0], scale[1])


def rescale(coords: np.ndarray) -> np.ndarray:
    """Per-axis divide by the max absolute value so each non-degenerate axis
    spans [-1, 1]; all-zero axes stay zero. Idempotent."""
    return _rescale(np.asarray(coords, dtype=float))[0]


def _dense_matrix(vectors: list[DocumentVector], size: int) -> np.ndarray:
    X = np.zeros((len(vectors), size))
    for i, vec in enumerate(vectors):
        for idx, w in vec.weights.items():
            X[i, idx] = w
    return X


def _cosine_distance_matrix(X: np.ndarray) -> np.ndarray:
    """d(i, j) = 1 - cos(i, j); rows with zero norm are treated as orthogonal
    to everything (distance 1, except 0 to themselves)."""
    norms = np.linalg.norm(X, axis=1)
    safe = np.where(norms > 0.0, norms, 1.0)
    unit = X / safe[:, None]
    sim = unit @ unit.T
    D = 1.0 - np.clip(sim, -1.0, 1.0)
    np.fill_diagonal(D, 0.0)
    return D


def _cosine_distances_to(X: np.ndarray, x: np.ndarray) -> np.ndarray:
    xn = np.linalg.norm(x)
    norms = np.linalg.norm(X, axis=1)
    if xn == 0.0:
        return np.ones(X.shape[0])
    sims = np.zeros(X.shape[0])
    nz = norms > 0.0
    sims[nz] = (X[nz] @ x) / (norms[nz] * xn)
    return 1.0 - np.clip(sims, -1.0, 1.0)


def _flip_signs(U: np.ndarray, Vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic sign convention: each component's largest-|loading|
    entry is positive."""
    for k in range(Vt.shape[0]):
        j = int(np.argmax(np.abs(Vt[k])))
        if Vt[k, j] < 0.0:
            Vt[k] = -Vt[k]
            U[:, k] = -U[:, k]
    return U, Vt


def _pca_fit(X: np.ndarray) -> tuple[np.ndarray, dict, LinearTransform]:
    n = X.shape[0]
    mean = X.mean(axis=0)
    Xc = X - mean
    U, S, Vt = np.linalg.svd(Xc, full_matrices=False)
    U, Vt = _flip_signs(U, Vt)
    total = float((S**2).sum())
    coords = np.zeros((n, 2))
    components = np.zeros((X.shape[1], 2))
    fractions = [0.0, 0.0]
    if total > _DEGENERATE_TOL:
        for k in range(min(2, len(S))):
            coords[:, k] = U[:, k] * S[k]
            components[:, k] = Vt[k]
            fractions[k] = float(S[k] ** 2 / total)
        quality = {"explained_variance": fractions}
    else:
        quality = {"explained_variance": fractions, "degenerate": True}
    rescaled, scale = _rescale(coords)
    return rescaled, quality, LinearTransform(mean, components, scale)


def classical_mds(D: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Torgerson MDS: square the distances, double-center, take the top-2
    eigenpairs. Returns (coords, eigvals, eigvecs, diag of B)."""
    n = D.shape[0]
    D2 = D**2
    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * (J @ D2 @ J)
    evals, evecs = np.linalg.eigh(B)
    order = np.argsort(evals)[::-1][:2]
    top_vals = evals[order]
    top_vecs = evecs[:, order]
    # deterministic sign: largest-|entry| coordinate positive per axis
    for k in range(top_vecs.shape[1]):
        j = int(np.argmax(np.abs(top_vecs[:, k])))
        if top_vecs[j, k] < 0.0:
            top_vecs[:, k] = -top_vecs[:, k]
    coords = np.zeros((n, 2))
    for k in range(2):
        if k < len(top_vals) and top_vals[k] > _DEGENERATE_TOL:
            coords[:, k] = top_vecs[:, k] * math.sqrt(top_vals[k])
    return coords, top_vals, top_vecs, np.diag(B).copy()


def _mds_stress(D: np.ndarray, coords: np.ndarray) -> float:
    """Kruskal stress-1 between input distances and embedded distances."""
    n = D.shape[0]
    iu = np.triu_indices(n, k=1)
    d_in = D[iu]
    diff = coords[:, None, :] - coords[None, :, :]
    d_out = np.sqrt((diff**2).sum(axis=2))[iu]
    denom = float((d_in**2).sum())
    if denom <= 0.0:
        return 0.0
    return float(math.sqrt(((d_in - d_out) ** 2).sum() / denom))


def _mds_fit(X: np.ndarray) -> tuple[np.ndarray, dict, MdsTransform]:
    D = _cosine_distance_matrix(X)
    coords, eigvals, eigvecs, center_norms = classical_mds(D)
    quality = {"stress": _mds_stress(D, coords)}
    if float(np.max(np.abs(coords))) <= _DEGENERATE_TOL:
        quality["degenerate"] = True
    rescaled, scale = _rescale(coords)
    transform = MdsTransform(
        train=X.copy(),
        eigvecs=eigvecs,
        eigvals=np.maximum(eigvals, 0.0),
        center_norms=center_norms,
        scale=scale,
    )
    return rescaled, quality, transform


def _lda_fit(
    X: np.ndarray, rel_idx: list[int], irr_idx: list[int]
) -> tuple[np.ndarray, dict, LinearTransform]:
    """Fisher discriminant axis between the two labeled groups; second axis
    is the leading principal component orthogonal to it. Computed in the
    SVD-reduced data subspace (the vocabulary dimension far exceeds the
    document count)."""
    n = X.shape[0]
    mean = X.mean(axis=0)
    Xc = X - mean
    U, S, Vt = np.linalg.svd(Xc, full_matrices=False)
    keep = S > (S[0] * 1e-12 if S.size and S[0] > 0 else np.inf)
    if not keep.any():
        # all documents identical; nothing to separate
        coords = np.zeros((n, 2))
        rescaled, scale = _rescale(coords)
        quality = {"separation_ratio": 0.0, "degenerate": True}
        return rescaled, quality, LinearTransform(mean, np.zeros((X.shape[1], 2)), scale)
    Z = U[:, keep] * S[keep]
    Vr = Vt[keep].T  # (vocab, r)
    r = Z.shape[1]

    mu_rel = Z[rel_idx].mean(axis=0)
    mu_irr = Z[irr_idx].mean(axis=0)
    Sw = np.zeros((r, r))
    for idx, mu in ((rel_idx, mu_rel), (irr_idx, mu_irr)):
        C = Z[idx] - mu
        Sw += C.T @ C
    ridge = 1e-6 * (np.trace(Sw) / r) + 1e-12
    Sw += ridge * np.eye(r)
    w = np.linalg.solve(Sw, mu_rel - mu_irr)
    wn = np.linalg.norm(w)
    w = w / wn if wn > 0 else w
    axis1 = Z @ w
    if axis1[rel_idx].mean() < axis1[irr_idx].mean():
        w = -w
        axis1 = -axis1

    # leading PC of the data with the discriminant direction removed
    Zp = Z - np.outer(Z @ w, w)
    _, S2, Vt2 = np.linalg.svd(Zp, full_matrices=False)
    if S2.size and S2[0] > _DEGENERATE_TOL:
        v2 = Vt2[0]
        j = int(np.argmax(np.abs(v2)))
        if v2[j] < 0.0:
            v2 = -v2
        axis2 = Zp @ v2
    else:
        v2 = np.zeros(r)
        axis2 = np.zeros(n)

    m_rel, m_irr = axis1[rel_idx].mean(), axis1[irr_idx].mean()
    v_rel, v_irr = axis1[rel_idx].var(), axis1[irr_idx].var()
    separation = float((m_rel - m_irr) ** 2 / (v_rel + v_irr + 1e-12))

    coords = np.column_stack([axis1, axis2])
    rescaled, scale = _rescale(coords)
    components = Vr @ np.column_stack([w, v2])
    quality = {"separation_ratio": separation}
    return rescaled, quality, LinearTransform(mean, components, scale)


def joint_probabilities(D2: np.ndarray, perplexity: float) -> np.ndarray:
    """Symmetric affinities from squared distances, with per-point precision
    found by binary search so each conditional distribution hits the target
    perplexity."""
    n = D2.shape[0]
    target = math.log(perplexity)
    P = np.zeros((n, n))
    for i in range(n):
        beta, beta_lo, beta_hi = 1.0, -np.inf, np.inf
        row = np.delete(D2[i], i)
        for _ in range(64):
            p = np.exp(-row * beta)
            total = p.sum()
            if total <= 0.0:
                entropy = 0.0
                p = np.zeros_like(p)
            else:
                p /= total
                nz = p > 0
                entropy = float(-(p[nz] * np.log(p[nz])).sum())
            diff = entropy - target
            if abs(diff) < 1e-7:
                break
            if diff > 0:  # too spread out: raise precision
                beta_lo = beta
                beta = beta * 2.0 if beta_hi == np.inf else (beta + beta_hi) / 2.0
            else:
                beta_hi = beta
                beta = beta / 2.0 if beta_lo == -np.inf else (beta + beta_lo) / 2.0
        P[i, np.arange(n) != i] = p
    P = (P + P.T) / (2.0 * n)
    P = np.maximum(P, 1e-12)
    np.fill_diagonal(P, 0.0)
    return P


def _tsne_fit(X: np.ndarray, seed: int) -> tuple[np.ndarray, dict]:
    n = X.shape[0]
    perplexity = min(30.0, (n - 1) / 3.0)
    D = _cosine_distance_matrix(X)
    P = joint_probabilities(D**2, perplexity)

    rng = np.random.default_rng(seed)
    Y = rng.normal(0.0, TSNE_INIT_STD, size=(n, 2))
    update = np.zeros_like(Y)
    gains = np.ones_like(Y)
    kl_initial = math.nan

    for it in range(TSNE_ITERATIONS):
        exaggerating = it < TSNE_EXAGGERATION_ITERS
        P_eff = P * TSNE_EXAGGERATION if exaggerating else P
        grad, kl = kernels.tsne_gradient(np.ascontiguousarray(P_eff), Y)
        if it == TSNE_EXAGGERATION_ITERS:
            kl_initial = kl
        momentum = 0.5 if exaggerating else 0.8
        opposite = np.sign(grad) != np.sign(update)
        gains = np.where(opposite, gains + 0.2, gains * 0.8)
        np.clip(gains, 0.01, None, out=gains)
        update = momentum * update - TSNE_LEARNING_RATE * gains * grad
        Y = Y + update
        Y -= Y.mean(axis=0)

    _, kl_final = kernels.tsne_gradient(P, Y)
    quality = {
        "kl_final": kl_final,
        "kl_after_exaggeration": kl_initial,
        "perplexity": perplexity,
    }
    rescaled, _ = _rescale(Y)
    return rescaled, quality


def project(
    vectors: list[DocumentVector],
    labels: dict[str, str],
    method: str,
    seed: int = 0,
    vocab_size: int | None = None,
) -> Projection:
    """2D coordinates for every input document.

    LDA needs at least two documents labeled relevant and two labeled
    non-relevant; otherwise it falls back to PCA and says so in quality.
    Pass vocab_size when the fitted transform will later map full-width
    query vectors; by default the width is the largest term index seen.
    """
    if method not in METHODS:
        raise ProjectionError(f"unknown method {method!r}; expected one of {METHODS}")
    if not vectors:
        raise ProjectionError("no documents to project")
    if vocab_size is None:
        indices = [max(v.weights) for v in vectors if v.weights]
        vocab_size = max(indices) + 1 if indices else 1
    size = vocab_size
    nonzero = sum(1 for v in vectors if not v.is_empty)
    if nonzero < 3:
        raise ProjectionError(
            f"projection needs at least 3 documents with nonzero vectors, got {nonzero}"
        )
    ids = [v.doc_id for v in vectors]
    X = _dense_matrix(vectors, size)

    transform = None
    if method == "lda":
        rel_idx = [i for i, d in enumerate(ids) if labels.get(d) == "relevant"]
        irr_idx = [i for i, d in enumerate(ids) if labels.get(d) == "non_relevant"]
        if len(rel_idx) >= 2 and len(irr_idx) >= 2:
            coords, quality, transform = _lda_fit(X, rel_idx, irr_idx)
        else:
            coords, quality, transform = _pca_fit(X)
            quality = {
                **quality,
                "fallback": "pca",
                "fallback_reason": "need >=2 relevant and >=2 non_relevant documents",
            }
    elif method == "pca":
        coords, quality, transform = _pca_fit(X)
    elif method == "mds":
        coords, quality, transform = _mds_fit(X)
    else:
        coords, quality = _tsne_fit(X, seed)

    return Projection(
        method=method,
        seed=seed,
        coords={d: (float(x), float(y)) for d, (x, y) in zip(ids, coords)},
        quality=quality,
        transform=transform,
    )
