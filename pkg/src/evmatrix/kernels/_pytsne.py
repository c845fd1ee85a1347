"""NumPy fallback for the embedding-gradient kernel.

Same contract as the compiled extension: one fused pass computing the
Student-t kernel matrix, its normalization, the KL divergence, and the
gradient of the embedding.
"""

from __future__ import annotations

import numpy as np

_EPS = 1e-12


def tsne_gradient(P: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, float]:
    """Gradient of KL(P || Q) w.r.t. the 2D embedding Y, plus the divergence.

    P: (n, n) symmetric joint probabilities, zero diagonal.
    Y: (n, 2) current embedding.
    """
    sq = np.sum(Y * Y, axis=1)
    # pairwise squared euclidean distances via the gram matrix
    d2 = sq[:, None] + sq[None, :] - 2.0 * (Y @ Y.T)
    num = 1.0 / (1.0 + d2)
    np.fill_diagonal(num, 0.0)
    denom = num.sum()
    if denom <= 0.0:
        denom = _EPS
    Q = np.maximum(num / denom, _EPS)
    pq = (P - Q) * num
    grad = 4.0 * (pq.sum(axis=1)[:, None] * Y - pq @ Y)
    kl = float(np.sum(P * np.log(np.maximum(P, _EPS) / Q)))
    return grad, kl
