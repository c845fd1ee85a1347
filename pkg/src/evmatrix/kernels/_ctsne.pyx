# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled embedding-gradient kernel (exact, quadratic).

Fuses the Student-t kernel, its normalization, the KL divergence, and the
gradient into one O(n^2) pass without temporaries.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log

cnp.import_array()

cdef double _EPS = 1e-12


def tsne_gradient(double[:, ::1] P, double[:, ::1] Y):
    """Gradient of KL(P || Q) w.r.t. the 2D embedding Y, plus the divergence.

    P: (n, n) symmetric joint probabilities, zero diagonal.
    Y: (n, 2) current embedding.
    """
    cdef Py_ssize_t n = Y.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, denom = 0.0
    cdef double pij, qij, nij, coeff, kl = 0.0

    num_arr = np.zeros((n, n))
    grad_arr = np.zeros((n, 2))
    cdef double[:, ::1] num = num_arr
    cdef double[:, ::1] grad = grad_arr

    for i in range(n):
        for j in range(i + 1, n):
            dx = Y[i, 0] - Y[j, 0]
            dy = Y[i, 1] - Y[j, 1]
            nij = 1.0 / (1.0 + dx * dx + dy * dy)
            num[i, j] = nij
            num[j, i] = nij
            denom += 2.0 * nij
    if denom <= 0.0:
        denom = _EPS

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            nij = num[i, j]
            qij = nij / denom
            if qij < _EPS:
                qij = _EPS
            pij = P[i, j]
            coeff = 4.0 * (pij - qij) * nij
            grad[i, 0] += coeff * (Y[i, 0] - Y[j, 0])
            grad[i, 1] += coeff * (Y[i, 1] - Y[j, 1])
            if pij > 0.0:
                if pij < _EPS:
                    pij = _EPS
                kl += P[i, j] * log(pij / qij)

    return grad_arr, kl
