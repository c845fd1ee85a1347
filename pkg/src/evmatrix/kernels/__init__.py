"""Gradient kernels for the 2D embedding, with backend selection.

The compiled extension is preferred when it was built; otherwise the NumPy
implementation is used. Both expose the same `tsne_gradient(P, Y)` contract
and agree to floating-point roundoff (covered by the parity tests).
"""

from __future__ import annotations

from . import _pytsne

try:
    from . import _ctsne

    _impl = _ctsne
    BACKEND = "compiled"
except ImportError:  # extension not built on this install
    _ctsne = None
    _impl = _pytsne
    BACKEND = "numpy"

tsne_gradient = _impl.tsne_gradient


def available_backends() -> dict:
    """Backend name -> gradient callable, for parity tests and benchmarks."""
    backends = {"numpy": _pytsne.tsne_gradient}
    if _ctsne is not None:
        backends["compiled"] = _ctsne.tsne_gradient
    return backends
