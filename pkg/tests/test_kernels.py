"""Backend parity: the compiled kernel and the NumPy fallback must agree."""

import numpy as np
import pytest

from evmatrix import kernels


def random_instance(rng, n):
    Y = rng.normal(0, 1e-2, (n, 2))
    P = rng.random((n, n))
    P = P + P.T
    np.fill_diagonal(P, 0.0)
    P /= P.sum()
    return np.ascontiguousarray(P), np.ascontiguousarray(Y)


def test_a_backend_is_selected():
    assert kernels.BACKEND in ("compiled", "numpy")
    assert callable(kernels.tsne_gradient)


def test_compiled_extension_present():
    # the build script compiles the extension; fail loudly if that broke
    assert "compiled" in kernels.available_backends()


@pytest.mark.parametrize("n", [5, 40, 120])
def test_backends_agree(n):
    backends = kernels.available_backends()
    if len(backends) < 2:
        pytest.skip("only one backend available")
    rng = np.random.default_rng(n)
    P, Y = random_instance(rng, n)
    results = {name: fn(P, Y) for name, fn in backends.items()}
    g_np, kl_np = results["numpy"]
    g_cy, kl_cy = results["compiled"]
    assert np.allclose(g_np, g_cy, atol=1e-12)
    assert kl_np == pytest.approx(kl_cy, abs=1e-12)


def test_gradient_points_downhill():
    rng = np.random.default_rng(99)
    P, Y = random_instance(rng, 30)
    grad, kl = kernels.tsne_gradient(P, Y)
    _, kl_stepped = kernels.tsne_gradient(P, np.ascontiguousarray(Y - 1e-3 * grad))
    assert kl_stepped < kl


def test_zero_gradient_at_matched_distribution():
    # when P equals Q exactly the gradient vanishes
    rng = np.random.default_rng(7)
    Y = rng.normal(0, 1.0, (12, 2))
    sq = (Y**2).sum(1)
    d2 = sq[:, None] + sq[None, :] - 2 * Y @ Y.T
    num = 1.0 / (1.0 + d2)
    np.fill_diagonal(num, 0.0)
    P = num / num.sum()
    grad, kl = kernels.tsne_gradient(np.ascontiguousarray(P), np.ascontiguousarray(Y))
    assert np.abs(grad).max() < 1e-12
    assert abs(kl) < 1e-9
