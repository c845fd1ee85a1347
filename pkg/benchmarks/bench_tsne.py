#!/usr/bin/env python3
"""Benchmark the embedding-gradient kernel backends.

Times the per-iteration gradient for several document counts and a full
projection run, comparing the compiled extension against the NumPy
fallback. Run directly:

    python benchmarks/bench_tsne.py [--sizes 100,300,600] [--repeats 20]
"""

import argparse
import time

import numpy as np

from evmatrix import kernels
from evmatrix.projection import project
from evmatrix.textindex import DocumentVector


def random_instance(rng, n):
    Y = rng.normal(0, 1e-2, (n, 2))
    P = rng.random((n, n))
    P = P + P.T
    np.fill_diagonal(P, 0.0)
    P /= P.sum()
    return np.ascontiguousarray(P), np.ascontiguousarray(Y)


def time_gradient(fn, P, Y, repeats):
    fn(P, Y)  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(P, Y)
        best = min(best, time.perf_counter() - t0)
    return best


def time_full_projection(backend_fn, n, seed=0):
    rng = np.random.default_rng(seed)
    centers = np.eye(3) * 6.0
    vectors = []
    for i in range(n):
        center = np.zeros(8)
        center[:3] = centers[i % 3]
        row = np.abs(center + rng.normal(0, 0.4, 8))
        vectors.append(DocumentVector(f"d{i:04d}", dict(enumerate(row))))
    saved = kernels.tsne_gradient
    kernels.tsne_gradient = backend_fn
    try:
        t0 = time.perf_counter()
        project(vectors, {}, "tsne", seed=0, vocab_size=8)
        return time.perf_counter() - t0
    finally:
        kernels.tsne_gradient = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,300,600")
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = kernels.available_backends()
    print(f"selected backend: {kernels.BACKEND}")
    print(f"available: {', '.join(backends)}\n")

    rng = np.random.default_rng(0)
    header = f"{'n':>6} | " + " | ".join(f"{name:>12}" for name in backends)
    if len(backends) == 2:
        header += " | speedup"
    print("gradient step (best of %d):" % args.repeats)
    print(header)
    print("-" * len(header))
    for n in sizes:
        P, Y = random_instance(rng, n)
        times = {name: time_gradient(fn, P, Y, args.repeats)
                 for name, fn in backends.items()}
        row = f"{n:>6} | " + " | ".join(f"{times[name]*1e3:>10.3f}ms" for name in backends)
        if len(times) == 2:
            row += f" | {times['numpy'] / times['compiled']:>6.2f}x"
        print(row)

    print("\nfull 500-iteration projection (single run):")
    for n in sizes:
        parts = []
        for name, fn in backends.items():
            parts.append(f"{name}: {time_full_projection(fn, n):.2f}s")
        print(f"{n:>6} docs | " + " | ".join(parts))


if __name__ == "__main__":
    main()
