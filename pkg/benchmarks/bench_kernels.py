"""Benchmark the tropical kernels: numba JIT vs the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 50,150,400] [--repeats 5]

The dispatched path honours MONOSCOPE_NO_NUMBA; this script times both
implementations explicitly regardless of the flag.
"""

import argparse
import time

import numpy as np

import monoscope.kernels as K


def tropical_inputs(rng, m):
    G = rng.normal(size=(m, m))
    d = np.diagonal(G)
    A = G - d[None, :]
    A = A - np.abs(A).max() * 1.1  # keep the closure in the no-positive-cycle regime
    np.fill_diagonal(A, 0.0)
    W = d[:, None] - G.T
    b = rng.normal(size=m)
    return A, W, b


def best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,150,400")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    jit_pairs = []
    if K.USE_NUMBA:
        jit_pairs = [
            ("maxplus_closure", K.maxplus_closure, K.maxplus_closure_numpy, "closure"),
            ("shortest_violation", K.shortest_violation, K.shortest_violation_numpy, "scan"),
            ("chain_dp_max", K.chain_dp_max, K.chain_dp_max_numpy, "dp"),
        ]
    else:
        print("numba disabled (MONOSCOPE_NO_NUMBA or import failure); nothing to compare")
        return

    K.warmup()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20} {'m':>5} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for m in sizes:
        A, W, b = tropical_inputs(rng, m)
        for name, jit_fn, np_fn, kind in jit_pairs:
            if kind == "closure":
                run_jit = lambda: jit_fn(A)
                run_np = lambda: np_fn(A)
            elif kind == "scan":
                run_jit = lambda: jit_fn(W, 1e-9, min(m, 12))
                run_np = lambda: np_fn(W, 1e-9, min(m, 12))
            else:
                run_jit = lambda: jit_fn(b, A, b, 8)
                run_np = lambda: np_fn(b, A, b, 8)
            t_jit = best_of(run_jit, args.repeats)
            t_np = best_of(run_np, args.repeats)
            print(f"{name:<20} {m:>5} {t_jit * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms {t_np / t_jit:>8.1f}x")


if __name__ == "__main__":
    main()
