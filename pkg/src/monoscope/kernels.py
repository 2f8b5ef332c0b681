"""Tropical (max-plus / min-plus) kernels behind the chain recursions.

Each kernel exists twice: an explicit-loop version compiled with numba, and a
vectorised pure-numpy fallback.  The fallback is selected by setting the
environment variable ``MONOSCOPE_NO_NUMBA=1`` (or automatically when numba is
not importable).  Both paths break ties the same way (lowest index first) and
produce bit-identical outputs; ``benchmarks/bench_kernels.py`` compares their
speed.

Conventions: matrices are dense float64 with exactly-zero diagonals, +/-inf
appear only as empty-set sentinels, and no tolerance is applied inside any
accumulation.
"""

from __future__ import annotations

import os

import numpy as np

_INF = np.inf


def _numba_enabled() -> bool:
    flag = os.environ.get("MONOSCOPE_NO_NUMBA", "").strip().lower()
    if flag in {"1", "true", "yes", "on"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()


# -- loop bodies (numba targets) ------------------------------------------------


def _maxplus_closure_loops(A):
    # Floyd-Warshall on the (max, +) semiring; via[i, j] is the last pivot
    # that strictly improved the walk i -> j, or -1 for the direct step.
    m = A.shape[0]
    C = A.copy()
    via = np.full((m, m), -1, dtype=np.int64)
    for k in range(m):
        for i in range(m):
            cik = C[i, k]
            for j in range(m):
                v = cik + C[k, j]
                if v > C[i, j]:
                    C[i, j] = v
                    via[i, j] = k
    return C, via


def _shortest_violation_loops(W, tol, kmax):
    # Min-plus powers of W: after the k-th product, P[i, i] is the cheapest
    # closed walk of exactly k steps through i.  Returns (k, start) for the
    # first k whose diagonal drops below -tol, else (0, -1).
    m = W.shape[0]
    P = W.copy()
    for k in range(2, kmax + 1):
        Q = np.empty_like(P)
        for i in range(m):
            for j in range(m):
                best = _INF
                for l in range(m):
                    v = P[i, l] + W[l, j]
                    if v < best:
                        best = v
                Q[i, j] = best
        P = Q
        bi = -1
        bv = -tol
        for i in range(m):
            if P[i, i] < bv:
                bv = P[i, i]
                bi = i
        if bi >= 0:
            return k, bi
    return 0, -1


def _walk_parents_loops(W, start, steps):
    # Forward min-plus DP from one start node with full parent history.
    m = W.shape[0]
    dist = np.full(m, _INF)
    dist[start] = 0.0
    parents = np.full((steps, m), -1, dtype=np.int64)
    for t in range(steps):
        nd = np.full(m, _INF)
        for j in range(m):
            best = _INF
            bp = -1
            for l in range(m):
                v = dist[l] + W[l, j]
                if v < best:
                    best = v
                    bp = l
            nd[j] = best
            parents[t, j] = bp
        dist = nd
    return dist, parents


def _chain_dp_max_loops(bstart, A, bend, steps):
    # Max-plus chain DP: f_1 = bstart, f_{t+1}[k] = max_j f_t[j] + A[j, k],
    # finishing with bend.  Stops early on an exact fixed point (the zero
    # diagonal makes f monotone nondecreasing).  Returns the value, the last
    # chain index, the parent table, and the number of executed steps.
    m = bstart.shape[0]
    f = bstart.copy()
    parents = np.full((steps, m), -1, dtype=np.int64)
    done = 0
    for t in range(steps):
        nf = np.empty(m)
        changed = False
        for k in range(m):
            best = -_INF
            bp = -1
            for j in range(m):
                v = f[j] + A[j, k]
                if v > best:
                    best = v
                    bp = j
            nf[k] = best
            parents[t, k] = bp
            if best != f[k]:
                changed = True
        f = nf
        done = t + 1
        if not changed:
            done = t
            break
    best = -_INF
    bk = -1
    for k in range(m):
        v = f[k] + bend[k]
        if v > best:
            best = v
            bk = k
    return best, bk, parents, done


def _chain_dp_min_loops(s, M, E, steps):
    # Min-plus twin used by the lower chain function; E[p, k] carries the
    # constrained final step (+inf outside the admissible endpoints).
    m = s.shape[0]
    f = s.copy()
    parents = np.full((steps, m), -1, dtype=np.int64)
    done = 0
    for t in range(steps):
        nf = np.empty(m)
        changed = False
        for r in range(m):
            best = _INF
            bp = -1
            for j in range(m):
                v = f[j] + M[j, r]
                if v < best:
                    best = v
                    bp = j
            nf[r] = best
            parents[t, r] = bp
            if best != f[r]:
                changed = True
        f = nf
        done = t + 1
        if not changed:
            done = t
            break
    best = _INF
    bp = -1
    bk = -1
    for p in range(m):
        fp = f[p]
        for k in range(m):
            v = fp + E[p, k]
            if v < best:
                best = v
                bp = p
                bk = k
    return best, bp, bk, parents, done


# -- numpy fallbacks ---------------------------------------------------------


def maxplus_closure_numpy(A):
    m = A.shape[0]
    C = A.copy()
    via = np.full((m, m), -1, dtype=np.int64)
    for k in range(m):
        alt = C[:, k : k + 1] + C[k : k + 1, :]
        mask = alt > C
        C[mask] = alt[mask]
        via[mask] = k
    return C, via


def shortest_violation_numpy(W, tol, kmax):
    m = W.shape[0]
    P = W.copy()
    for k in range(2, kmax + 1):
        Q = np.empty_like(P)
        for i in range(m):
            Q[i] = np.min(P[i][:, None] + W, axis=0)
        P = Q
        d = np.diagonal(P)
        if d.min(initial=_INF) < -tol:
            return k, int(np.argmin(d))
    return 0, -1


def walk_parents_numpy(W, start, steps):
    m = W.shape[0]
    dist = np.full(m, _INF)
    dist[start] = 0.0
    parents = np.full((steps, m), -1, dtype=np.int64)
    for t in range(steps):
        scores = dist[:, None] + W
        parents[t] = np.argmin(scores, axis=0)
        dist = np.min(scores, axis=0)
    return dist, parents


def chain_dp_max_numpy(bstart, A, bend, steps):
    m = bstart.shape[0]
    f = bstart.copy()
    parents = np.full((steps, m), -1, dtype=np.int64)
    done = 0
    for t in range(steps):
        scores = f[:, None] + A
        nf = np.max(scores, axis=0)
        parents[t] = np.argmax(scores, axis=0)
        if np.array_equal(nf, f):
            done = t
            break
        f = nf
        done = t + 1
    final = f + bend
    bk = int(np.argmax(final))
    return float(final[bk]), bk, parents, done


def chain_dp_min_numpy(s, M, E, steps):
    m = s.shape[0]
    f = s.copy()
    parents = np.full((steps, m), -1, dtype=np.int64)
    done = 0
    for t in range(steps):
        scores = f[:, None] + M
        nf = np.min(scores, axis=0)
        parents[t] = np.argmin(scores, axis=0)
        if np.array_equal(nf, f):
            done = t
            break
        f = nf
        done = t + 1
    final = f[:, None] + E
    flat = int(np.argmin(final))
    bp, bk = divmod(flat, m)
    best = float(final[bp, bk])
    if best == _INF:
        bp = bk = -1
    return best, bp, bk, parents, done


# -- dispatch -----------------------------------------------------------------

if USE_NUMBA:
    from numba import njit

    maxplus_closure = njit(cache=True)(_maxplus_closure_loops)
    shortest_violation = njit(cache=True)(_shortest_violation_loops)
    walk_parents = njit(cache=True)(_walk_parents_loops)
    chain_dp_max = njit(cache=True)(_chain_dp_max_loops)
    chain_dp_min = njit(cache=True)(_chain_dp_min_loops)
else:
    maxplus_closure = maxplus_closure_numpy
    shortest_violation = shortest_violation_numpy
    walk_parents = walk_parents_numpy
    chain_dp_max = chain_dp_max_numpy
    chain_dp_min = chain_dp_min_numpy


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (no-op on the numpy path)."""
    A = np.zeros((2, 2))
    A[0, 1] = -1.0
    A[1, 0] = -1.0
    maxplus_closure(A)
    shortest_violation(A, 1e-9, 2)
    walk_parents(A, 0, 2)
    b = np.zeros(2)
    chain_dp_max(b, A, b, 2)
    E = np.zeros((2, 2))
    chain_dp_min(b, A, E, 2)
