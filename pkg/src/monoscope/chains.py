"""Chain-based quantities of a finite graph operator.

Everything here reduces to tropical dynamic programming over the chain-step
matrices: the upper chain function phi_n (order-n Fitzpatrick function) is a
max-plus DP, the lower chain function chi_n is its endpoint-constrained
min-plus twin, n-monotonicity is negative-cycle detection in the cycle-weight
matrix W, and the order-infinity values come from the cached max-plus closure.

Index conventions are 0-based.  A phi argchain [i1, ..., ik] certifies
  <x - x_{i1}, y_{i1}> + sum_t <x_{i_{t-1}} - x_{i_t}, y_{i_t}> + <x_{ik}, y>;
a chi argchain [j, ..., p, k] certifies
  <x_j, y> + sum over the middle steps + <x - x_p, y_k>,
where (x_j, y) and (x, y_k) lie in the graph.  Chains may be shorter than the
requested order n: the zero diagonal lets any chain be padded to exact length
n without changing its value.

The comparison tolerance ``tol`` enters only at decisions against the
coupling c, never inside any accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InputError
from .extreal import NEG_INF, POS_INF, ExtReal
from .operators import FiniteOperator
from .spaces import PairingSpace

DEFAULT_TOL = 1e-9

_MAX_DP_CELLS = 20_000_000  # parent-table guard for absurd finite orders


@dataclass(frozen=True)
class ChainValue:
    value: ExtReal
    argchain: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CycleWitness:
    indices: tuple[int, ...]
    cycle_sum: float


@dataclass(frozen=True)
class OrderReport:
    order: int | float  # int or math.inf
    witness: CycleWitness | None = None


# -- small shared helpers -------------------------------------------------------


def normalize_order(n) -> tuple[int, bool]:
    """Return (n, is_infinite); accepts positive ints and math.inf."""
    if isinstance(n, bool):
        raise InputError("chain order must be a positive integer or inf")
    if isinstance(n, (int, np.integer)):
        if n < 1:
            raise InputError("chain order must be >= 1")
        return int(n), False
    try:
        f = float(n)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid chain order {n!r}") from exc
    if math.isinf(f) and f > 0:
        return -1, True
    if f.is_integer() and f >= 1:
        return int(f), False
    raise InputError(f"invalid chain order {n!r}")


def _query_pair(space: PairingSpace, q) -> tuple[np.ndarray, np.ndarray]:
    if not isinstance(q, (tuple, list)) or len(q) != 2:
        raise InputError("query must be a pair (x, y)")
    x = np.atleast_1d(np.asarray(q[0], dtype=np.float64))
    y = np.atleast_1d(np.asarray(q[1], dtype=np.float64))
    if x.shape != (space.d1,):
        raise InputError(f"query x has dimension {x.shape[0]}, expected {space.d1}")
    if y.shape != (space.d2,):
        raise InputError(f"query y has dimension {y.shape[0]}, expected {space.d2}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InputError("query must be finite")
    return x, y


def _backtrack(last: int, parents: np.ndarray, done: int) -> list[int]:
    chain = [int(last)]
    cur = int(last)
    for t in range(done - 1, -1, -1):
        cur = int(parents[t, cur])
        chain.append(cur)
    chain.reverse()
    return chain


def _expand_walk(via: np.ndarray, i: int, j: int) -> list[int]:
    k = int(via[i, j])
    if k < 0:
        return []
    return _expand_walk(via, i, k) + [k] + _expand_walk(via, k, j)


def _matching_indices(rows: np.ndarray, v: np.ndarray) -> list[int]:
    key = v.tobytes()
    return [i for i in range(rows.shape[0]) if rows[i].tobytes() == key]


def _guard_steps(steps: int, m: int) -> None:
    if steps * max(m, 1) > _MAX_DP_CELLS:
        raise InputError(f"finite chain order too large for exact DP (n-1={steps}, m={m})")


# -- upper chain function (max-plus) ------------------------------------------


def phi_n(T: FiniteOperator, n, q) -> ChainValue:
    """Largest chain sum of order n anchored at the query pair.

    Finite n costs O(n m^2).  For n = inf a strictly positive chain cycle
    forces +inf everywhere (the chain digraph is complete); otherwise the
    value is read off the cached max-plus closure.  Empty operator: -inf.
    """
    nn, infinite = normalize_order(n)
    x, y = _query_pair(T.space, q)
    if T.m == 0:
        return ChainValue(NEG_INF, None)
    bstart, bend = _phi_arrays(T, x, y)
    if not infinite:
        _guard_steps(nn - 1, T.m)
        value, bk, parents, done = kernels.chain_dp_max(bstart, T.weights.A, bend, nn - 1)
        return ChainValue(ExtReal(float(value)), tuple(_backtrack(bk, parents, done)))
    value, chain = _phi_inf_from_arrays(T, bstart, bend)
    if chain is None:
        return ChainValue(POS_INF, None)
    return ChainValue(ExtReal(value), tuple(chain))


def _phi_arrays(T: FiniteOperator, x, y):
    gx = T.space.pair_many_y(x, T.ys)  # <x, y_j>
    gy = T.space.pair_many_x(y, T.xs)  # <x_k, y>
    bstart = gx - np.diagonal(T.gram)
    return bstart, gy


def _phi_inf_from_arrays(T: FiniteOperator, bstart, bend):
    C, via, maxdiag = T.closure
    if maxdiag > 0.0:
        return math.inf, None
    S = bstart[:, None] + C
    tot = S.max(axis=0) + bend
    k = int(np.argmax(tot))
    j = int(np.argmax(S[:, k]))
    chain = [j] + _expand_walk(via, j, k) + ([k] if k != j else [])
    return float(tot[k]), chain


# -- lower chain function (min-plus) ------------------------------------------


def chi_n(T: FiniteOperator, n, q) -> ChainValue:
    """Smallest chain sum of order n with both endpoints pinned to the graph.

    +inf unless (n = 1 and q lies in the graph) or (n >= 2, x in D(T) and
    y in R(T)).  For n = inf a negative min-plus cycle forces -inf.
    """
    nn, infinite = normalize_order(n)
    x, y = _query_pair(T.space, q)
    if T.m == 0:
        return ChainValue(POS_INF, None)
    if not infinite and nn == 1:
        for i in _matching_indices(T.xs, x):
            if T.ys[i].tobytes() == y.tobytes():
                return ChainValue(ExtReal(T.space.pair(x, y)), (i,))
        return ChainValue(POS_INF, None)
    jy = _matching_indices(T.ys, y)
    kx = _matching_indices(T.xs, x)
    if not jy or not kx:
        return ChainValue(POS_INF, None)
    gx = T.space.pair_many_y(x, T.ys)
    gy = T.space.pair_many_x(y, T.xs)
    s = np.full(T.m, np.inf)
    s[jy] = gy[jy]
    E = np.full((T.m, T.m), np.inf)
    E[:, kx] = gx[None, kx] - T.gram[:, kx]
    M = -T.weights.A
    if not infinite:
        _guard_steps(nn - 2, T.m)
        value, bp, bk, parents, done = kernels.chain_dp_min(s, M, E, nn - 2)
        chain = _backtrack(bp, parents, done) + [int(bk)]
        return ChainValue(ExtReal(float(value)), tuple(chain))
    C, via, maxdiag = T.closure
    if maxdiag > 0.0:  # negative min-plus cycle
        return ChainValue(NEG_INF, None)
    scores = s[:, None] - C  # s[j] + (min-plus closure of M)[j, p]
    alpha = scores.min(axis=0)
    beta = E.min(axis=1)
    tot = alpha + beta
    p = int(np.argmin(tot))
    j = int(np.argmin(scores[:, p]))
    k = int(np.argmin(E[p]))
    chain = [j] + _expand_walk(via, j, p) + ([p] if p != j else []) + [k]
    return ChainValue(ExtReal(float(tot[p])), tuple(chain))


# -- monotonicity decisions ----------------------------------------------------


def is_n_monotone(T: FiniteOperator, n, *, tol: float = DEFAULT_TOL) -> bool:
    """True iff every closed chain of length n has cycle sum >= -tol.

    Any violating closed walk contains a violating simple cycle of length
    <= m, and free self-steps pad short violations up to length n, so the
    search never looks past min(n, m) steps.  n = 1 is always monotone.
    """
    nn, infinite = normalize_order(n)
    if T.m <= 1 or (not infinite and nn == 1):
        return True
    _, _, maxdiag = T.closure
    if maxdiag <= 0.0:
        return True
    kmax = T.m if infinite else min(nn, T.m)
    L, _ = kernels.shortest_violation(T.weights.W, tol, kmax)
    return L == 0


def monotonicity_order(T: FiniteOperator, *, tol: float = DEFAULT_TOL) -> OrderReport:
    """Largest n for which T is n-monotone, with a violating cycle witness.

    Equals (length of the shortest cycle with sum < -tol) - 1, or inf when no
    such cycle exists.  Cycle sums in (-tol, 0) are treated as zero, so the
    reported order can be inf even though an exactly-negative cycle exists.
    """
    if T.m <= 1:
        return OrderReport(math.inf, None)
    _, _, maxdiag = T.closure
    if maxdiag <= 0.0:
        return OrderReport(math.inf, None)
    W = T.weights.W
    L, start = kernels.shortest_violation(W, tol, T.m)
    if L == 0:
        return OrderReport(math.inf, None)
    dist, parents = kernels.walk_parents(W, start, L)
    seq = [int(start)]
    cur = int(start)
    for t in range(L - 1, -1, -1):
        cur = int(parents[t, cur])
        seq.append(cur)
    seq.reverse()
    return OrderReport(L - 1, CycleWitness(tuple(seq[:-1]), float(dist[start])))


def is_n_related(T: FiniteOperator, n, q, *, tol: float = DEFAULT_TOL) -> bool:
    """Whether adding q to the graph preserves every n-cycle inequality.

    Decided through the order-(n-1) upper chain value: q is n-related iff
    phi_{n-1}(q) <= c(q) + tol.
    """
    nn, infinite = normalize_order(n)
    if not infinite and nn < 2:
        raise InputError("relatedness needs n >= 2 or inf")
    x, y = _query_pair(T.space, q)
    v = phi_n(T, math.inf if infinite else nn - 1, (x, y)).value
    return v.value <= T.space.pair(x, y) + tol


def satisfies_cn(T: FiniteOperator, n, q, *, tol: float = DEFAULT_TOL) -> bool:
    """Existence of a graph chain pushing the order-(n-1) sum up to c(q).

    Equivalent to phi_{n-1}(q) >= c(q) - tol; on finite graphs the supremum
    is attained, so this is exactly the chain-existence condition used in the
    maximality characterizations.
    """
    nn, infinite = normalize_order(n)
    if not infinite and nn < 2:
        raise InputError("the chain condition needs n >= 2 or inf")
    x, y = _query_pair(T.space, q)
    v = phi_n(T, math.inf if infinite else nn - 1, (x, y)).value
    return v.value >= T.space.pair(x, y) - tol


# -- antiderivative and the product operator ------------------------------------


def antiderivative(T: FiniteOperator, base_index: int, x) -> ExtReal:
    """Minimal potential r with r(x_base) = 0 whose subgradient extends T.

    Evaluated as phi_inf(x, y_base) - c(x_base, y_base).  For a cyclically
    monotone operator this is finite with r(x_base) = 0 exactly; otherwise a
    positive chain cycle makes it +inf.
    """
    x0, y0 = T.point(base_index)
    xq = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if xq.shape != (T.space.d1,):
        raise InputError(f"x has dimension {xq.shape}, expected {T.space.d1}")
    gx = T.space.pair_many_y(xq, T.ys)
    gy = T.space.pair_many_x(y0, T.xs)
    bstart = gx - np.diagonal(T.gram)
    value, chain = _phi_inf_from_arrays(T, bstart, gy)
    if chain is None:
        return POS_INF
    return ExtReal(value - gy[base_index])


def build_kt(T: FiniteOperator) -> FiniteOperator:
    """The product operator on Z = X x Y whose chain values factorise.

    Its graph is {((x_i, y_j), (x_j, y_i)) : i, j}, i.e. exactly the pairs
    (z, w) with both cross pairs (x, v) and (u, y) in Graph T, living in the
    self-paired product system.
    """
    zspace = T.space.product()
    pts = []
    for i in range(T.m):
        for j in range(T.m):
            pts.append(
                (
                    np.concatenate([T.xs[i], T.ys[j]]),
                    np.concatenate([T.xs[j], T.ys[i]]),
                )
            )
    return FiniteOperator(zspace, pts)


# -- chain re-evaluation (certificates) ----------------------------------------


def phi_chain_sum(T: FiniteOperator, q, chain) -> float:
    """Recompute an upper chain sum from raw couplings."""
    x, y = _query_pair(T.space, q)
    idx = list(chain)
    if not idx:
        raise InputError("empty chain")
    total = T.space.pair(x - T.xs[idx[0]], T.ys[idx[0]])
    for prev, cur in zip(idx, idx[1:]):
        total += T.space.pair(T.xs[prev] - T.xs[cur], T.ys[cur])
    total += T.space.pair(T.xs[idx[-1]], y)
    return total


def chi_chain_sum(T: FiniteOperator, q, chain) -> float:
    """Recompute a lower chain sum from raw couplings."""
    x, y = _query_pair(T.space, q)
    idx = list(chain)
    if not idx:
        raise InputError("empty chain")
    if len(idx) == 1:
        return T.space.pair(x, y)
    total = T.space.pair(T.xs[idx[0]], y)
    for prev, cur in zip(idx, idx[1:-1]):
        total += T.space.pair(T.xs[cur] - T.xs[prev], T.ys[cur])
    total += T.space.pair(x - T.xs[idx[-2]], T.ys[idx[-1]])
    return total
