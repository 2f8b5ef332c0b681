"""Polyhedral lower convex envelope of the lower chain function.

For a finite operator the lower chain function chi_n is finite exactly on the
grid D(T) x R(T) (all of it for n >= 2, the graph alone for n = 1), so its
closed convex hull is the polyhedral envelope of finitely many finite support
points and no separate closure step is needed.  Evaluating the envelope at q
is the LP

    min sum lam_k v_k   s.t.  sum lam_k z_k = q,  sum lam_k = 1,  lam >= 0,

infeasible exactly when q is outside the convex hull of the support (+inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chains import DEFAULT_TOL, _query_pair, chi_n
from .errors import ImproperValueError, InputError
from .extreal import POS_INF, ExtReal
from .operators import FiniteOperator
from .simplex import LPResult, solve_eq_lp
from .spaces import PairingSpace


@dataclass(frozen=True)
class EnvelopeInstance:
    space: PairingSpace
    points: np.ndarray  # (K, d1 + d2) support points z_k
    values: np.ndarray  # (K,) finite chain values v_k
    order: int | float  # the chain order n it was built from


@dataclass(frozen=True)
class PsiViolation:
    point: np.ndarray  # z in R^(d1+d2)
    psi: float
    c: float


def build_envelope(T: FiniteOperator, n) -> EnvelopeInstance:
    """Tabulate chi_n on its finite effective domain.

    n = 1 supports the graph itself; n >= 2 the full D(T) x R(T) grid.  An
    operator whose chi_inf is identically -inf (a negative chain cycle) has
    an improper envelope and is rejected.
    """
    if T.m == 0:
        raise InputError("envelope of the empty operator is undefined")
    from .chains import normalize_order

    nn, infinite = normalize_order(n)
    if infinite and T.closure[2] > 0.0:
        raise ImproperValueError("envelope undefined (improper): chi_inf is identically -inf")
    if not infinite and nn == 1:
        points = np.hstack([T.xs, T.ys])
        values = np.array([T.space.pair(T.xs[i], T.ys[i]) for i in range(T.m)])
        return EnvelopeInstance(T.space, points, values, 1)
    xs = _unique(T.xs)
    ys = _unique(T.ys)
    pts = []
    vals = []
    for x in xs:
        for y in ys:
            v = chi_n(T, n, (x, y)).value
            if v.is_finite:
                pts.append(np.concatenate([x, y]))
                vals.append(v.value)
    return EnvelopeInstance(T.space, np.array(pts), np.array(vals), math.inf if infinite else nn)


def _unique(rows: np.ndarray) -> list[np.ndarray]:
    seen: set[bytes] = set()
    out = []
    for i in range(rows.shape[0]):
        key = rows[i].tobytes()
        if key not in seen:
            seen.add(key)
            out.append(rows[i])
    return out


def psi_eval(E: EnvelopeInstance, q) -> ExtReal:
    """Envelope value at the query pair; +inf outside the support hull."""
    x, y = _query_pair(E.space, q)
    return _psi_point(E, np.concatenate([x, y]))


def _psi_point(E: EnvelopeInstance, z: np.ndarray) -> ExtReal:
    K = E.points.shape[0]
    A = np.vstack([E.points.T, np.ones((1, K))])
    b = np.concatenate([z, [1.0]])
    res: LPResult = solve_eq_lp(E.values, A, b)
    if res.status == "infeasible":
        return POS_INF
    if res.status != "optimal":
        raise ImproperValueError("envelope LP reported unbounded")
    return ExtReal(res.objective)


def find_psi_violation(
    T: FiniteOperator,
    *,
    hull_samples: int = 200,
    seed: int | np.random.Generator = 0,
    tol: float = DEFAULT_TOL,
) -> PsiViolation | None:
    """First sampled point where the order-1 envelope dips below the coupling.

    Scans the support points, all pairwise midpoints, then random hull points;
    the midpoint family alone already catches every violating pair of graph
    points.  Returns None when no sampled point violates psi >= c - tol.
    """
    E = build_envelope(T, 1)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    K = E.points.shape[0]
    candidates = [E.points[i] for i in range(K)]
    for i in range(K):
        for j in range(i + 1, K):
            candidates.append(0.5 * (E.points[i] + E.points[j]))
    for _ in range(hull_samples):
        lam = rng.exponential(size=K)
        lam /= lam.sum()
        candidates.append(lam @ E.points)
    for z in candidates:
        psi = _psi_point(E, z)
        c = E.space.coupling_z(z)
        if psi.value < c - tol:
            return PsiViolation(z, psi.value, c)
    return None


def check_monotone_via_psi(
    T: FiniteOperator,
    *,
    hull_samples: int = 200,
    seed: int | np.random.Generator = 0,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Sampled envelope test for plain (2-)monotonicity.

    A False is a certificate (some sampled point has psi < c - tol, see
    find_psi_violation for the witness); a True is evidence at the sampled
    resolution, and is conclusive for violations between graph pairs because
    all midpoints are sampled.
    """
    if T.m == 0:
        raise InputError("monotonicity-via-envelope needs a non-empty graph")
    return find_psi_violation(T, hull_samples=hull_samples, seed=seed, tol=tol) is None
