"""Closed-form reference operators with exact chain values.

Four families: the identity map, the planar rotation R_theta, the normal
cone of a polytope, and linear skew operators (optionally restricted to a
subspace).  Each exposes exact order-n upper/lower chain values where a
closed form exists, its exact monotonicity order, and a deterministic graph
sampler used to cross-validate the chain DP.  All oracles live in the
standard inner-product pairing.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

import numpy as np

from .chains import normalize_order
from .errors import InputError, UnsupportedOracleError
from .extreal import NEG_INF, POS_INF, ExtReal
from .operators import FiniteOperator
from .simplex import feasible
from .spaces import PairingSpace

GRAPH_TOL = 1e-9  # membership band for the sharp indicator branches
RANK_TOL = 1e-10  # singular-value cutoff for the linear-algebra order tests


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic sampling parameters; fields are used per oracle kind."""

    grid_count: int = 5
    lo: float = -1.0
    hi: float = 1.0
    radii: tuple[float, ...] = (1.0,)
    circle_count: int = 36
    magnitudes: tuple[float, ...] = (1.0,)

    def grid(self) -> np.ndarray:
        if self.grid_count < 1:
            raise InputError("grid count must be >= 1")
        if not self.lo <= self.hi:
            raise InputError("grid bounds must satisfy lo <= hi")
        return np.linspace(self.lo, self.hi, self.grid_count)


def parse_angle(value) -> float:
    """Angles as numbers or exact pi fractions like 'pi/6', '-3pi/4'."""
    if isinstance(value, (int, float)):
        return float(value)
    s = str(value).replace(" ", "").replace("*", "")
    m = re.fullmatch(r"([+-]?)(\d+(?:\.\d+)?)?pi(?:/(\d+(?:\.\d+)?))?", s)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        div = float(m.group(3)) if m.group(3) else 1.0
        return sign * coef * math.pi / div
    try:
        return float(s)
    except ValueError as exc:
        raise InputError(f"cannot parse angle {value!r}") from exc


class AnalyticOracle:
    dim: int
    kind: str

    def phi(self, n, q) -> ExtReal:
        raise UnsupportedOracleError(f"{self.kind} oracle has no closed-form phi")

    def chi(self, n, q) -> ExtReal:
        raise UnsupportedOracleError(f"{self.kind} oracle has no closed-form chi")

    def order(self) -> int | float:
        raise NotImplementedError

    def sample(self, spec: SampleSpec) -> FiniteOperator:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def _query(self, q) -> tuple[np.ndarray, np.ndarray]:
        if not isinstance(q, (tuple, list)) or len(q) != 2:
            raise InputError("query must be a pair (x, y)")
        x = np.atleast_1d(np.asarray(q[0], dtype=np.float64))
        y = np.atleast_1d(np.asarray(q[1], dtype=np.float64))
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise InputError(f"query dims {x.shape}/{y.shape} do not match oracle dim {self.dim}")
        return x, y


class IdentityOracle(AnalyticOracle):
    kind = "identity"

    def __init__(self, dim: int):
        if dim < 1:
            raise InputError("identity oracle needs dim >= 1")
        self.dim = int(dim)

    def phi(self, n, q) -> ExtReal:
        nn, infinite = normalize_order(n)
        x, y = self._query(q)
        if infinite:
            return ExtReal(0.5 * float(x @ x) + 0.5 * float(y @ y))
        w = float((x - y) @ (x - y))
        return ExtReal(nn / (2.0 * (nn + 1)) * w + float(x @ y))

    def chi(self, n, q) -> ExtReal:
        nn, infinite = normalize_order(n)
        if not infinite and nn < 2:
            raise InputError("lower chain oracle needs n >= 2")
        x, y = self._query(q)
        if infinite:
            return ExtReal(0.5 * float(x @ x) + 0.5 * float(y @ y))
        w = float((x - y) @ (x - y))
        return ExtReal(nn / (2.0 * (nn - 1)) * w + float(x @ y))

    def order(self) -> float:
        return math.inf

    def sample(self, spec: SampleSpec) -> FiniteOperator:
        axes = [spec.grid()] * self.dim
        pts = [(np.array(c), np.array(c)) for c in itertools.product(*axes)]
        return FiniteOperator(PairingSpace(self.dim, self.dim), pts)

    def to_dict(self) -> dict:
        return {"kind": "identity", "dim": self.dim}


class RotationOracle(AnalyticOracle):
    kind = "rotation"
    dim = 2

    def __init__(self, theta: float):
        theta = float(theta)
        if not -math.pi <= theta <= math.pi:
            raise InputError("rotation angle must lie in [-pi, pi]")
        self.theta = theta
        c, s = math.cos(theta), math.sin(theta)
        self.matrix = np.array([[c, -s], [s, c]])

    def _gap_sq(self, x, y) -> float:
        d = y - self.matrix @ x
        return float(d @ d)

    def _on_graph(self, x, y) -> bool:
        return math.sqrt(self._gap_sq(x, y)) <= GRAPH_TOL

    def phi(self, n, q) -> ExtReal:
        nn, infinite = normalize_order(n)
        x, y = self._query(q)
        th = self.theta
        if infinite:
            if th == 0.0:
                return ExtReal(0.5 * float(x @ x) + 0.5 * float(y @ y))
            return POS_INF
        w = self._gap_sq(x, y)
        xy = float(x @ y)
        if th == 0.0:
            return ExtReal(nn / (2.0 * (nn + 1)) * w + xy)
        bound = math.pi / (nn + 1)
        if abs(th) < bound:
            return ExtReal(math.sin(nn * th) / (2.0 * math.sin((nn + 1) * th)) * w + xy)
        if abs(th) == bound:
            # phi collapses onto the restricted coupling: c on the graph, +inf off it
            return ExtReal(xy) if self._on_graph(x, y) else POS_INF
        return POS_INF

    def chi(self, n, q) -> ExtReal:
        nn, infinite = normalize_order(n)
        if not infinite and nn < 2:
            raise InputError("lower chain oracle needs n >= 2")
        x, y = self._query(q)
        th = self.theta
        if infinite:
            if th == 0.0:
                return ExtReal(0.5 * float(x @ x) + 0.5 * float(y @ y))
            return NEG_INF
        w = self._gap_sq(x, y)
        xy = float(x @ y)
        if nn == 2:
            return ExtReal(math.cos(th) * w + xy)
        if th == 0.0:
            return ExtReal(nn / (2.0 * (nn - 1)) * w + xy)
        bound = math.pi / (nn - 1)
        if abs(th) < bound:
            return ExtReal(math.sin(nn * th) / (2.0 * math.sin((nn - 1) * th)) * w + xy)
        if abs(th) == bound:
            return ExtReal(xy) if self._on_graph(x, y) else NEG_INF
        return NEG_INF

    def order(self) -> int | float:
        if self.theta == 0.0:
            return math.inf
        a = abs(self.theta)
        n = max(1, int(math.floor(math.pi / a)))
        while (n + 1) * a <= math.pi + 1e-12:
            n += 1
        while n > 1 and n * a > math.pi + 1e-12:
            n -= 1
        return n

    def sample(self, spec: SampleSpec) -> FiniteOperator:
        if spec.circle_count < 1:
            raise InputError("circle count must be >= 1")
        if any(r <= 0 for r in spec.radii):
            raise InputError("radii must be positive")
        pts = []
        for r in spec.radii:
            for t in range(spec.circle_count):
                a = 2.0 * math.pi * t / spec.circle_count
                x = np.array([r * math.cos(a), r * math.sin(a)])
                pts.append((x, self.matrix @ x))
        return FiniteOperator(PairingSpace(2, 2), pts)

    def to_dict(self) -> dict:
        return {"kind": "rotation", "theta": self.theta}


class NormalConeOracle(AnalyticOracle):
    """Normal cone of the convex hull of a finite vertex list.

    The upper chain value ind_C(x) + sigma_C(y) holds for every order n and
    any polytope.  The lower chain value additionally carries the indicator
    of the normal-cone range and is only offered for intervals and
    axis-aligned boxes, where that range is an explicit union of coordinate
    half-line products (which for a compact box covers every y).
    """

    kind = "normal_cone"

    def __init__(self, vertices):
        V = np.atleast_2d(np.asarray(vertices, dtype=np.float64))
        if V.ndim != 2 or V.shape[0] < 1:
            raise InputError("vertex list must be a non-empty (K, d) array")
        if not np.all(np.isfinite(V)):
            raise InputError("vertices must be finite")
        keep: list[int] = []
        seen: set[bytes] = set()
        for i in range(V.shape[0]):
            key = V[i].tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(i)
        self.vertices = V[keep]
        self.dim = V.shape[1]

    def support(self, y: np.ndarray) -> float:
        return float(np.max(self.vertices @ y))

    def contains(self, x: np.ndarray) -> bool:
        K = self.vertices.shape[0]
        A = np.vstack([self.vertices.T, np.ones((1, K))])
        return feasible(A, np.concatenate([x, [1.0]]))

    def phi(self, n, q) -> ExtReal:
        normalize_order(n)  # value is order-independent
        x, y = self._query(q)
        if not self.contains(x):
            return POS_INF
        return ExtReal(self.support(y))

    def _box(self) -> tuple[np.ndarray, np.ndarray]:
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        if self.dim > 1:
            corners = {
                np.array(c).tobytes()
                for c in itertools.product(*[(lo[i], hi[i]) for i in range(self.dim)])
            }
            actual = {self.vertices[i].tobytes() for i in range(self.vertices.shape[0])}
            if corners != actual:
                raise UnsupportedOracleError(
                    "lower chain values for normal cones need an interval or axis-aligned box"
                )
        return lo, hi

    def _in_cone_range(self, y: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> bool:
        # Range of the normal-cone map of a box: per coordinate the normals
        # over all faces sweep (-inf, 0] at the lower face and [0, +inf) at
        # the upper one (everything when the coordinate is degenerate), so
        # the admissible set is the full product of those unions.
        for i in range(self.dim):
            if lo[i] < hi[i]:
                if not (y[i] <= 0.0 or y[i] >= 0.0):
                    return False
        return True

    def chi(self, n, q) -> ExtReal:
        nn, infinite = normalize_order(n)
        if not infinite and nn < 2:
            raise InputError("lower chain oracle needs n >= 2")
        x, y = self._query(q)
        lo, hi = self._box()
        if not self.contains(x) or not self._in_cone_range(y, lo, hi):
            return POS_INF
        return ExtReal(self.support(y))

    def order(self) -> float:
        return math.inf

    def sample(self, spec: SampleSpec) -> FiniteOperator:
        if any(mg <= 0 for mg in spec.magnitudes):
            raise InputError("magnitudes must be positive")
        lo, hi = self._box()
        d = self.dim
        zero = np.zeros(d)
        pts: list[tuple[np.ndarray, np.ndarray]] = []
        for corner_vals in itertools.product(*[(lo[i], hi[i]) for i in range(d)]):
            v = np.array(corner_vals)
            pts.append((v, zero))
            rays = []
            for i in range(d):
                if lo[i] == hi[i]:
                    rays.append(_unit(d, i))
                    rays.append(-_unit(d, i))
                elif v[i] == lo[i]:
                    rays.append(-_unit(d, i))
                else:
                    rays.append(_unit(d, i))
            for mg in spec.magnitudes:
                for ray in rays:
                    pts.append((v, mg * ray))
        center = 0.5 * (lo + hi)
        pts.append((center.copy(), zero))
        for i in range(d):
            if lo[i] < hi[i]:
                for side in (lo[i], hi[i]):
                    face = center.copy()
                    face[i] = side
                    pts.append((face, zero))
        return FiniteOperator(PairingSpace(d, d), pts)

    def to_dict(self) -> dict:
        return {"kind": "normal_cone", "vertices": self.vertices.tolist()}


def _unit(d: int, i: int) -> np.ndarray:
    e = np.zeros(d)
    e[i] = 1.0
    return e


class SkewLinearOracle(AnalyticOracle):
    """x -> A x for skew A, optionally restricted to a subspace domain."""

    kind = "skew"

    def __init__(self, matrix, domain_basis=None):
        A = np.asarray(matrix, dtype=np.float64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InputError("skew matrix must be square")
        if float(np.abs(A + A.T).max(initial=0.0)) > 1e-12:
            raise InputError("matrix is not skew-symmetric (||A + A^T||_max > 1e-12)")
        self.matrix = A
        self.dim = A.shape[0]
        if domain_basis is None:
            self.basis = np.eye(self.dim)
        else:
            S = np.atleast_2d(np.asarray(domain_basis, dtype=np.float64))
            if S.shape[1] != self.dim:
                raise InputError("domain basis vectors must have the operator dimension")
            if float(np.abs(S @ S.T - np.eye(S.shape[0])).max()) > 1e-8:
                raise InputError("domain basis must be orthonormal")
            self.basis = S

    def order(self) -> int | float:
        S = self.basis
        cross = S @ self.matrix @ S.T  # <s_i, A s_j>
        if _max_singular(cross) <= RANK_TOL:
            return math.inf
        sym = S @ (self.matrix + self.matrix.T) @ S.T
        if _max_singular(sym) <= RANK_TOL:
            return 2
        return 1

    def sample(self, spec: SampleSpec) -> FiniteOperator:
        grid = spec.grid()
        k = self.basis.shape[0]
        pts = []
        for coeffs in itertools.product(grid, repeat=k):
            x = np.asarray(coeffs) @ self.basis
            pts.append((x, self.matrix @ x))
        return FiniteOperator(PairingSpace(self.dim, self.dim), pts)

    def to_dict(self) -> dict:
        obj: dict = {"kind": "skew", "matrix": self.matrix.tolist()}
        if self.basis.shape != (self.dim, self.dim) or not np.array_equal(
            self.basis, np.eye(self.dim)
        ):
            obj["domain_basis"] = self.basis.tolist()
        return obj


def _max_singular(M: np.ndarray) -> float:
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False).max(initial=0.0))


# -- module-level operation surface ----------------------------------------------


def oracle_phi(o: AnalyticOracle, n, q) -> ExtReal:
    return o.phi(n, q)


def oracle_chi(o: AnalyticOracle, n, q) -> ExtReal:
    return o.chi(n, q)


def oracle_order(o: AnalyticOracle) -> int | float:
    return o.order()


def sample_graph(o: AnalyticOracle, spec: SampleSpec | None = None) -> FiniteOperator:
    return o.sample(spec if spec is not None else SampleSpec())


def oracle_from_dict(obj: dict) -> AnalyticOracle:
    try:
        kind = obj["kind"]
    except (KeyError, TypeError) as exc:
        raise InputError("oracle descriptor needs a 'kind' field") from exc
    if kind == "identity":
        return IdentityOracle(int(obj.get("dim", 1)))
    if kind == "rotation":
        if "theta" not in obj:
            raise InputError("rotation oracle needs 'theta'")
        return RotationOracle(parse_angle(obj["theta"]))
    if kind == "normal_cone":
        if "vertices" not in obj:
            raise InputError("normal cone oracle needs 'vertices'")
        verts = obj["vertices"]
        verts = [[v] if isinstance(v, (int, float)) else v for v in verts]
        return NormalConeOracle(verts)
    if kind == "skew":
        if "matrix" not in obj:
            raise InputError("skew oracle needs 'matrix'")
        return SkewLinearOracle(obj["matrix"], obj.get("domain_basis"))
    raise UnsupportedOracleError(f"unknown oracle kind {kind!r}")
