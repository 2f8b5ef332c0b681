"""Finite graph operators and their chain-weight matrices.

A FiniteOperator is a finite multiset of graph pairs (x_i, y_i); exact
duplicates are dropped at construction (they cannot change any chain value).
Instances are immutable once built; the Gram matrix, the chain weights, and
the tropical closure are computed lazily and shared read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InputError
from .spaces import PairingSpace


@dataclass(frozen=True)
class ChainWeights:
    """Step matrices of the chain recursions.

    A[j, k] = <x_j - x_k, y_k>: max-plus step weight from chain entry j to k.
    W[i, j] = <x_i - x_j, y_i>: cycle weight; closed walks in W are exactly
    the cyclic sums of the n-monotonicity inequalities.  W = -A^T entrywise.
    """

    A: np.ndarray
    W: np.ndarray


class FiniteOperator:
    def __init__(self, space: PairingSpace, points) -> None:
        self.space = space
        xs, ys, seen = [], [], set()
        for p in points:
            if len(p) != 2:
                raise InputError("each graph point must be a pair (x, y)")
            x = np.atleast_1d(np.asarray(p[0], dtype=np.float64))
            y = np.atleast_1d(np.asarray(p[1], dtype=np.float64))
            if x.shape != (space.d1,) or y.shape != (space.d2,):
                raise InputError(
                    f"graph point dims {x.shape}/{y.shape} do not match space ({space.d1}, {space.d2})"
                )
            if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
                raise InputError("graph points must be finite")
            key = (x.tobytes(), y.tobytes())
            if key in seen:
                continue
            seen.add(key)
            xs.append(x)
            ys.append(y)
        self.xs = np.array(xs, dtype=np.float64).reshape(len(xs), space.d1)
        self.ys = np.array(ys, dtype=np.float64).reshape(len(ys), space.d2)
        self.xs.setflags(write=False)
        self.ys.setflags(write=False)
        self._gram = None
        self._weights = None
        self._closure = None

    # -- basic views -----------------------------------------------------------
    @property
    def m(self) -> int:
        return self.xs.shape[0]

    def point(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= i < self.m:
            raise InputError(f"point index {i} out of range for {self.m} points")
        return self.xs[i], self.ys[i]

    def domain(self) -> np.ndarray:
        """Distinct x's, in order of first appearance."""
        return _unique_rows(self.xs)

    def range_(self) -> np.ndarray:
        """Distinct y's, in order of first appearance."""
        return _unique_rows(self.ys)

    def contains(self, x, y) -> bool:
        """Exact (bitwise) graph membership."""
        xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
        yv = np.atleast_1d(np.asarray(y, dtype=np.float64))
        return any(
            self.xs[i].tobytes() == xv.tobytes() and self.ys[i].tobytes() == yv.tobytes()
            for i in range(self.m)
        )

    def inverse(self) -> "FiniteOperator":
        """Swap every pair; the pairing matrix transposes along."""
        return FiniteOperator(self.space.transpose(), list(zip(self.ys, self.xs)))

    # -- cached derived data -----------------------------------------------------
    @property
    def gram(self) -> np.ndarray:
        """G[i, j] = <x_i, y_j>, rows built with the shared pairing route."""
        if self._gram is None:
            G = np.empty((self.m, self.m))
            for i in range(self.m):
                G[i, :] = self.space.pair_many_y(self.xs[i], self.ys)
            G.setflags(write=False)
            self._gram = G
        return self._gram

    @property
    def weights(self) -> ChainWeights:
        if self._weights is None:
            G = self.gram
            d = np.diagonal(G)
            A = G - d[None, :]
            W = d[:, None] - G.T
            A.setflags(write=False)
            W.setflags(write=False)
            self._weights = ChainWeights(A=A, W=W)
        return self._weights

    @property
    def closure(self) -> tuple[np.ndarray, np.ndarray, float]:
        """(C, via, max_diag): max-plus transitive closure of A.

        max_diag > 0 means a strictly positive chain cycle exists, i.e. the
        operator is not cyclically monotone; in that case C is only used for
        that verdict, never for values.
        """
        if self._closure is None:
            if self.m == 0:
                C = np.zeros((0, 0))
                via = np.zeros((0, 0), dtype=np.int64)
                self._closure = (C, via, 0.0)
            else:
                C, via = kernels.maxplus_closure(self.weights.A)
                self._closure = (C, via, float(np.max(np.diagonal(C))))
        return self._closure

    def __repr__(self) -> str:
        return f"FiniteOperator(m={self.m}, space={self.space!r})"


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    seen: set[bytes] = set()
    keep = []
    for i in range(rows.shape[0]):
        key = rows[i].tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return rows[keep]


def chain_weights(T: FiniteOperator) -> ChainWeights:
    """Both chain-step matrices of T; diagonals are exactly zero."""
    return T.weights


# -- JSON interchange ---------------------------------------------------------
#
# {"d1": int, "d2": int, "pairing": [[...]] (optional), "points": [{"x": [...], "y": [...]}]}


def operator_from_dict(obj: dict) -> FiniteOperator:
    try:
        d1 = int(obj["d1"])
        d2 = int(obj["d2"])
        raw_points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed operator object: {exc}") from exc
    pairing = obj.get("pairing")
    space = PairingSpace(d1, d2, None if pairing is None else np.asarray(pairing, dtype=float))
    points = []
    for entry in raw_points:
        try:
            points.append((entry["x"], entry["y"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph point {entry!r}") from exc
    return FiniteOperator(space, points)


def operator_to_dict(T: FiniteOperator) -> dict:
    obj: dict = {"d1": T.space.d1, "d2": T.space.d2}
    if not T.space.is_identity:
        obj["pairing"] = T.space.pairing.tolist()
    obj["points"] = [
        {"x": T.xs[i].tolist(), "y": T.ys[i].tolist()} for i in range(T.m)
    ]
    return obj


def load_operator(path: str) -> FiniteOperator:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return operator_from_dict(obj)


def save_operator(T: FiniteOperator, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(operator_to_dict(T), fh, indent=2)
        fh.write("\n")
