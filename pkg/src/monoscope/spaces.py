"""Finite-dimensional dual systems.

A dual system here is (R^d1, R^d2, <.,.>) with <x, y> = x^T B y for a fixed
real d1 x d2 matrix B (identity by default).  The product system on
Z = R^d1 x R^d2 pairs z = (x, y) with w = (u, v) through
z . w = <x, v> + <u, y>, realised by the block matrix [[0, B], [B^T, 0]],
so that z . z = 2 c(z) with c(x, y) = <x, y>.

Gram rows for a fixed left argument are always computed through
:meth:`PairingSpace.pair_many_y`, and for a fixed right argument through
:meth:`PairingSpace.pair_many_x`; callers that need bit-identical values for
bit-identical inputs (the chain DP does) must stick to those two routes.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError


def _as_vector(v, dim: int, label: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise InputError(f"{label} must be a vector of dimension {dim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{label} must have finite entries")
    return arr


class PairingSpace:
    """Dimensions plus the bilinear coupling matrix; immutable."""

    def __init__(self, d1: int, d2: int, pairing: np.ndarray | None = None):
        if d1 < 1 or d2 < 1:
            raise InputError("dimensions must be positive")
        self.d1 = int(d1)
        self.d2 = int(d2)
        if pairing is None:
            if d1 != d2:
                raise InputError("default identity pairing requires d1 == d2")
            B = np.eye(d1)
        else:
            B = np.asarray(pairing, dtype=np.float64)
            if B.shape != (d1, d2):
                raise InputError(f"pairing matrix must be {d1}x{d2}, got {B.shape}")
            if not np.all(np.isfinite(B)):
                raise InputError("pairing matrix must be finite")
        B = B.copy()
        B.setflags(write=False)
        self.pairing = B

    # -- scalar and batched couplings -----------------------------------------
    def pair(self, x, y) -> float:
        """<x, y> = x^T B y."""
        xv = _as_vector(x, self.d1, "x")
        yv = _as_vector(y, self.d2, "y")
        return float(xv @ (self.pairing @ yv))

    def pair_many_y(self, x, ys: np.ndarray) -> np.ndarray:
        """Vector of <x, ys[j]> over the rows of ys."""
        xv = _as_vector(x, self.d1, "x")
        return ys @ (self.pairing.T @ xv)

    def pair_many_x(self, y, xs: np.ndarray) -> np.ndarray:
        """Vector of <xs[k], y> over the rows of xs."""
        yv = _as_vector(y, self.d2, "y")
        return xs @ (self.pairing @ yv)

    def coupling_z(self, z: np.ndarray) -> float:
        """c(z) = <x, y> for z = (x, y) flattened into R^(d1+d2)."""
        z = np.asarray(z, dtype=np.float64)
        if z.shape != (self.d1 + self.d2,):
            raise InputError(f"z must have dimension {self.d1 + self.d2}")
        return self.pair(z[: self.d1], z[self.d1 :])

    # -- derived systems -------------------------------------------------------
    @property
    def is_identity(self) -> bool:
        return self.d1 == self.d2 and np.array_equal(self.pairing, np.eye(self.d1))

    def transpose(self) -> "PairingSpace":
        """The dual system of the inverse operator: (R^d2, R^d1, B^T)."""
        return PairingSpace(self.d2, self.d1, self.pairing.T)

    def product(self) -> "PairingSpace":
        """The self-paired product system on Z = R^d1 x R^d2."""
        d = self.d1 + self.d2
        Bz = np.zeros((d, d))
        Bz[: self.d1, self.d1 :] = self.pairing
        Bz[self.d1 :, : self.d1] = self.pairing.T
        return PairingSpace(d, d, Bz)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PairingSpace)
            and self.d1 == other.d1
            and self.d2 == other.d2
            and np.array_equal(self.pairing, other.pairing)
        )

    def __repr__(self) -> str:
        tag = "identity" if self.is_identity else "custom"
        return f"PairingSpace(d1={self.d1}, d2={self.d2}, pairing={tag})"


def coupling(space: PairingSpace, x, y) -> float:
    """The coupling c(x, y) = <x, y> of the dual system."""
    return space.pair(x, y)
