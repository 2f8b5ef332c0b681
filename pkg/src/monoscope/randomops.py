"""Deterministic random instance generators (seeded numpy Generators)."""

from __future__ import annotations

import numpy as np

from .operators import FiniteOperator
from .spaces import PairingSpace


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_operator(
    rng: np.random.Generator,
    m: int,
    d1: int,
    d2: int | None = None,
    scale: float = 1.0,
    random_pairing: bool = False,
) -> FiniteOperator:
    """m uniform graph pairs in [-scale, scale]^d1 x [-scale, scale]^d2."""
    d2 = d1 if d2 is None else d2
    pairing = None
    if random_pairing:
        pairing = rng.uniform(-1.0, 1.0, size=(d1, d2))
    space = PairingSpace(d1, d2, pairing)
    xs = rng.uniform(-scale, scale, size=(m, d1))
    ys = rng.uniform(-scale, scale, size=(m, d2))
    return FiniteOperator(space, list(zip(xs, ys)))


def random_monotone_scalar(rng: np.random.Generator, size: int, scale: float = 1.0) -> FiniteOperator:
    """Sorted x paired with sorted y: a monotone subset of R x R."""
    xs = np.sort(rng.uniform(-scale, scale, size=size))
    ys = np.sort(rng.uniform(-scale, scale, size=size))
    return FiniteOperator(PairingSpace(1, 1), [((x,), (y,)) for x, y in zip(xs, ys)])


def random_cyclically_monotone(rng: np.random.Generator, size: int, dim: int = 1) -> FiniteOperator:
    """A cyclically monotone sample: sorted scalar graph or identity slice.

    dim == 1 draws a sorted scalar graph (monotone on the line, hence
    cyclically monotone); dim >= 2 samples the gradient of x -> ||x||^2 / 2.
    """
    if dim == 1:
        return random_monotone_scalar(rng, size)
    xs = rng.uniform(-1.0, 1.0, size=(size, dim))
    return FiniteOperator(PairingSpace(dim, dim), [(x, x.copy()) for x in xs])


def random_multivalued_monotone(rng: np.random.Generator, size: int) -> FiniteOperator:
    """Monotone scalar graph with repeated x's (a genuinely multivalued base)."""
    base = np.sort(rng.choice(np.linspace(-1.0, 1.0, 5), size=size))
    ys = np.sort(rng.uniform(-1.0, 1.0, size=size))
    return FiniteOperator(PairingSpace(1, 1), [((x,), (y,)) for x, y in zip(base, ys)])


def random_query(rng: np.random.Generator, space: PairingSpace, scale: float = 1.5):
    return (
        rng.uniform(-scale, scale, size=space.d1),
        rng.uniform(-scale, scale, size=space.d2),
    )
