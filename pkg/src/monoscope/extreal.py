"""Totally ordered extended reals with saturating arithmetic.

Finite values and the two infinities are legal; NaN is rejected at
construction.  Addition and subtraction saturate (finite + inf = inf) except
for the single undefined form (+inf) + (-inf), which raises
:class:`~monoscope.errors.UndefinedSumError` instead of silently adopting any
convention: inside this library that combination always indicates a logic bug.

Reductions over empty collections return the usual lattice sentinels:
``sup {} = -inf`` and ``inf {} = +inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import InputError, UndefinedSumError

Real = Union[int, float, "ExtReal"]


@dataclass(frozen=True)
class ExtReal:
    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v):
            raise InputError("ExtReal cannot hold NaN")
        object.__setattr__(self, "value", v)

    # -- classification ----------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def is_pos_inf(self) -> bool:
        return self.value == math.inf

    @property
    def is_neg_inf(self) -> bool:
        return self.value == -math.inf

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Real) -> "ExtReal":
        a, b = self.value, _coerce(other)
        if math.isinf(a) and math.isinf(b) and a != b:
            raise UndefinedSumError("(+inf) + (-inf) is undefined")
        if math.isinf(a):
            return ExtReal(a)
        if math.isinf(b):
            return ExtReal(b)
        return ExtReal(a + b)

    __radd__ = __add__

    def __neg__(self) -> "ExtReal":
        return ExtReal(-self.value)

    def __sub__(self, other: Real) -> "ExtReal":
        return self + ExtReal(-_coerce(other))

    def __rsub__(self, other: Real) -> "ExtReal":
        return ExtReal(_coerce(other)) + (-self)

    # -- order ---------------------------------------------------------------
    def __lt__(self, other: Real) -> bool:
        return self.value < _coerce(other)

    def __le__(self, other: Real) -> bool:
        return self.value <= _coerce(other)

    def __gt__(self, other: Real) -> bool:
        return self.value > _coerce(other)

    def __ge__(self, other: Real) -> bool:
        return self.value >= _coerce(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float, ExtReal)):
            return self.value == _coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"ExtReal({format_real(self.value)})"


POS_INF = ExtReal(math.inf)
NEG_INF = ExtReal(-math.inf)


def _coerce(x: Real) -> float:
    if isinstance(x, ExtReal):
        return x.value
    v = float(x)
    if math.isnan(v):
        raise InputError("NaN is not an extended real")
    return v


def sup_over(values: Iterable[Real]) -> ExtReal:
    """Supremum; -inf on an empty collection."""
    best = -math.inf
    for v in values:
        fv = _coerce(v)
        if fv > best:
            best = fv
    return ExtReal(best)


def inf_over(values: Iterable[Real]) -> ExtReal:
    """Infimum; +inf on an empty collection."""
    best = math.inf
    for v in values:
        fv = _coerce(v)
        if fv < best:
            best = fv
    return ExtReal(best)


def format_real(v: float, digits: int = 12) -> str:
    """Render with fixed significant digits and bare inf literals."""
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return f"{v:.{digits}g}"
