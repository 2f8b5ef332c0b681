import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoscope import NEG_INF, POS_INF, ExtReal, InputError, UndefinedSumError, inf_over, sup_over
from monoscope.extreal import format_real

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def test_saturating_addition():
    assert POS_INF + 5.0 == math.inf
    assert NEG_INF + 5.0 == -math.inf
    assert ExtReal(2.0) + ExtReal(3.0) == 5.0
    assert POS_INF + POS_INF == math.inf
    assert NEG_INF + NEG_INF == -math.inf


def test_opposite_infinities_raise():
    with pytest.raises(UndefinedSumError):
        POS_INF + NEG_INF
    with pytest.raises(UndefinedSumError):
        NEG_INF - NEG_INF
    with pytest.raises(UndefinedSumError):
        5.0 - POS_INF + POS_INF  # (-inf) + (+inf) via __rsub__ then __add__


def test_subtraction_of_finite_from_infinite_saturates():
    assert POS_INF - 1e300 == math.inf
    assert NEG_INF - (-1e300) == -math.inf


def test_nan_rejected():
    with pytest.raises(InputError):
        ExtReal(math.nan)
    with pytest.raises(InputError):
        ExtReal(1.0) + math.nan


@given(finite, finite)
def test_addition_matches_floats_on_finite(a, b):
    assert (ExtReal(a) + ExtReal(b)).value == a + b


@given(st.lists(finite))
def test_sup_inf_match_builtin(vals):
    assert sup_over(vals).value == (max(vals) if vals else -math.inf)
    assert inf_over(vals).value == (min(vals) if vals else math.inf)


def test_empty_reductions_are_sentinels():
    assert sup_over([]) == NEG_INF
    assert inf_over([]) == POS_INF


def test_total_order_with_infinities():
    assert NEG_INF < ExtReal(0.0) < POS_INF
    assert POS_INF >= POS_INF
    assert ExtReal(1.5) == 1.5


def test_format_real():
    assert format_real(math.inf) == "inf"
    assert format_real(-math.inf) == "-inf"
    assert format_real(0.25) == "0.25"
    assert format_real(1 / 3) == "0.333333333333"
