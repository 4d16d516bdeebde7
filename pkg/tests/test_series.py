from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qloggamma.series import TruncatedPowerSeries as T
from qloggamma.series import format_rational, poly_eval, series_coeffs


def test_known_tables():
    assert series_coeffs("genocchi", 8) == [0, 1, -1, 0, 1, 0, -3, 0, 17]
    assert series_coeffs("euler", 5) == [1, F(-1, 2), 0, F(1, 4), 0, F(-1, 2)]
    assert series_coeffs("bernoulli", 4) == [1, F(-1, 2), F(1, 6), 0, F(-1, 30)]


def test_unknown_kind():
    with pytest.raises(ValueError):
        series_coeffs("fibonacci", 3)


def test_division_cancels_leading_zeros():
    t = T.variable(6)
    e = T.exp(6)
    ratio = t / (e - 1)  # t/(e^t - 1), the Bernoulli generating function
    assert ratio.evaluate_at_zero() == 1
    assert ratio[1] == F(-1, 2)


def test_division_by_pure_zero_raises():
    with pytest.raises(ZeroDivisionError):
        T.constant(1, 4) / T.constant(0, 4)


def test_one_plus_t_pow():
    s = T.one_plus_t_pow(3, 5)
    assert [s[i] for i in range(5)] == [1, 3, 3, 1, 0]


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_mul_then_divide_roundtrip(a, b):
    if b[0] == 0:
        b = [1] + b[1:]
    x, y = T(a, 6), T(b, 6)
    assert (x * y) / y == x


def test_format_rational():
    assert format_rational(F(3)) == "3/1"
    assert format_rational(F(-2, 6)) == "-1/3"


def test_poly_eval_horner():
    assert poly_eval([1, 2, 3], F(2)) == 17
    assert poly_eval([], 5) == 0
