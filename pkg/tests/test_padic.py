from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qloggamma.padic import (
    PadicContext,
    iwasawa_log,
    padic_exp,
    parse_padic,
    q_pow,
    teichmuller,
    valuation,
)

CTX = PadicContext(5, 10)

nonzero_ints = st.integers(-10**6, 10**6).filter(lambda n: n != 0)
rationals = st.builds(Fraction, nonzero_ints, st.integers(1, 10**4))


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_context_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        PadicContext(p)


def test_valuation_examples():
    assert valuation(Fraction(50), 5) == 2
    assert valuation(Fraction(1, 25), 5) == -2
    assert valuation(Fraction(-7, 3), 5) == 0
    with pytest.raises(ValueError, match="infinite"):
        valuation(Fraction(0), 5)


def test_zero_carries_precision():
    z = CTX.element(25) - CTX.element(25)
    assert z.is_zero()
    with pytest.raises(ValueError):
        z.valuation()
    assert CTX.zero(3).absprec == 3


def test_teichmuller_is_root_of_unity():
    w = teichmuller(CTX.element(2))
    assert w**4 == CTX.one()
    assert (w - 2).order >= 1
    ctx = PadicContext(5, 2)
    assert teichmuller(ctx.element(2)).lift() % 25 == 7


def test_iwasawa_log_examples():
    ctx = PadicContext(5, 2)
    assert iwasawa_log(ctx.element(6)).lift() % 25 == 5
    assert iwasawa_log(CTX.element(5)).is_zero()
    assert iwasawa_log(teichmuller(CTX.element(2))).is_zero()
    with pytest.raises(ValueError):
        iwasawa_log(CTX.zero())


def test_exp_disc():
    with pytest.raises(ValueError, match="convergence"):
        padic_exp(CTX.element(1))
    assert padic_exp(CTX.zero()) == CTX.one()


def test_q_pow_rational_exponent():
    ctx = PadicContext(5, 4)
    q = ctx.element(26)
    r = q_pow(q, Fraction(1, 5))
    assert r**5 == q.reduce(r.absprec)
    with pytest.raises(ValueError, match="undefined"):
        q_pow(ctx.element(2), Fraction(1, 2))


def test_q_pow_integer_is_exact_power():
    q = CTX.element(7)
    assert q_pow(q, 3) == q * q * q
    assert q_pow(q, -2) == 1 / (q * q)


def test_parse_and_str():
    x = parse_padic("3/10", CTX)
    assert x.valuation() == -1
    assert CTX.element(x.lift()) == x
    assert x * 10 == CTX.element(3)
    assert str(CTX.element(5)).startswith("5^1 * (1 + 0*5")


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_ultrametric(a, b):
    x, y = CTX.element(a), CTX.element(b)
    s = x + y
    if not s.is_zero():
        assert s.valuation() >= min(x.valuation(), y.valuation())


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_element_is_ring_homomorphism(a, b):
    x, y = CTX.element(a), CTX.element(b)
    assert x + y == CTX.element(a + b)
    assert x * y == CTX.element(a * b)
    assert x - y == CTX.element(a - b)
    assert x / y == CTX.element(a / b)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5**8))
def test_exp_log_inverse(n):
    z = CTX.element(5 * n)
    assert iwasawa_log(padic_exp(z)) == z


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**6).filter(lambda n: n % 5), st.integers(1, 10**6).filter(lambda n: n % 5))
def test_log_is_homomorphism(a, b):
    x, y = CTX.element(a), CTX.element(b)
    assert iwasawa_log(x * y) == iwasawa_log(x) + iwasawa_log(y)
