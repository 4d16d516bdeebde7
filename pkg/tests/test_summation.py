from __future__ import annotations

import math

import pytest

from qloggamma.summation import MAX_TERMS_ENV, METHODS, max_terms, sum_alternating


@pytest.mark.parametrize("method", ["limit-split", "euler", "cesaro"])
def test_grandi(method):
    out = sum_alternating(lambda k: 1.0, method)
    assert abs(out.value - 0.5) < 1e-12
    assert out.method == method


def test_euler_alias():
    assert sum_alternating(lambda k: 1.0, "euler-transform").method == "euler"


@pytest.mark.parametrize("method", METHODS)
def test_convergent_log2(method):
    out = sum_alternating(lambda k: 1.0 / (k + 1), method, tol=1e-6, budget=10**6)
    assert abs(out.value - math.log(2)) < 1e-5


def test_abel_of_linear_growth():
    # sum (-1)^k (k+1) = 1/4 in the Abel sense
    out = sum_alternating(lambda k: k + 1.0, "euler")
    assert abs(out.value - 0.25) < 1e-10


def test_known_limit_split():
    out = sum_alternating(lambda k: 2.0 + 0.5**k, "limit-split", limit=2.0)
    assert out.converged
    assert abs(out.value - (1.0 + 1 / 1.5)) <= out.error_estimate


def test_finite_iterable_direct():
    out = sum_alternating([1.0, 2.0, 3.0], "direct")
    assert out.value == 2.0 and out.converged


def test_unknown_method():
    with pytest.raises(ValueError):
        sum_alternating(lambda k: 1.0, "borel")


def test_budget_env(monkeypatch):
    monkeypatch.setenv(MAX_TERMS_ENV, "50")
    assert max_terms() == 50
    out = sum_alternating(lambda k: 1.0 / math.sqrt(k + 1), "direct", tol=1e-12)
    assert not out.converged and out.terms_used <= 50
