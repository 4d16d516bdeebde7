from __future__ import annotations

import math
from fractions import Fraction as F

import mpmath
import pytest

from qloggamma.loggamma import (
    LogGammaRequest,
    SeriesDivergent,
    bracket_split_residual,
    classical_series_rhs,
    pointwise_split_residual,
    pointwise_split_tolerance,
    log_expansion_check,
    log_gamma,
    log_tail_bound,
    series_rhs,
    series_rhs_euler,
    stirling,
    stirling_error,
    thm1_residual,
)
from qloggamma.padic import PadicContext
from qloggamma.qcalc import DomainError, QWeightParams


def eta_oracle(x: float) -> float:
    """q = 1 value: Abel sum of (-1)^k (x+k)(log(x+k) - 1), via the Hurwitz eta function."""
    with mpmath.workdps(30):
        def eta(s):
            return 2 ** (-s) * (mpmath.zeta(s, x / 2) - mpmath.zeta(s, (x + 1) / 2))

        # the sum equals -d/ds eta(s, x)|_{s=-1} - eta(-1, x), and the integral doubles it
        val = -mpmath.diff(eta, -1) - eta(-1)
        return float(2 * val)


@pytest.mark.parametrize("x", [10.0, 20.0])
def test_q1_integral_against_hurwitz_oracle(x):
    got = log_gamma(x, QWeightParams(F(1)), backend="real", method="euler").value
    assert abs(got - eta_oracle(x)) < 1e-9


@pytest.mark.parametrize("method", ["limit-split", "euler", "cesaro"])
def test_thm1_real(method):
    r = thm1_residual(5.0, QWeightParams(F(4, 5), 2, 2), "real", method=method)
    assert abs(r.value) < 1e-8


def test_thm1_padic():
    params = QWeightParams(F(6), 1, 1, PadicContext(5, 12))
    r = thm1_residual(2, params, "padic", level=4)
    assert r.value.order >= 2


def test_padic_level_increments_grow():
    params = QWeightParams(F(26), 1, 1, PadicContext(5, 12))
    ev = log_gamma(F(1, 5), params, backend="padic", level=4)
    inc = ev.transcript["increment_valuations"]
    assert inc == sorted(inc)


def test_padic_domain_errors():
    params = QWeightParams(F(6), 1, 1, PadicContext(5, 12))
    with pytest.raises(DomainError):
        log_gamma(0, params, backend="padic")
    with pytest.raises(DomainError):
        log_gamma(F(1, 5), params, backend="padic")  # needs q in 1 + 25Z_5
    with pytest.raises(DomainError):
        log_gamma(F(1, 25), params, backend="padic")


def test_modes_ignore_unused_weights():
    q = F(1, 2)
    a = log_gamma(3.0, QWeightParams(q, 3, 2), mode="kim").value
    b = log_gamma(3.0, QWeightParams(q, 1, 1), mode="kim").value
    assert a == b
    c = log_gamma(3.0, QWeightParams(q, 2, 5), mode="weighted-alpha").value
    d = log_gamma(3.0, QWeightParams(q, 2, 1), mode="weighted-alpha").value
    assert c == d
    with pytest.raises(ValueError):
        log_gamma(3.0, QWeightParams(q), mode="gamma")


def test_request_evaluate():
    req = LogGammaRequest(4.0, QWeightParams(F(1, 2)))
    assert req.evaluate().value == log_gamma(4.0, QWeightParams(F(1, 2))).value


@pytest.mark.parametrize("x,q", [(2.0, "3/10"), (3.0, "1/2"), (4.0, "4/5")])
def test_derived_series_matches_integral(x, q):
    params = QWeightParams(F(q), 1, 1)
    lhs = log_gamma(x, params).value
    assert abs(series_rhs(x, params).value - lhs) < 1e-8 * abs(lhs)
    assert abs(series_rhs_euler(x, params).value - lhs) < 1e-8 * abs(lhs)


def test_paper_variant_is_off_at_small_x():
    params = QWeightParams(F(3, 10), 1, 1)
    lhs = log_gamma(2.0, params).value
    assert abs(series_rhs(2.0, params, variant="paper").value - lhs) > 1e-6 * abs(lhs)


def test_derived_series_padic():
    params = QWeightParams(F(26), 1, 2, PadicContext(5, 12))
    lhs = log_gamma(F(2, 5), params, backend="padic", level=4).value
    rhs = series_rhs(F(2, 5), params, backend="padic").value
    assert (lhs - rhs).order >= 2


def test_series_predicate():
    with pytest.raises(SeriesDivergent):
        series_rhs(0.5, QWeightParams(F(9, 10)))
    with pytest.raises(SeriesDivergent):
        series_rhs(F(2), QWeightParams(F(26), ctx=PadicContext(5, 8)), backend="padic")
    with pytest.raises(DomainError):
        series_rhs_euler(3.0, QWeightParams(F(1, 2), 1, 2))


@pytest.mark.parametrize("kind", ["genocchi", "euler"])
@pytest.mark.parametrize("x", [10.0, 20.0])
def test_classical_series_against_oracle(kind, x):
    assert abs(classical_series_rhs(x, kind=kind) - eta_oracle(x)) < 1e-8


def test_stirling_matches_loggamma():
    for x in (10, 20, 40):
        ref = math.lgamma(x) - 0.5 * math.log(2 * math.pi)
        assert abs(stirling(x) - ref) < 1e-9
    assert stirling_error(10, 6) < stirling_error(10, 2)


def test_log_expansion():
    assert abs(log_expansion_check(0.5)) <= log_tail_bound(0.5, 40) + 1e-15
    with pytest.raises(DomainError):
        log_expansion_check(1.0)


def test_pointwise_split():
    params = QWeightParams(F(1, 2), 2, 1)
    for xi in range(10):
        assert abs(pointwise_split_residual(3.0, xi, params)) <= pointwise_split_tolerance(3.0, xi, params)


def test_bracket_split_padic_rational_x():
    ctx = PadicContext(5, 10)
    r = bracket_split_residual(ctx.element(F(2, 5)), 3, ctx.element(26), 2)
    assert r.order >= 6
