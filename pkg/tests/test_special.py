from __future__ import annotations

from fractions import Fraction as F

import pytest

from qloggamma.padic import PadicContext
from qloggamma.qcalc import DomainError, QWeightParams
from qloggamma.special import (
    GenocchiTable,
    QEulerTable,
    classical,
    prop1_residual,
    qeuler,
    qgenocchi,
    qgenocchi_limit_q1,
    qgenocchi_oracle,
    witt_moment,
)


def test_g0_is_zero():
    assert qgenocchi(0, QWeightParams(F(1, 2), 2, 3)) == 0
    t = GenocchiTable.build(5, QWeightParams(F(1, 3)))
    assert len(t.values) == 6 and t.values[0] == 0


def test_g1_closed_form():
    # g_1 = integral q^{-beta xi} dmu_{-q^beta} = [2]_{q^beta}/2
    q = F(2, 5)
    for beta in (1, 2, 3):
        assert qgenocchi(1, QWeightParams(q, 1, beta)) == (1 + q**beta) / 2


def test_witt_rejects_q1():
    with pytest.raises(DomainError):
        witt_moment(2, QWeightParams(F(1)))


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_witt_against_riemann_sums(alpha, beta):
    ctx = PadicContext(3, 12)
    params = QWeightParams(F(4), alpha, beta, ctx)
    for n in range(5):
        closed = ctx.element(witt_moment(n, params))
        for level, s in qgenocchi_oracle(n, params, range(2, 6)).items():
            assert (closed - s).order >= level - 2


def test_polynomial_shift_is_consistent():
    # g_{n}(x) at x = 1 agrees with the Riemann sums of the shifted integrand
    ctx = PadicContext(5, 10)
    params = QWeightParams(F(6), 1, 1, ctx)
    closed = ctx.element(witt_moment(3, params, x=1))
    s = qgenocchi_oracle(3, params, [4], x=1)[4]
    assert (closed - s).order >= 2


@pytest.mark.parametrize("q", [F(1, 2), F(2, 3), F(3, 5)])
@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_prop1_exact(q, alpha):
    assert all(prop1_residual(n, q, alpha) == 0 for n in range(11))


def test_prop1_fails_for_beta_two():
    assert any(prop1_residual(n, F(1, 2), 1, beta=2) != 0 for n in range(4))


def test_qeuler_q1_gives_euler_numbers():
    assert [qeuler(n, F(1)) for n in range(6)] == [classical("euler", n) for n in range(6)]


def test_qeuler_table():
    t = QEulerTable.build(4, F(1, 2), 2)
    assert t.values[3] == qeuler(3, F(1, 2), 2)


def test_classical_values():
    assert classical("genocchi", 2) == -1
    assert classical("genocchi", 4) == 1
    assert classical("genocchi", 6) == -3
    assert classical("euler", 1) == F(-1, 2)
    assert classical("bernoulli", 2) == F(1, 6)


@pytest.mark.parametrize("alpha", [1, 2, 3])
@pytest.mark.parametrize("beta", [1, 2, 3])
def test_limit_q1_independent_of_weights(alpha, beta):
    assert [qgenocchi_limit_q1(n, alpha, beta) for n in range(9)] == [classical("genocchi", n) for n in range(9)]


def test_limit_approached_numerically():
    q = F(999999, 1000000)
    assert abs(float(qgenocchi(4, QWeightParams(q, 2, 3))) - 1) < 1e-4
