"""Weighted q-Genocchi numbers and modified q-Euler numbers.

The Witt moment ``g_{m+1}(x)/(m+1) = integral q^{-beta xi} [x+xi]_{q^alpha}^m
dmu_{-q^beta}(xi)`` is evaluated by expanding the bracket power binomially,

    [x+xi]^m = (1 - q^{alpha x} q^{alpha xi})^m / (1 - q^alpha)^m,

and integrating each exponential against the measure with ``exp_moment``:

    g_{m+1}(x)/(m+1) = (1-q^alpha)^{-m} sum_l C(m,l) (-1)^l q^{alpha l x} [2]_{q^beta} / (1 + q^{alpha l}).

The modified q-Euler numbers use an independent route: the n = 1 shift
identity applied to f(t) = [t]_{q^alpha}^n together with
[t+1] = 1 + q^alpha [t] gives the recurrence

    (1 + q^{alpha n}) xi_n = [2]_q * [n == 0] - sum_{j<n} C(n,j) q^{alpha j} xi_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from math import comb
from typing import Any, Iterator

from .padic import PadicNumber
from .qcalc import DomainError, Integrand, QWeightParams, fermionic_riemann_sums, power
from .series import TruncatedPowerSeries, series_coeffs


def witt_moment(m: int, params: QWeightParams, x=0):
    """g_{m+1,q}^{(alpha,beta)}(x) / (m+1) in q's carrier, closed form."""
    if m < 0:
        raise ValueError("moment index must be >= 0")
    q, alpha, beta = params.q, params.alpha, params.beta
    if q == 1:
        raise DomainError("q = 1: use qgenocchi_limit_q1")
    qa = q**alpha
    qb = q**beta
    lead = power(qa, x)
    total = 0
    for l in range(m + 1):
        denom = 1 + qa**l
        if denom == 0:
            raise ZeroDivisionError(f"pole 1 + q^(alpha*{l}) = 0")
        term = comb(m, l) * lead**l / denom
        total = total + (term if l % 2 == 0 else -term)
    return (1 + qb) * total / (1 - qa) ** m


def qgenocchi(n: int, params: QWeightParams, x=0):
    """g_{n,q}^{(alpha,beta)}(x); g_0 = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0 * params.q
    return n * witt_moment(n - 1, params, x)


def qgenocchi_oracle(n: int, params: QWeightParams, levels, x=0) -> dict[int, PadicNumber]:
    """Riemann sums of integral q^{-beta xi}[x+xi]^n dmu_{-q^beta}, one per level.

    These approximate g_{n+1}(x)/(n+1).
    """
    f = Integrand("poly", tuple([0] * n + [1]), shift=x, twisted=True)
    return fermionic_riemann_sums(f, params, levels)


def qeuler_iter(q, alpha: int = 1) -> Iterator:
    """xi~_{0,q}^{(alpha)}, xi~_1, ... by the shift-identity recurrence; q = 1 allowed."""
    qa = q**alpha
    two = 1 + q
    out: list = []
    n = 0
    while True:
        acc = two if n == 0 else 0 * q
        for j in range(n):
            acc = acc - comb(n, j) * qa**j * out[j]
        out.append(acc / (1 + qa**n))
        yield out[-1]
        n += 1


def qeuler_table(n_max: int, q, alpha: int = 1) -> list:
    """[xi~_0, ..., xi~_{n_max}]."""
    return list(islice(qeuler_iter(q, alpha), n_max + 1))


def qeuler(n: int, q, alpha: int = 1):
    """Modified q-Euler number integral q^{-t}[t]_{q^alpha}^n dmu_{-q}(t)."""
    return qeuler_table(n, q, alpha)[n]


def classical(kind: str, n: int) -> Fraction:
    """G_n, E_n (from 2/(e^t+1)) or B_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return series_coeffs(kind, n)[n]


def prop1_residual(n: int, q, alpha: int = 1, beta: int = 1) -> Fraction:
    """xi~_{n,q}^{(alpha)} - g_{n+1,q}^{(alpha,beta)}/(n+1); zero when beta = 1."""
    q = Fraction(q)
    return qeuler(n, q, alpha) - qgenocchi(n + 1, QWeightParams(q, alpha, beta)) / (n + 1)


def qgenocchi_limit_q1(n: int, alpha: int = 1, beta: int = 1) -> Fraction:
    """lim_{q->1} g_{n,q}^{(alpha,beta)} through exact series in t = q - 1."""
    if n == 0:
        return Fraction(0)
    m = n - 1
    order = m + 2
    while True:
        try:
            num = TruncatedPowerSeries.constant(0, order)
            two_b = 1 + TruncatedPowerSeries.one_plus_t_pow(beta, order)
            for l in range(m + 1):
                term = comb(m, l) * two_b / (1 + TruncatedPowerSeries.one_plus_t_pow(alpha * l, order))
                num = num + (term if l % 2 == 0 else -term)
            den = (1 - TruncatedPowerSeries.one_plus_t_pow(alpha, order)) ** m
            return n * (num / den).evaluate_at_zero()
        except ZeroDivisionError:
            if order > 4 * (m + 2):
                raise
            order *= 2


@dataclass(frozen=True)
class GenocchiTable:
    params: QWeightParams
    x: Any = 0
    values: tuple = field(default_factory=tuple)

    @classmethod
    def build(cls, n_max: int, params: QWeightParams, x=0) -> "GenocchiTable":
        return cls(params, x, tuple(qgenocchi(n, params, x) for n in range(n_max + 1)))


@dataclass(frozen=True)
class QEulerTable:
    q: Any
    alpha: int = 1
    values: tuple = field(default_factory=tuple)

    @classmethod
    def build(cls, n_max: int, q, alpha: int = 1) -> "QEulerTable":
        return cls(q, alpha, tuple(qeuler_table(n_max, q, alpha)))
