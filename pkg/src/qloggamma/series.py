"""Truncated power series with exact rational coefficients.

Coefficients live in ``fractions.Fraction``; a series of order ``N`` keeps
the coefficients of ``t**0 .. t**N`` and never reads beyond them.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence


def format_rational(x) -> str:
    """Render a rational as ``a/b`` (integers get denominator 1)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class TruncatedPowerSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedPowerSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedPowerSeries":
        return cls([0, 1], order)

    @classmethod
    def exp(cls, order: int, scale=1) -> "TruncatedPowerSeries":
        """e**(scale*t)."""
        scale = Fraction(scale)
        return cls([scale**n / factorial(n) for n in range(order + 1)], order)

    @classmethod
    def one_plus_t_pow(cls, k: int, order: int) -> "TruncatedPowerSeries":
        """(1 + t)**k for an integer k >= 0."""
        if k < 0:
            raise ValueError("negative exponent; use division")
        return cls([comb(k, n) for n in range(order + 1)], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def _lift(self, other) -> "TruncatedPowerSeries":
        if isinstance(other, TruncatedPowerSeries):
            return other
        return TruncatedPowerSeries.constant(other, self.order)

    def __add__(self, other):
        b = self._lift(other)
        n = min(self.order, b.order)
        return TruncatedPowerSeries([self[i] + b[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            c = Fraction(other)
            return TruncatedPowerSeries([c * a for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        return TruncatedPowerSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return TruncatedPowerSeries.constant(1, self.order) / self ** (-k)
        out = TruncatedPowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            c = Fraction(other)
            return TruncatedPowerSeries([a / c for a in self.coeffs], self.order)
        num, den = self, other
        n = min(num.order, den.order)
        shift = den.valuation()
        if shift is None or shift > n:
            raise ZeroDivisionError("division by a series that vanishes to the working order")
        if any(num[i] for i in range(shift)):
            raise ZeroDivisionError("leading zero of the divisor does not cancel")
        a = num.coeffs[shift : n + 1]
        b = den.coeffs[shift : n + 1]
        out: list[Fraction] = []
        for k in range(n - shift + 1):
            acc = a[k] - sum((out[i] * b[k - i] for i in range(k)), Fraction(0))
            out.append(acc / b[0])
        return TruncatedPowerSeries(out, n - shift)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPowerSeries):
            other = self._lift(other)
        n = min(self.order, other.order)
        return all(self[i] == other[i] for i in range(n + 1))

    __hash__ = None  # type: ignore[assignment]

    def evaluate_at_zero(self) -> Fraction:
        return self.coeffs[0]

    def __repr__(self) -> str:
        return f"TruncatedPowerSeries([{', '.join(format_rational(c) for c in self.coeffs)}])"


SERIES_KINDS = ("genocchi", "euler", "bernoulli")


def series_coeffs(kind: str, n_max: int) -> list[Fraction]:
    """Exponential-generating-function coefficients c_0..c_{n_max}.

    genocchi: 2t/(e^t+1), euler: 2/(e^t+1), bernoulli: t/(e^t-1).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    order = n_max + 1
    e = TruncatedPowerSeries.exp(order)
    t = TruncatedPowerSeries.variable(order)
    if kind == "genocchi":
        f = 2 * t / (e + 1)
    elif kind == "euler":
        f = TruncatedPowerSeries.constant(2, order) / (e + 1)
    elif kind == "bernoulli":
        f = t / (e - 1)
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    return [f[n] * factorial(n) for n in range(n_max + 1)]


def poly_eval(coeffs: Sequence, x):
    """Horner evaluation of sum(c_k x**k) in whatever carrier ``x`` lives in."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
