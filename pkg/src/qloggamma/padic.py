"""Fixed-modulus p-adic arithmetic over Q_p.

A nonzero value is stored as ``p**v * u`` where ``u`` is a unit known modulo
``p**k`` (``k`` relative digits, capped at the context precision ``M``).
Zero carries an absolute precision bound instead: an exact zero has bound
``inf``, a zero produced by cancellation has the bound of its operands.

Equality between p-adic numbers means "equal to the known precision".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf

Rational = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ilog(n: int, p: int) -> int:
    """Largest e with p**e <= n (n >= 1)."""
    e = 0
    while n >= p:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class PadicContext:
    """An odd prime ``p`` and a working precision of ``prec`` p-adic digits."""

    p: int
    prec: int = 12

    def __post_init__(self) -> None:
        if self.p < 3 or not _is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.prec < 1:
            raise ValueError(f"precision must be >= 1, got {self.prec}")

    def __call__(self, value: Union[Rational, "PadicNumber"], relprec: int | None = None) -> "PadicNumber":
        return self.element(value, relprec)

    def element(self, value: Union[Rational, "PadicNumber", str], relprec: int | None = None) -> "PadicNumber":
        """Coerce an int, Fraction, ``a/b`` string or PadicNumber into this context."""
        if isinstance(value, PadicNumber):
            if value.ctx != self:
                raise ValueError("p-adic context mismatch")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, float):
            raise TypeError("floating-point values have no p-adic meaning")
        value = Fraction(value)
        if value == 0:
            return PadicNumber(self, None, 0, INF)
        num, den = value.numerator, value.denominator
        vn, vd = _vp_int(num, self.p), _vp_int(den, self.p)
        k = self.prec if relprec is None else min(relprec, self.prec)
        mod = self.p**k
        unit = (num // self.p**vn) * pow(den // self.p**vd, -1, mod) % mod
        return PadicNumber(self, vn - vd, unit, k)

    def zero(self, absprec: float = INF) -> "PadicNumber":
        return PadicNumber(self, None, 0, absprec)

    def one(self) -> "PadicNumber":
        return self.element(1)

    def from_scaled(self, m: int, s: int, absprec: float) -> "PadicNumber":
        """Build ``p**m * s`` where the integer ``s`` is known modulo ``p**(absprec - m)``."""
        if absprec == INF:
            return self.element(Fraction(s) * Fraction(self.p) ** m)
        width = absprec - m
        if width <= 0:
            return self.zero(absprec)
        s %= self.p**width
        if s == 0:
            return self.zero(absprec)
        w = _vp_int(s, self.p)
        v = m + w
        k = min(absprec - v, self.prec)
        return PadicNumber(self, v, (s // self.p**w) % self.p**k, k)


class PadicNumber:
    """An element of Q_p to finite precision. Immutable."""

    __slots__ = ("ctx", "v", "unit", "_k")

    def __init__(self, ctx: PadicContext, v: int | None, unit: int, k: float):
        self.ctx = ctx
        self.v = v
        self.unit = unit
        self._k = k

    # -- inspection -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    def is_zero(self) -> bool:
        return self.v is None

    @property
    def known_digits(self) -> int:
        if self.v is None:
            raise ValueError("zero has no unit digits")
        return self._k

    @property
    def absprec(self) -> float:
        """Absolute precision: the value is known modulo p**absprec."""
        return self._k if self.v is None else self.v + self._k

    @property
    def order(self) -> float:
        """Lower bound on the valuation (the bound itself for a zero)."""
        return self._k if self.v is None else self.v

    def valuation(self) -> int:
        if self.v is None:
            raise ValueError("valuation undefined (infinite)")
        return self.v

    def norm(self) -> float:
        return 0.0 if self.v is None else float(self.p) ** (-self.v)

    def is_unit(self) -> bool:
        return self.v == 0

    def lift(self) -> Fraction:
        """The rational representative ``p**v * u``."""
        if self.v is None:
            return Fraction(0)
        return self.unit * Fraction(self.p) ** self.v

    def digits(self) -> list[int]:
        """Base-p digits of the unit, least significant first."""
        if self.v is None:
            return []
        out, u = [], self.unit
        for _ in range(self._k):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def reduce(self, absprec: float) -> "PadicNumber":
        """Forget digits beyond ``p**absprec``."""
        if absprec >= self.absprec:
            return self
        if self.v is None:
            return self.ctx.zero(absprec)
        return self.ctx.from_scaled(self.v, self.unit, absprec)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.ctx != self.ctx:
                raise ValueError("p-adic context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.element(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a.v is None and a._k == INF:
            return b
        if b.v is None and b._k == INF:
            return a
        absprec = min(a.absprec, b.absprec)
        if a.v is None or b.v is None:
            x = b if a.v is None else a
            return x.reduce(absprec) if x.v is not None else self.ctx.zero(absprec)
        p = self.ctx.p
        m = min(a.v, b.v)
        s = a.unit * p ** (a.v - m) + b.unit * p ** (b.v - m)
        return self.ctx.from_scaled(m, s, absprec)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.v is None:
            return self
        return PadicNumber(self.ctx, self.v, (-self.unit) % self.p**self._k, self._k)

    def __pos__(self) -> "PadicNumber":
        return self

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a.v is None or b.v is None:
            return self.ctx.zero(a.order + b.order)
        k = min(a._k, b._k)
        return PadicNumber(self.ctx, a.v + b.v, a.unit * b.unit % self.p**k, k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b * self.inverse()

    def inverse(self) -> "PadicNumber":
        if self.v is None:
            raise ZeroDivisionError("p-adic division by zero")
        mod = self.p**self._k
        return PadicNumber(self.ctx, -self.v, pow(self.unit, -1, mod), self._k)

    def __pow__(self, n: int) -> "PadicNumber":
        if not isinstance(n, int):
            return NotImplemented
        if self.v is None:
            if n <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return self.ctx.zero(self._k * n)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        mod = self.p**base._k
        return PadicNumber(self.ctx, base.v * n, pow(base.unit, n, mod), base._k)

    def __eq__(self, other) -> bool:
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return (self - b).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        p = self.p
        if self.v is None:
            return "0" if self._k == INF else f"0 mod {p}^{self._k}"
        terms = []
        for i, d in enumerate(self.digits()):
            if i == 0:
                terms.append(str(d))
            elif i == 1:
                terms.append(f"{d}*{p}")
            else:
                terms.append(f"{d}*{p}^{i}")
        return f"{p}^{self.v} * ({' + '.join(terms)}) mod {p}^{self.absprec}"

    def __repr__(self) -> str:
        return f"PadicNumber({self})"


def parse_padic(text: str, ctx: PadicContext) -> PadicNumber:
    """Parse an integer or ``a/b`` rational into ``ctx``."""
    return ctx.element(Fraction(text.strip()))


def valuation(x: Union[Rational, PadicNumber], p: int | None = None) -> int:
    """p-adic valuation of a nonzero rational or PadicNumber."""
    if isinstance(x, PadicNumber):
        return x.valuation()
    if p is None:
        raise ValueError("p is required for rational input")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation undefined (infinite)")
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def teichmuller(u: PadicNumber) -> PadicNumber:
    """The (p-1)-th root of unity congruent to the unit ``u`` mod p."""
    if u.v != 0:
        raise ValueError("teichmuller requires a unit")
    mod = u.p**u.known_digits
    w = u.unit
    while True:
        nxt = pow(w, u.p, mod)
        if nxt == w:
            break
        w = nxt
    return PadicNumber(u.ctx, 0, w, u.known_digits)


def _log1p_int(z: int, vz: int, p: int, absprec: int) -> int:
    """log(1+z) mod p**absprec for an integer z with v_p(z) = vz >= 1."""
    nmax = 1
    while nmax * vz - _ilog(nmax, p) < absprec:
        nmax += 1
    mod = p ** (absprec + _ilog(nmax, p))
    out = 0
    zn = 1
    for n in range(1, nmax + 1):
        zn = zn * z % mod
        e = _vp_int(n, p)
        term = (zn // p**e) * pow(n // p**e, -1, p**absprec)
        out += term if n % 2 else -term
    return out % p**absprec


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm, the branch with log_p(p) = 0."""
    if x.is_zero():
        raise ValueError("logarithm of zero")
    p, k = x.p, x.known_digits
    mod = p**k
    w = teichmuller(PadicNumber(x.ctx, 0, x.unit, k)).unit
    z = x.unit * pow(w, -1, mod) % mod - 1
    if z == 0:
        return x.ctx.zero(k)
    return x.ctx.from_scaled(0, _log1p_int(z, _vp_int(z, p), p, k), k)


def padic_exp(z: PadicNumber) -> PadicNumber:
    """exp(z) for v_p(z) >= 1."""
    ctx = z.ctx
    if z.is_zero():
        if z.absprec == INF:
            return ctx.one()
        return ctx.from_scaled(0, 1, z.absprec)
    if z.v < 1:
        raise ValueError("outside exp convergence disc")
    p = ctx.p
    absprec = min(z.absprec, z.v + ctx.prec)
    nmax = 1
    while nmax * z.v - (nmax - 1) // (p - 1) < absprec:
        nmax += 1
    slack = sum(_vp_int(n, p) for n in range(1, nmax + 1))
    mod = p ** (absprec + slack)
    zi = z.unit * p**z.v
    out, zn, e, unit_fact = 1, 1, 0, 1
    for n in range(1, nmax + 1):
        zn = zn * zi % mod
        en = _vp_int(n, p)
        e += en
        unit_fact *= n // p**en
        out += (zn // p**e) * pow(unit_fact, -1, p**absprec)
    return ctx.from_scaled(0, out, absprec)


def q_pow(q: PadicNumber, x) -> PadicNumber:
    """q**x; exact for integer x, exp(x log q) otherwise."""
    if isinstance(x, Fraction) and x.denominator == 1:
        x = int(x)
    if isinstance(x, int):
        return q**x
    if isinstance(x, PadicNumber) or isinstance(x, Fraction):
        if q.is_zero() or q.v != 0 or (q - 1).order < 1:
            raise ValueError("q^x undefined p-adically: q must lie in 1 + pZ_p")
        arg = q.ctx.element(x) * iwasawa_log(q)
        if arg.order < 1:
            raise ValueError("q^x undefined p-adically: v_p(x log q) < 1")
        return padic_exp(arg)
    raise TypeError(f"unsupported exponent type {type(x).__name__}")
