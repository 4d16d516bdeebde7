"""q-brackets and the fermionic/bosonic p-adic q-integrals.

Three carriers are supported, chosen by the type of ``q``:

* ``Fraction`` (or ``int``): exact closed forms,
* ``PadicNumber``: Riemann sums at finite level, in Q_p,
* ``float``: the real shadow, Abel-summed series.

The fermionic measure is ``mu_{-q}(x + p^N Z_p) = (-q)^x / [p^N]_{-q}``. For a
real ``0 < q < 1`` the normalizer ``1/[p^N]_{-q}`` tends to ``1 + q``, so the
integral becomes ``[2]_q * sum_xi (-q)^xi f(xi)``; when the integrand carries
the twist ``q^{-beta xi}`` against ``mu_{-q^beta}`` the q-powers cancel and
what remains, ``[2]_{q^beta} * sum_xi (-1)^xi f(xi)``, is read as an Abel sum.

Closed form of the exponential moment: the level-N Riemann sum of ``a^xi``
against ``mu_{-q^beta}`` is the finite geometric sum

    (1 + q^b) / (1 + q^(b P)) * (1 + (a q^b)^P) / (1 + a q^b),   P = p^N odd,

and both ``q^(b P)`` and ``(a q^b)^P`` tend to 1 p-adically when q, a lie in
1 + pZ_p, leaving ``[2]_{q^beta} / (1 + a q^beta)``. The same expression is
the Abel value of the real series, so one closed form anchors both backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Any, Iterator, Sequence

from .padic import PadicContext, PadicNumber, iwasawa_log, q_pow
from .series import poly_eval, series_coeffs
from .summation import DEFAULT_TOL, SummationOutcome, max_terms, sum_alternating

BACKENDS = ("exact", "padic", "real")


class DomainError(ValueError):
    """Parameters outside the domain where a quantity is defined."""


def carrier_of(q) -> str:
    if isinstance(q, PadicNumber):
        return "padic"
    if isinstance(q, float):
        return "real"
    if isinstance(q, (int, Fraction)):
        return "exact"
    raise TypeError(f"unsupported carrier {type(q).__name__}")


def _as_int(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return None


def power(q, x):
    """q**x in q's carrier (exact only for integer x unless q is p-adic/real)."""
    n = _as_int(x)
    if isinstance(q, PadicNumber):
        return q**n if n is not None else q_pow(q, x)
    if n is not None:
        return q**n
    if isinstance(q, float):
        return q ** float(x)
    raise DomainError(f"q^x is not rational for q={q}, x={x}")


def _int_bracket(n: int, q):
    """([n]_q, q**n) for n >= 0 by doubling; valid at q = 1."""
    if n == 0:
        zero = 0 * q
        return zero, zero + 1
    b, qn = _int_bracket(n // 2, q)
    b, qn = b + qn * b, qn * qn
    if n % 2:
        b, qn = b + qn, qn * q
    return b, qn


def q_bracket(x, q, sign: str = "plus"):
    """[x]_q = (1-q^x)/(1-q) or [x]_{-q} = (1-(-q)^x)/(1+q)."""
    n = _as_int(x)
    if sign == "plus":
        if n is not None:
            if n >= 0:
                return _int_bracket(n, q)[0]
            b, qn = _int_bracket(-n, q)
            return -b / qn
        if q == 1:
            return x
        return (1 - power(q, x)) / (1 - q)
    if sign == "minus":
        if n is None:
            raise DomainError("[x]_{-q} needs integer x")
        if n >= 0:
            return _int_bracket(n, -q)[0]
        b, qn = _int_bracket(-n, -q)
        return -b / qn
    raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")


@dataclass(frozen=True)
class QWeightParams:
    """q, the weights alpha and beta, and the p-adic context if any."""

    q: Any
    alpha: int = 1
    beta: int = 1
    ctx: PadicContext | None = None

    def __post_init__(self) -> None:
        if self.alpha < 1 or self.beta < 1:
            raise DomainError("alpha and beta must be positive integers")

    def with_q(self, q) -> "QWeightParams":
        return replace(self, q=q)

    def padic_q(self) -> PadicNumber:
        if self.ctx is None:
            raise DomainError("p-adic backend needs a PadicContext")
        q = self.ctx.element(self.q)
        if q.is_zero() or q.v != 0 or (q - 1).order < 1:
            raise DomainError(f"q = {self.q} is not in 1 + {self.ctx.p}Z_{self.ctx.p}")
        return q

    def real_q(self) -> float:
        q = float(self.q)
        if not 0 < q <= 1:
            raise DomainError(f"real backend needs 0 < q <= 1, got {self.q}")
        return q

    def exact_q(self) -> Fraction:
        if isinstance(self.q, PadicNumber):
            return self.q.lift() if self.q.absprec == math.inf else _fail_exact(self.q)
        return Fraction(self.q)


def _fail_exact(q):
    raise DomainError(f"{q} has no exact rational value")


@dataclass(frozen=True)
class Integrand:
    """An evaluable integrand f(xi).

    kind ``poly``: sum_k coeffs[k] * [shift + xi]_{q^alpha}^k,
    kind ``exp``: base**xi,
    kind ``loggamma``: y (log y - 1) with y = [shift + xi]_{q^alpha}.
    ``twisted`` multiplies by q^{-beta xi}.
    """

    kind: str = "poly"
    coeffs: tuple = (1,)
    base: Any = None
    shift: Any = 0
    twisted: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("poly", "exp", "loggamma"):
            raise ValueError(f"unknown integrand kind {self.kind!r}")
        if self.kind == "exp" and self.base is None:
            raise ValueError("exp integrand needs a base")

    def shifted(self, n) -> "Integrand":
        return replace(self, shift=self.shift + n)

    def with_twist(self, twisted: bool = True) -> "Integrand":
        return replace(self, twisted=twisted)

    def _kernel(self, y):
        if self.kind == "poly":
            return poly_eval(self.coeffs, y)
        if isinstance(y, PadicNumber):
            return y * (iwasawa_log(y) - 1)
        if isinstance(y, float):
            if y <= 0:
                raise DomainError(f"log of non-positive bracket {y}")
            return y * (math.log(y) - 1)
        raise DomainError("log-gamma kernel needs a p-adic or real carrier")

    def _coerce(self, value, q):
        if isinstance(q, PadicNumber):
            return q.ctx.element(value)
        if isinstance(q, float):
            return float(value)
        return Fraction(value)

    def at(self, q, xi, alpha: int = 1):
        """f(xi) for a single point (no twist)."""
        if self.kind == "exp":
            return power(self._coerce(self.base, q), xi)
        qa = q**alpha
        return self._kernel(q_bracket(self.shift + xi, qa))

    def values(self, q, alpha: int = 1, count: int | None = None) -> Iterator:
        """f(0), f(1), ... (no twist) in q's carrier."""
        xi = 0
        if self.kind == "exp":
            a = self._coerce(self.base, q)
            cur = self._coerce(1, q)
            while count is None or xi < count:
                yield cur
                cur = cur * a
                xi += 1
            return
        qa = q**alpha
        y = q_bracket(self.shift, qa)
        step = power(qa, self.shift)
        while count is None or xi < count:
            yield self._kernel(y)
            y = y + step
            step = step * qa
            xi += 1

    def real_limit(self, q: float, alpha: int = 1) -> float | None:
        """lim_{xi -> oo} f(xi) for real 0 < q < 1 (None if unbounded)."""
        if q >= 1:
            return None
        if self.kind == "exp":
            a = float(self.base)
            if abs(a) < 1:
                return 0.0
            return 1.0 if a == 1 else None
        y = 1.0 / (1.0 - q**alpha)
        return float(self._kernel(y))


# -- closed forms -----------------------------------------------------------


def exp_moment(a, q, beta: int = 1):
    """Closed form of  integral a^xi dmu_{-q^beta}(xi) = [2]_{q^beta} / (1 + a q^beta)."""
    qb = q**beta
    denom = 1 + a * qb
    if denom == 0:
        raise ZeroDivisionError("pole of the exponential moment at a = -q^-beta")
    return (1 + qb) / denom


def integral_closed_form(f: Integrand, params: QWeightParams):
    """Exact value of integral (twist) f dmu_{-q^beta} for poly/exp integrands.

    Works in q's own carrier; at q = 1 uses the Euler numbers of 2/(e^t+1).
    """
    q, alpha, beta = params.q, params.alpha, params.beta
    if f.kind == "loggamma":
        raise DomainError("no closed form for the log-gamma kernel")
    tw = q**beta if f.twisted else 1
    if q == 1:
        if f.kind == "exp":
            return exp_moment(Fraction(f.base), 1, beta)
        deg = len(f.coeffs) - 1
        euler = series_coeffs("euler", max(deg, 0))
        s = f.shift
        total = 0
        for k, c in enumerate(f.coeffs):
            if c:
                total += c * sum(comb(k, m) * s ** (k - m) * euler[m] for m in range(k + 1))
        return total
    if f.kind == "exp":
        base = f.base
        if isinstance(q, PadicNumber):
            base = q.ctx.element(base)
        return exp_moment(base / tw, q, beta)
    qa = q**alpha
    lead = power(qa, f.shift)
    d = 1 - qa
    moments = [exp_moment(qa**l / tw, q, beta) for l in range(len(f.coeffs))]
    total = 0
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        acc = 0
        for l in range(k + 1):
            term = comb(k, l) * lead**l * moments[l]
            acc = acc + (term if l % 2 == 0 else -term)
        total = total + c * acc / d**k
    return total


# -- p-adic Riemann sums ------------------------------------------------------


def fermionic_riemann_sums(f: Integrand, params: QWeightParams, levels: Sequence[int]) -> dict[int, PadicNumber]:
    """Level-N sums (1/[p^N]_{-q^beta}) sum_{x<p^N} (twist) f(x) (-q^beta)^x for each N."""
    q = params.padic_q()
    p = params.ctx.p
    levels = sorted(set(levels))
    if not levels or levels[0] < 0:
        raise ValueError("levels must be non-negative")
    top = p ** levels[-1]
    if top > max_terms():
        raise DomainError(f"level {levels[-1]} needs {top} terms, above the cap {max_terms()}")
    qb = q**params.beta
    checkpoints = {p**n: n for n in levels}
    out: dict[int, PadicNumber] = {}
    total = params.ctx.zero()
    weight = params.ctx.one()
    step = -1 if f.twisted else -qb
    for xi, val in enumerate(f.values(q, params.alpha, top), start=1):
        total = total + weight * val
        weight = weight * step
        if xi in checkpoints:
            out[checkpoints[xi]] = total / q_bracket(xi, qb, "minus")
    return out


def fermionic_integral_padic(f: Integrand, params: QWeightParams, level: int) -> PadicNumber:
    return fermionic_riemann_sums(f, params, [level])[level]


def bosonic_riemann_sums(f: Integrand, ctx: PadicContext, levels: Sequence[int]) -> dict[int, PadicNumber]:
    """(1/p^N) sum_{x<p^N} f(x), the q = 1 bosonic sums, computed exactly then reduced."""
    p = ctx.p
    levels = sorted(set(levels))
    top = p ** levels[-1]
    if top > max_terms():
        raise DomainError(f"level {levels[-1]} needs {top} terms, above the cap {max_terms()}")
    checkpoints = {p**n: n for n in levels}
    out = {}
    total = Fraction(0)
    for xi, val in enumerate(f.values(Fraction(1), 1, top), start=1):
        total += val
        if xi in checkpoints:
            out[checkpoints[xi]] = ctx.element(total / xi)
    return out


def bosonic_integral_padic(f: Integrand, ctx: PadicContext, level: int) -> PadicNumber:
    return bosonic_riemann_sums(f, ctx, [level])[level]


# -- real backend -------------------------------------------------------------


def fermionic_integral_real(
    f: Integrand, params: QWeightParams, method: str = "limit-split", tol: float = DEFAULT_TOL
) -> SummationOutcome:
    """[2]_{q^beta} * Abel sum of (-1)^xi (q^{beta xi}, unless twisted) f(xi)."""
    q = params.real_q()
    qb = q**params.beta
    scale = 1 + qb
    if f.twisted or q == 1:
        terms = f.values(q, params.alpha)
        limit = f.real_limit(q, params.alpha)
    else:
        terms = (w * v for w, v in zip(_powers(qb), f.values(q, params.alpha)))
        limit = 0.0
    if q == 1 and method in ("limit-split", "cesaro"):
        method = "euler"
    out = sum_alternating(terms, method, tol / scale, limit=limit)
    return SummationOutcome(scale * out.value, out.method, out.terms_used, scale * out.error_estimate, out.converged)


def _powers(r: float) -> Iterator[float]:
    cur = 1.0
    while True:
        yield cur
        cur *= r


# -- dispatch -------------------------------------------------------------------


def integrate(f: Integrand, params: QWeightParams, backend: str = "exact", level: int = 4, method: str = "limit-split", tol: float = DEFAULT_TOL):
    """integral (twist) f dmu_{-q^beta} in the requested backend's carrier."""
    if backend == "exact":
        return integral_closed_form(f, params.with_q(params.exact_q()))
    if backend == "padic":
        return fermionic_integral_padic(f, params, level)
    if backend == "real":
        out = fermionic_integral_real(f, params, method, tol)
        if not out.converged:
            raise ArithmeticError(f"Abel summation did not converge ({out.method}, {out.terms_used} terms)")
        return out.value
    raise ValueError(f"unknown backend {backend!r}")


def twisted_integral(f: Integrand, params: QWeightParams, backend: str = "exact", **kw):
    """integral q^{-beta xi} f(xi) dmu_{-q^beta}(xi)."""
    return integrate(f.with_twist(True), params, backend, **kw)


def _carrier_value(params: QWeightParams, backend: str):
    if backend == "exact":
        return params.exact_q()
    if backend == "padic":
        return params.padic_q()
    return params.real_q()


def shift_identity_residual(f: Integrand, n: int, params: QWeightParams, backend: str = "exact", **kw):
    """I(q^{-beta x} f_n) + (-1)^(n-1) I(q^{-beta x} f) - [2]_{q^beta} sum_l (-1)^(n-1-l) f(l)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    q = _carrier_value(params, backend)
    g = f.with_twist(True)
    lhs = integrate(g.shifted(n), params, backend, **kw)
    rest = integrate(g, params, backend, **kw)
    lhs = lhs + rest if n % 2 == 1 else lhs - rest
    rhs = 0
    for l in range(n):
        val = f.at(q, l, params.alpha)
        rhs = rhs + (val if (n - 1 - l) % 2 == 0 else -val)
    return lhs - (1 + q**params.beta) * rhs
