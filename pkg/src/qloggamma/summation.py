"""Summation of (possibly divergent) alternating real series.

Every method returns the Abel value of ``sum_k (-1)**k a_k``. For terms that
tend to a limit ``L`` this is ``L/2 + sum_k (-1)**k (a_k - L)``; the Euler
transform also handles terms of moderate (polynomial-times-log) growth.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence, Union

METHODS = ("limit-split", "euler", "cesaro", "direct")
_ALIASES = {"euler-transform": "euler"}

DEFAULT_TOL = 1e-9
MAX_TERMS_ENV = "QLOGGAMMA_MAX_TERMS"


def max_terms() -> int:
    """Term-count cap shared by summation and Riemann sums."""
    return int(os.environ.get(MAX_TERMS_ENV, "200000"))


@dataclass(frozen=True)
class SummationOutcome:
    value: float
    method: str
    terms_used: int
    error_estimate: float
    converged: bool


class _Lazy:
    """Random access over a callable or an iterator, with caching."""

    def __init__(self, terms: Union[Callable[[int], float], Iterable[float]]):
        self._cache: list[float] = []
        if callable(terms):
            self._fn = terms
            self._it: Iterator[float] | None = None
        else:
            self._fn = None
            self._it = iter(terms)
        self.exhausted_at: int | None = len(terms) if isinstance(terms, Sequence) else None

    def __getitem__(self, k: int) -> float:
        while len(self._cache) <= k:
            if self._fn is not None:
                self._cache.append(float(self._fn(len(self._cache))))
            else:
                try:
                    self._cache.append(float(next(self._it)))
                except StopIteration:
                    self.exhausted_at = len(self._cache)
                    raise IndexError(k) from None
        return self._cache[k]

    def available(self, k: int) -> bool:
        try:
            self[k]
        except IndexError:
            return False
        return True


def _estimate_limit(a: _Lazy, tol: float, budget: int) -> tuple[float | None, int]:
    """Aitken estimate of lim a_k once successive differences fall below tol."""
    k = 2
    while k < budget and a.available(k):
        d1 = a[k] - a[k - 1]
        if abs(d1) <= tol * 1e-3 * max(1.0, abs(a[k])):
            d0 = a[k - 1] - a[k - 2]
            denom = d1 - d0
            if denom != 0 and abs(d1) < abs(d0):
                return a[k] - d1 * d1 / denom, k
            return a[k], k
        k += 1
    return None, k


def _limit_split(a: _Lazy, tol: float, limit: float | None, budget: int) -> SummationOutcome:
    if limit is None:
        limit, _ = _estimate_limit(a, tol, budget)
        if limit is None:
            return SummationOutcome(math.nan, "limit-split", budget, math.inf, False)
    partial, k = 0.0, 0
    while k < budget and a.available(k):
        b = a[k] - limit
        partial += b if k % 2 == 0 else -b
        k += 1
        if abs(b) <= tol * 1e-2 and k > 2:
            nxt = abs(a[k] - limit) if a.available(k) else 0.0
            err = nxt + 4 * math.ulp(max(1.0, abs(limit))) * k
            return SummationOutcome(limit / 2 + partial, "limit-split", k, err, err <= tol)
    return SummationOutcome(limit / 2 + partial, "limit-split", k, math.inf, False)


def _euler(a: _Lazy, tol: float, limit: float | None, budget: int, head: int = 32) -> SummationOutcome:
    shift = 0.0 if limit is None else limit
    prev = None
    while head <= min(budget, 4096):
        if not a.available(head - 1):
            head = a.exhausted_at or 0
            if head == 0:
                break
        diffs = [a[k] - shift for k in range(head)]
        total, small, last = 0.0, 0, math.inf
        scale = max(abs(d) for d in diffs) or 1.0
        for m in range(head):
            term = diffs[0] / 2.0 ** (m + 1)
            total += term if m % 2 == 0 else -term
            last = abs(term)
            small = small + 1 if last <= tol * 1e-2 else 0
            if small >= 3:
                err = last + 4 * math.ulp(scale) * (m + 1)
                return SummationOutcome(shift / 2 + total, "euler", head, err, err <= tol)
            diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        prev = shift / 2 + total
        if a.exhausted_at is not None and head >= a.exhausted_at:
            break
        head *= 2
    return SummationOutcome(math.nan if prev is None else prev, "euler", head, math.inf, False)


def _cesaro(a: _Lazy, tol: float, budget: int) -> SummationOutcome:
    s, prev, k, calm = 0.0, None, 0, 0
    while k + 1 < budget and a.available(k + 1):
        s += a[k] if k % 2 == 0 else -a[k]
        nxt = a[k + 1] if (k + 1) % 2 == 0 else -a[k + 1]
        mean = s + nxt / 2
        k += 1
        if prev is not None:
            step = abs(mean - prev)
            calm = calm + 1 if step <= tol * 1e-2 else 0
            if calm >= 3:
                err = step + 4 * math.ulp(max(1.0, abs(mean))) * k
                return SummationOutcome(mean, "cesaro", k + 1, err, err <= tol)
        prev = mean
    return SummationOutcome(math.nan if prev is None else prev, "cesaro", k + 1, math.inf, False)


def _direct(a: _Lazy, tol: float, budget: int) -> SummationOutcome:
    s, k = 0.0, 0
    while k < budget and a.available(k):
        s += a[k] if k % 2 == 0 else -a[k]
        k += 1
        if a.available(k) and abs(a[k]) <= tol * 1e-2:
            err = abs(a[k])
            return SummationOutcome(s, "direct", k, err, err <= tol)
    if a.exhausted_at is not None and k == a.exhausted_at:
        return SummationOutcome(s, "direct", k, 0.0, True)
    return SummationOutcome(s, "direct", k, math.inf, False)


def sum_alternating(
    terms: Union[Callable[[int], float], Iterable[float]],
    method: str = "limit-split",
    tol: float = DEFAULT_TOL,
    limit: float | None = None,
    budget: int | None = None,
) -> SummationOutcome:
    """Abel sum of ``sum_k (-1)**k a_k``.

    ``terms`` is a callable ``k -> a_k`` or an iterable of the a_k. ``limit``
    is the known value of ``lim a_k`` (estimated by Aitken extrapolation when
    omitted and the method needs it).
    """
    method = _ALIASES.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown summation method {method!r}")
    budget = max_terms() if budget is None else budget
    a = _Lazy(terms)
    if method == "limit-split":
        return _limit_split(a, tol, limit, budget)
    if method == "euler":
        return _euler(a, tol, limit, budget)
    if method == "cesaro":
        return _cesaro(a, tol, budget)
    return _direct(a, tol, budget)
