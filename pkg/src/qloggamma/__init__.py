"""Weighted q-Genocchi numbers and weighted p-adic q-log-gamma functions."""

from __future__ import annotations

from .loggamma import log_gamma, series_rhs, series_rhs_euler, stirling
from .padic import PadicContext, PadicNumber, iwasawa_log, padic_exp, parse_padic, q_pow, valuation
from .qcalc import DomainError, Integrand, QWeightParams, integrate, q_bracket
from .series import TruncatedPowerSeries, series_coeffs
from .special import qeuler, qgenocchi, qgenocchi_limit_q1, witt_moment
from .summation import sum_alternating

__all__ = [
    "DomainError",
    "Integrand",
    "PadicContext",
    "PadicNumber",
    "QWeightParams",
    "TruncatedPowerSeries",
    "integrate",
    "iwasawa_log",
    "log_gamma",
    "padic_exp",
    "parse_padic",
    "q_bracket",
    "q_pow",
    "qeuler",
    "qgenocchi",
    "qgenocchi_limit_q1",
    "series_coeffs",
    "series_rhs",
    "series_rhs_euler",
    "stirling",
    "sum_alternating",
    "valuation",
    "witt_moment",
]
