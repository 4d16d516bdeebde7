"""Named verification suites and their machine-readable reports."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .loggamma import (
    VARIANTS,
    bracket_split_residual,
    classical_series_rhs,
    pointwise_split_residual,
    pointwise_split_tolerance,
    log_expansion_check,
    log_gamma,
    log_gamma_real_outcome,
    log_tail_bound,
    series_rhs,
    series_rhs_euler,
    stirling,
    stirling_error,
    stirling_term,
    thm1_residual,
)
from .padic import PadicContext, PadicNumber
from .qcalc import DomainError, Integrand, QWeightParams, shift_identity_residual
from .series import format_rational
from .special import classical, prop1_residual, qeuler, qgenocchi, qgenocchi_limit_q1, qgenocchi_oracle, witt_moment

SUITES = ("witt", "prop1", "shift", "thm1", "thm2", "thm3", "cor1", "cor2", "stirling", "expansion")
REAL_TOL = 1e-8


def render(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, PadicNumber):
        return str(value)
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, int):
        return value
    return str(value)


@dataclass
class Case:
    key: str
    inputs: dict
    lhs: Any
    rhs: Any
    residual: Any
    passed: bool
    transcript: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "key": self.key,
            "inputs": render(self.inputs),
            "lhs": render(self.lhs),
            "rhs": render(self.rhs),
            "residual": render(self.residual),
            "pass": self.passed,
            "transcript": render(self.transcript),
        }


@dataclass
class SuiteReport:
    suite: str
    grid: dict
    tolerance: str
    cases: list[Case]
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def summary(self) -> dict:
        out = {"total": len(self.cases), "passed": sum(c.passed for c in self.cases)}
        out.update(self.extra)
        return out

    def as_dict(self) -> dict:
        cases = sorted(self.cases, key=lambda c: c.key)
        return {
            "suite": self.suite,
            "grid": render(self.grid),
            "tolerance": self.tolerance,
            "summary": render(self.summary),
            "cases": [c.as_dict() for c in cases],
        }


@dataclass(frozen=True)
class SuiteOptions:
    p: int | None = None
    precision: int = 12
    q: Fraction | None = None
    alpha: int | None = None
    beta: int | None = None
    levels: tuple[int, int] = (2, 5)
    x: Fraction | None = None
    trunc: int | None = None
    method: str = "limit-split"
    variant: str = "auto"

    def primes(self, default=(3, 5)) -> tuple[int, ...]:
        return (self.p,) if self.p else default

    def alphas(self, default=(1, 2)) -> tuple[int, ...]:
        return (self.alpha,) if self.alpha else default

    def betas(self, default=(1, 2)) -> tuple[int, ...]:
        return (self.beta,) if self.beta else default

    def level_range(self) -> range:
        return range(self.levels[0], self.levels[1] + 1)

    def padic_q(self, p: int, square: bool = False) -> Fraction:
        """User q when it lies in 1 + pZ_p (1 + p^2 Z_p if ``square``), else 1 + p or 1 + p^2."""
        need = 2 if square else 1
        if self.q is not None and self.q != 1:
            d = self.q - 1
            num, den = d.numerator, d.denominator
            if den % p and num % p**need == 0:
                return self.q
        return Fraction(1 + p**need)

    def real_qs(self, default) -> tuple[Fraction, ...]:
        if self.q is not None and 0 < self.q < 1:
            return (self.q,)
        return tuple(Fraction(v) for v in default)


def _tag(v) -> str:
    """Key-safe rendering: 1/5 -> 1_5, 26 -> 26."""
    return str(v).replace("/", "_")


def _key(*parts) -> str:
    return "/".join(str(p) for p in parts)


def _padic_check(residual: PadicNumber, level: int) -> bool:
    return residual.order >= level - 2


# -- suites -------------------------------------------------------------------


def suite_witt(opts: SuiteOptions) -> SuiteReport:
    cases = []
    grid = {"p": opts.primes(), "alpha": opts.alphas(), "beta": opts.betas(), "n": "0..6", "levels": list(opts.level_range())}
    for p in opts.primes():
        ctx = PadicContext(p, opts.precision)
        q = opts.padic_q(p)
        for a in opts.alphas():
            for b in opts.betas():
                params = QWeightParams(q, a, b, ctx)
                for n in range(7):
                    closed = ctx.element(witt_moment(n, params))
                    sums = qgenocchi_oracle(n, params, opts.level_range())
                    for level, s in sums.items():
                        r = closed - s
                        cases.append(Case(
                            _key(f"p{p}", f"a{a}", f"b{b}", f"n{n}", f"N{level}"),
                            {"p": p, "q": q, "alpha": a, "beta": b, "n": n, "level": level},
                            closed, s, r, _padic_check(r, level),
                            {"residual_valuation": r.order, "required": level - 2},
                        ))
    return SuiteReport("witt", grid, "v_p(residual) >= level - 2", cases)


def suite_prop1(opts: SuiteOptions) -> SuiteReport:
    qs = (opts.q,) if opts.q is not None and opts.q != 1 else (Fraction(1, 2), Fraction(2, 3), Fraction(3, 5))
    alphas = opts.alphas((1, 2, 3))
    cases = []
    for q in qs:
        for a in alphas:
            for n in range(11):
                r = prop1_residual(n, q, a)
                lhs = qeuler(n, q, a)
                rhs = qgenocchi(n + 1, QWeightParams(q, a, 1)) / (n + 1)
                cases.append(Case(_key(f"q{_tag(q)}", f"a{a}", f"n{n:02d}"), {"q": q, "alpha": a, "n": n}, lhs, rhs, r, r == 0))
    return SuiteReport("prop1", {"q": qs, "alpha": alphas, "n": "0..10"}, "exact zero", cases)


def _poly(seed: int, degree: int) -> tuple[Fraction, ...]:
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1))


def suite_shift(opts: SuiteOptions) -> SuiteReport:
    cases = []
    qs = (opts.q,) if opts.q is not None else (Fraction(1, 2), Fraction(2, 3), Fraction(6))
    for q in qs:
        for a in opts.alphas():
            for b in opts.betas():
                params = QWeightParams(q, a, b)
                for deg in range(7):
                    f = Integrand("poly", _poly(100 * deg + 7, deg))
                    for n in range(1, 5):
                        r = shift_identity_residual(f, n, params, "exact")
                        cases.append(Case(
                            _key("exact", f"q{_tag(q)}", f"a{a}", f"b{b}", f"d{deg}", f"n{n}"),
                            {"backend": "exact", "q": q, "alpha": a, "beta": b, "degree": deg, "n": n, "coeffs": list(f.coeffs)},
                            None, None, r, r == 0,
                        ))
    p = opts.p or 5
    ctx = PadicContext(p, opts.precision)
    q = opts.padic_q(p)
    levels = [n for n in opts.level_range() if p**n <= 625]
    for a in opts.alphas((1,)):
        for b in opts.betas():
            params = QWeightParams(q, a, b, ctx)
            for deg in (1, 3):
                f = Integrand("poly", _poly(deg, deg))
                for n in range(1, 5):
                    for level in levels:
                        r = shift_identity_residual(f, n, params, "padic", level=level)
                        cases.append(Case(
                            _key("padic", f"p{p}", f"a{a}", f"b{b}", f"d{deg}", f"n{n}", f"N{level}"),
                            {"backend": "padic", "p": p, "q": q, "alpha": a, "beta": b, "degree": deg, "n": n, "level": level},
                            None, None, r, _padic_check(r, level),
                            {"residual_valuation": r.order, "required": level - 2},
                        ))
    return SuiteReport("shift", {"q_exact": qs, "p": p, "q_padic": q}, "exact zero; p-adic v_p >= level - 2", cases)


def suite_thm1(opts: SuiteOptions) -> SuiteReport:
    cases = []
    xs = (opts.x,) if opts.x is not None and opts.x > 0 else (2, 5, 10)
    qs = opts.real_qs(("1/2", "4/5", "9/10"))
    for x in xs:
        for q in qs:
            for a in opts.alphas():
                for b in opts.betas():
                    params = QWeightParams(q, a, b)
                    r = thm1_residual(x, params, "real", method=opts.method)
                    ls = log_gamma_real_outcome(x, params, "limit-split")
                    eu = log_gamma_real_outcome(x, params, "euler")
                    cross = abs(ls.value - eu.value)
                    ok = abs(r.value) < REAL_TOL and cross < REAL_TOL
                    cases.append(Case(
                        _key("real", f"x{x}", f"q{_tag(q)}", f"a{a}", f"b{b}"),
                        {"backend": "real", "x": x, "q": q, "alpha": a, "beta": b},
                        r.transcript["lhs"], r.transcript["rhs"], r.value, ok,
                        {"method": opts.method, "limit_split_vs_euler": cross, "terms": r.transcript["G(x)"]["terms"]},
                    ))
    p = opts.p or 5
    ctx = PadicContext(p, opts.precision)
    q = opts.padic_q(p)
    xs = (int(opts.x),) if opts.x is not None and opts.x.denominator == 1 and opts.x > 0 else (1, 2, 3)
    levels = [n for n in opts.level_range() if p**n <= 3125]
    for x in xs:
        for level in levels:
            r = thm1_residual(x, QWeightParams(q, 1, 1, ctx), "padic", level=level)
            cases.append(Case(
                _key("padic", f"p{p}", f"x{x}", f"N{level}"),
                {"backend": "padic", "p": p, "q": q, "x": x, "level": level},
                r.transcript["lhs"], r.transcript["rhs"], r.value, _padic_check(r.value, level),
                {"residual_valuation": r.value.order, "required": level - 2},
            ))
    return SuiteReport("thm1", {"x_real": xs, "q_real": qs, "p": p, "q_padic": q}, "real |r| < 1e-8 and method cross-agreement < 1e-8; p-adic v_p >= level - 2", cases)


REAL_RESOLUTION_POINTS = (
    (50, "1/2"), (30, "1/2"), (80, "1/2"), (50, "3/10"), (50, "7/10"),
    (2, "3/10"), (3, "1/2"), (4, "4/5"), (2, "1/10"),
)


def _resolution(name: str, opts: SuiteOptions, rhs_fn: Callable, betas: tuple[int, ...]) -> SuiteReport:
    """Evaluate both index variants against the integral and keep the one that fits."""
    rows = []
    points = list(REAL_RESOLUTION_POINTS)
    if opts.x is not None and opts.q is not None and 0 < opts.q < 1:
        points = [(opts.x, format_rational(opts.q))]
    for x, qs in points:
        for b in betas:
            params = QWeightParams(Fraction(qs), opts.alpha or 1, b)
            lhs = log_gamma(x, params, backend="real", method=opts.method).value
            errs = {}
            vals = {}
            for v in VARIANTS:
                val = rhs_fn(x, params, opts.trunc, v, "real").value
                vals[v] = val
                errs[v] = abs(val - lhs) / abs(lhs)
            rows.append(("real", {"backend": "real", "x": x, "q": Fraction(qs), "alpha": params.alpha, "beta": b}, lhs, vals, errs))
    p = opts.p or 5
    ctx = PadicContext(p, opts.precision)
    q = opts.padic_q(p, square=True)
    level = min(opts.levels[1], 5 if p <= 5 else 3)
    for a in (1,):
        for x in (Fraction(1, p), Fraction(2, p)):
            for b in betas:
                params = QWeightParams(q, a, b, ctx)
                lhs = log_gamma(x, params, backend="padic", level=level).value
                vals, errs = {}, {}
                for v in VARIANTS:
                    ev = rhs_fn(x, params, None, v, "padic")
                    vals[v] = ev.value
                    errs[v] = (ev.value - lhs).order
                inputs = {"backend": "padic", "p": p, "q": q, "x": x, "alpha": a, "beta": b, "level": level}
                inputs["v_p_bracket_x"] = -ev.transcript["predicate"]
                rows.append(("padic", inputs, lhs, vals, errs))

    def fits(kind, err, level=level):
        return err < REAL_TOL if kind == "real" else err >= level - 2

    if opts.variant == "auto":
        score = {v: sum(fits(kind, errs[v]) for kind, _, _, _, errs in rows) for v in VARIANTS}
        chosen = max(VARIANTS, key=lambda v: (score[v], v == "derived"))
    else:
        chosen = opts.variant
    other = [v for v in VARIANTS if v != chosen][0]
    cases = []
    unique = 0
    for kind, inputs, lhs, vals, errs in rows:
        both = [v for v in VARIANTS if fits(kind, errs[v])]
        unique += len(both) == 1
        key = _key(kind, *(f"{k}{_tag(v)}" for k, v in inputs.items() if k not in ("backend", "v_p_bracket_x")))
        cases.append(Case(
            key, inputs, lhs, vals[chosen], errs[chosen] if kind == "real" else vals[chosen] - lhs,
            fits(kind, errs[chosen]),
            {
                "variant": chosen,
                "measure": "relative error" if kind == "real" else "residual valuation",
                "error": errs[chosen],
                "other_variant": {"variant": other, "error": errs[other], "fits": fits(kind, errs[other])},
                "variants_fitting": both,
            },
        ))
    extra = {"chosen_variant": chosen, "discriminating_points": unique, "points": len(rows)}
    grid = {"real_points": points, "p": p, "q_padic": q, "level": level, "betas": betas}
    return SuiteReport(name, grid, "real relative error < 1e-8; p-adic v_p >= level - 2", cases, extra)


def suite_thm2(opts: SuiteOptions) -> SuiteReport:
    return _resolution("thm2", opts, series_rhs, opts.betas((1, 2)))


def suite_thm3(opts: SuiteOptions) -> SuiteReport:
    return _resolution("thm3", opts, series_rhs_euler, (1,))


def _table_cases(prefix: str, expected: dict) -> list[Case]:
    cases = []
    for (kind, n), val in expected.items():
        got = classical(kind, n)
        cases.append(Case(_key(prefix, kind, f"n{n}"), {"kind": kind, "n": n}, got, val, got - val, got == val))
    return cases


def _corollary(name: str, kind: str, opts: SuiteOptions) -> SuiteReport:
    cases = []
    xs = (float(opts.x),) if opts.x is not None and opts.x >= 2 else (10.0, 20.0)
    for x in xs:
        integral = log_gamma(x, QWeightParams(Fraction(1)), backend="real", method="euler").value
        derived = classical_series_rhs(x, opts.trunc, kind, "derived")
        paper = classical_series_rhs(x, opts.trunc, kind, "paper")
        variant = "paper" if opts.variant == "paper" else "derived"
        val = paper if variant == "paper" else derived
        cases.append(Case(
            _key("abel", f"x{x:g}"), {"x": x, "q": 1, "variant": variant}, integral, val, integral - val,
            abs(integral - val) < REAL_TOL,
            {"paper_form_residual": integral - paper, "derived_form_residual": integral - derived},
        ))
        if kind == "euler":
            lim = series_rhs_euler(x, QWeightParams(Fraction(1)), opts.trunc, "derived", "real").value
            cases.append(Case(_key("limit", f"x{x:g}"), {"x": x}, lim, derived, lim - derived, abs(lim - derived) < REAL_TOL))
    if kind == "genocchi":
        cases += _table_cases("table", {("genocchi", 2): Fraction(-1), ("genocchi", 4): Fraction(1), ("genocchi", 6): Fraction(-3)})
        for n in range(9):
            g = classical("genocchi", n)
            for a in (1, 2, 3):
                for b in (1, 2, 3):
                    lim = qgenocchi_limit_q1(n, a, b)
                    cases.append(Case(_key("q1limit", f"n{n}", f"a{a}", f"b{b}"), {"n": n, "alpha": a, "beta": b}, lim, g, lim - g, lim == g))
    else:
        cases += _table_cases("table", {("euler", 1): Fraction(-1, 2), ("bernoulli", 2): Fraction(1, 6)})
    return SuiteReport(name, {"x": xs}, "|r| < 1e-8 (real), exact (tables)", cases)


def suite_cor1(opts: SuiteOptions) -> SuiteReport:
    return _corollary("cor1", "genocchi", opts)


def suite_cor2(opts: SuiteOptions) -> SuiteReport:
    return _corollary("cor2", "euler", opts)


def first_omitted_term(x: float, trunc: int) -> float:
    n = trunc + 1
    while stirling_term(Fraction(1), n) == 0:
        n += 1
    return float(abs(stirling_term(Fraction(x), n)))


def suite_stirling(opts: SuiteOptions) -> SuiteReport:
    trunc = opts.trunc or 6
    xs = (10, 20, 40)
    cases = []
    errors = []
    for x in xs:
        err = stirling_error(x, trunc)
        bound = first_omitted_term(x, trunc)
        errors.append(err)
        cases.append(Case(_key(f"x{x}"), {"x": x, "trunc": trunc}, stirling(x, trunc), bound, err, err <= bound, {"first_omitted_term": bound}))
    mono = all(errors[i + 1] < errors[i] for i in range(len(errors) - 1))
    cases.append(Case("monotone", {"x": xs, "trunc": trunc}, None, None, errors, mono))
    return SuiteReport("stirling", {"x": xs, "trunc": trunc}, "|error| <= first omitted term; error decreasing in x", cases)


def suite_expansion(opts: SuiteOptions) -> SuiteReport:
    cases = []
    trunc = opts.trunc or 40
    for z in (0.0, 0.25, -0.25, 0.5, -0.5, 0.75):
        r = log_expansion_check(z, trunc)
        bound = log_tail_bound(z, trunc) + 1e-14
        cases.append(Case(_key("log1p", f"z{z:+.2f}"), {"z": z, "trunc": trunc}, None, bound, r, abs(r) <= bound))
    for qs in ("1/2", "4/5"):
        for a in (1, 2):
            params = QWeightParams(Fraction(qs), a, 1)
            for x in (3.0, 7.5):
                for xi in range(21):
                    try:
                        r = pointwise_split_residual(x, xi, params)
                    except DomainError:
                        continue
                    tol = pointwise_split_tolerance(x, xi, params)
                    cases.append(Case(
                        _key("pointwise", f"q{_tag(qs)}", f"a{a}", f"x{x}", f"xi{xi:02d}"), {"q": Fraction(qs), "alpha": a, "x": x, "xi": xi},
                        None, tol, r, abs(r) <= tol, {"tolerance": tol},
                    ))
    for qs in ("1/2", "6", "2/3"):
        q = Fraction(qs)
        for a in (1, 2):
            for x in range(-2, 4):
                for y in range(0, 4):
                    r = bracket_split_residual(x, y, q, a)
                    cases.append(Case(_key("split", f"q{_tag(qs)}", f"a{a}", f"x{x}", f"y{y}"), {"q": q, "alpha": a, "x": x, "y": y}, None, None, r, r == 0))
    ctx = PadicContext(5, opts.precision)
    q = ctx.element(26)
    for x in (Fraction(1, 5), Fraction(3, 5)):
        for y in range(4):
            r = bracket_split_residual(ctx.element(x), y, q, 1)
            cases.append(Case(_key("split-padic", f"x{_tag(x)}", f"y{y}"), {"p": 5, "q": 26, "x": x, "y": y}, None, None, r, r.order >= ctx.prec - 4))
    return SuiteReport("expansion", {"trunc": trunc}, "log tail bound; pointwise tail bound + 1e-10; exact splitting", cases)


SUITE_FUNCS: dict[str, Callable[[SuiteOptions], SuiteReport]] = {
    "witt": suite_witt,
    "prop1": suite_prop1,
    "shift": suite_shift,
    "thm1": suite_thm1,
    "thm2": suite_thm2,
    "thm3": suite_thm3,
    "cor1": suite_cor1,
    "cor2": suite_cor2,
    "stirling": suite_stirling,
    "expansion": suite_expansion,
}


def run_suite(name: str, opts: SuiteOptions | None = None) -> SuiteReport:
    """Run one named suite, or every suite for ``all``."""
    opts = opts or SuiteOptions()
    if name == "all":
        reports = [SUITE_FUNCS[s](opts) for s in SUITES]
        cases = []
        for rep in reports:
            for c in rep.cases:
                cases.append(Case(_key(rep.suite, c.key), c.inputs, c.lhs, c.rhs, c.residual, c.passed, c.transcript))
        extra = {
            "suites": {r.suite: {"total": r.summary["total"], "passed": r.summary["passed"]} for r in reports},
            "chosen_variant": {r.suite: r.extra["chosen_variant"] for r in reports if "chosen_variant" in r.extra},
        }
        return SuiteReport("all", {r.suite: r.grid for r in reports}, "per suite", cases, extra)
    if name not in SUITE_FUNCS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return SUITE_FUNCS[name](opts)


CSV_FIELDS = ("key", "inputs", "lhs", "rhs", "residual", "pass")


def to_json(report: SuiteReport) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"


def to_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for c in report.as_dict()["cases"]:
        w.writerow([c["key"], json.dumps(c["inputs"], separators=(",", ":")), c["lhs"], c["rhs"], json.dumps(c["residual"]) if isinstance(c["residual"], list) else c["residual"], "true" if c["pass"] else "false"])
    return buf.getvalue()


def emit(report: SuiteReport, fmt: str = "json", path: str | Path | None = None) -> str:
    """Serialize ``report``; write it to ``path`` when given."""
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
