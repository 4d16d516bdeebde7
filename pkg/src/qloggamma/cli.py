"""Command-line front end: ``qloggamma numbers|integrate|loggamma|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import harness
from .loggamma import MODES, VARIANTS, LogGammaRequest, classical_series_rhs, series_rhs, series_rhs_euler
from .padic import PadicContext
from .qcalc import BACKENDS, DomainError, Integrand, QWeightParams, fermionic_riemann_sums, integrate
from .series import SERIES_KINDS, series_coeffs
from .special import qeuler_table, qgenocchi
from .summation import METHODS


def parse_levels(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected n1..n2, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"bad level range {text!r}")
    return lo, hi


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


@dataclass(frozen=True)
class IntegrandSpec:
    f: Integrand
    twist_beta: int | None = None


def parse_integrand(text: str) -> IntegrandSpec:
    """``poly:[c0,c1,...]`` or ``exp:a``, optionally followed by ``;twist:beta``."""
    body, _, tail = text.partition(";")
    beta = None
    if tail:
        m = re.fullmatch(r"\s*twist:(\d+)\s*", tail)
        if not m or int(m.group(1)) < 1:
            raise argparse.ArgumentTypeError(f"bad integrand option {tail!r}; use twist:beta")
        beta = int(m.group(1))
    twisted = beta is not None
    kind, _, arg = body.partition(":")
    try:
        if kind == "poly":
            inner = arg.strip()
            if not (inner.startswith("[") and inner.endswith("]")):
                raise ValueError
            parts = [c for c in inner[1:-1].split(",") if c.strip()]
            return IntegrandSpec(Integrand("poly", tuple(Fraction(c.strip()) for c in parts), twisted=twisted), beta)
        if kind == "exp":
            return IntegrandSpec(Integrand("exp", base=Fraction(arg.strip()), twisted=twisted), beta)
    except (ValueError, ZeroDivisionError):
        pass
    raise argparse.ArgumentTypeError(f"bad integrand {text!r}; use poly:[c0,...] or exp:a")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, default=None, help="odd prime (default 5)")
    p.add_argument("--precision", type=int, default=12, metavar="M", help="p-adic digits (default 12)")
    p.add_argument("--q", type=parse_fraction, default=None, help="q as a/b")
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--levels", type=parse_levels, default=(2, 5), help="level range n1..n2")
    p.add_argument("--x", type=parse_fraction, default=None)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--method", choices=METHODS[:3], default="limit-split")
    p.add_argument("--variant", choices=VARIANTS + ("auto",), default="auto")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qloggamma", description="Weighted q-Genocchi numbers and p-adic q-log-gamma functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numbers", help="tables of special numbers")
    p.add_argument("kind", choices=("qgenocchi", "qeuler") + SERIES_KINDS)
    p.add_argument("--n", type=int, default=10, help="largest index")
    p.add_argument("--backend", choices=("exact", "padic"), default="exact")
    _common(p)

    p = sub.add_parser("integrate", help="fermionic integral of an integrand")
    p.add_argument("integrand", type=parse_integrand)
    p.add_argument("--backend", choices=BACKENDS, default="exact")
    _common(p)

    p = sub.add_parser("loggamma", help="evaluate the weighted q-log-gamma function")
    p.add_argument("--mode", choices=MODES, default="weighted-alpha-beta")
    p.add_argument("--backend", choices=("real", "padic"), default="real")
    p.add_argument("--series", choices=("none", "thm2", "thm3", "cor1", "cor2"), default="none", help="also evaluate a series form")
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="one of " + ", ".join(harness.SUITES + ("all",)))
    _common(p)
    return ap


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_out(rows: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(harness.render(rows), indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in harness.render(r).items()})
        text = buf.getvalue()
    _emit_text(text, out)


def _ctx(args) -> PadicContext:
    return PadicContext(args.p or 5, args.precision)


def _params(args, backend: str) -> QWeightParams:
    a, b = args.alpha or 1, args.beta or 1
    if backend == "padic":
        ctx = _ctx(args)
        q = args.q if args.q is not None else Fraction(1 + ctx.p)
        return QWeightParams(q, a, b, ctx)
    if backend == "real":
        return QWeightParams(args.q if args.q is not None else Fraction(1, 2), a, b)
    return QWeightParams(args.q if args.q is not None else Fraction(1 + (args.p or 5)), a, b)


def cmd_numbers(args) -> int:
    rows = []
    if args.kind in SERIES_KINDS:
        for n, v in enumerate(series_coeffs(args.kind, args.n)):
            rows.append({"n": n, "value": v})
    elif args.kind == "qgenocchi":
        params = _params(args, args.backend)
        for n in range(args.n + 1):
            v = qgenocchi(n, params)
            rows.append({"n": n, "value": params.ctx.element(v) if params.ctx else v})
    else:
        params = _params(args, args.backend)
        for n, v in enumerate(qeuler_table(args.n, params.q, params.alpha)):
            rows.append({"n": n, "value": params.ctx.element(v) if params.ctx else v})
    _rows_out(rows, args.format, args.out)
    return 0


def cmd_integrate(args) -> int:
    spec = args.integrand
    if spec.twist_beta is not None:
        args.beta = spec.twist_beta
    params = _params(args, args.backend)
    rows = []
    if args.backend == "padic":
        sums = fermionic_riemann_sums(spec.f, params, range(args.levels[0], args.levels[1] + 1))
        rows = [{"level": n, "value": v} for n, v in sums.items()]
    else:
        rows.append({"backend": args.backend, "value": integrate(spec.f, params, args.backend, method=args.method)})
    _rows_out(rows, args.format, args.out)
    return 0


def cmd_loggamma(args) -> int:
    if args.x is None:
        raise DomainError("--x is required")
    params = _params(args, args.backend)
    x = args.x if args.backend == "padic" else float(args.x)
    ev = LogGammaRequest(x, params, mode=args.mode, backend=args.backend, level=args.levels[1], method=args.method).evaluate()
    row = {"x": args.x, "backend": args.backend, "mode": args.mode, "value": ev.value, "transcript": ev.transcript}
    variant = "derived" if args.variant == "auto" else args.variant
    if args.series in ("thm2", "thm3"):
        fn = series_rhs if args.series == "thm2" else series_rhs_euler
        row["series"] = fn(x, params, args.trunc, variant, args.backend).value
    elif args.series in ("cor1", "cor2"):
        kind = "genocchi" if args.series == "cor1" else "euler"
        row["series"] = classical_series_rhs(float(args.x), args.trunc, kind, variant)
    _rows_out([row], args.format, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.suite not in harness.SUITES + ("all",):
        print(f"qloggamma verify: unknown suite {args.suite!r}; choose from {', '.join(harness.SUITES + ('all',))}", file=sys.stderr)
        return 2
    opts = harness.SuiteOptions(
        p=args.p, precision=args.precision, q=args.q, alpha=args.alpha, beta=args.beta,
        levels=args.levels, x=args.x, trunc=args.trunc, method=args.method, variant=args.variant,
    )
    report = harness.run_suite(args.suite, opts)
    text = harness.emit(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0 if report.ok else 1


COMMANDS = {"numbers": cmd_numbers, "integrate": cmd_integrate, "loggamma": cmd_loggamma, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ArithmeticError, ValueError) as exc:
        print(f"qloggamma {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
