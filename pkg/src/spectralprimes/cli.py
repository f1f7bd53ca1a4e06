"""Command-line front end: ``spectralprimes <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from dataclasses import replace
from decimal import Decimal, InvalidOperation

import numpy as np

from . import __version__, selftest
from .correlation import FAMILIES, lambda_correlation, linear_pair_record, poly_twin_counts
from .ramanujan import csum, csum_divisor, csum_exponential, divisor_identity_sum, sqrt_identity_sum
from .series import EvalPoint, TruncationParams, f_product, f_series
from .sieve import DEFAULT_MEMORY_BUDGET, BudgetExceeded
from .spectrum import (
    CUBIC_TWIN,
    QUADRATIC_TWIN,
    QUARTIC_TWIN,
    SWEEP_CUTOFF,
    A_k,
    F_sigma,
    SpectrumSpec,
    dirichlet_density_estimate,
    hl_pair_constant,
    polynomial_pair_constant,
    quadratic_prime_constant,
    quartic_prime_constant,
    singular_series_goldbach,
)

EXIT_USAGE = 2
EXIT_BUDGET = 3

# flags that do not change the numbers and stay out of the header
_NOT_PROVENANCE = {"threads", "output", "func", "timing"}


def int_arg(text: str) -> int:
    """Integer flag that also accepts scientific notation such as 1e7."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def positive_int(text: str) -> int:
    v = int_arg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def precision_arg(text: str) -> int:
    v = int_arg(text)
    if not 1 <= v <= 17:
        raise argparse.ArgumentTypeError("precision must be in [1, 17]")
    return v


class Output:
    """Header plus rows in csv, tsv or jsonl."""

    def __init__(self, fmt: str, precision: int, provenance: dict):
        self.fmt = fmt
        self.precision = precision
        self.buf = io.StringIO()
        self.columns = None
        if fmt == "jsonl":
            self.buf.write(json.dumps({"provenance": provenance}, sort_keys=True) + "\n")
        else:
            flags = " ".join(f"{k}={v}" for k, v in provenance["flags"].items())
            self.buf.write(f"# spectralprimes {provenance['version']} {provenance['command']} {flags}\n")

    def _cell(self, v):
        if v is None:
            return ""
        if isinstance(v, (bool, np.bool_)):
            return str(bool(v)).lower()
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        if isinstance(v, (float, np.floating)):
            return f"{float(v):.{self.precision}g}"
        return str(v)

    def _json(self, v):
        if isinstance(v, (float, np.floating)):
            return float(f"{float(v):.{self.precision}g}")
        if isinstance(v, np.integer):
            return int(v)
        return v

    def header(self, *columns):
        self.columns = columns
        if self.fmt != "jsonl":
            sep = "," if self.fmt == "csv" else "\t"
            self.buf.write(sep.join(columns) + "\n")

    def row(self, *values):
        if self.fmt == "jsonl":
            rec = {c: self._json(v) for c, v in zip(self.columns, values)}
            self.buf.write(json.dumps(rec) + "\n")
        else:
            sep = "," if self.fmt == "csv" else "\t"
            self.buf.write(sep.join(self._cell(v) for v in values) + "\n")

    def getvalue(self) -> str:
        return self.buf.getvalue()


def _truncated_row(value):
    return float(value), getattr(value, "tail_bound", None), getattr(value, "cutoff", None)


def cmd_csum(args, out):
    fn = {"holder": csum, "divisor": csum_divisor, "exponential": csum_exponential}[args.method]
    out.header("q", "n", "c")
    for q in args.q:
        for n in args.n:
            out.row(q, n, fn(q, n))


def cmd_identities(args, out):
    out.header("identity", "n", "m", "value")
    for n in args.n:
        out.row("sqrt", n, None, sqrt_identity_sum(n))
        for m in args.m or ():
            out.row("divisor", n, m, divisor_identity_sum(n, m))


def cmd_series(args, out):
    trunc = TruncationParams(args.series_cutoff, args.prime_cutoff)
    out.header("n", "s", "series", "product", "tail_bound")
    for n in args.n:
        for s in args.s:
            point = EvalPoint(n, s)
            ser = f_series(point, trunc) if s >= 1 else None
            prod = f_product(point, trunc) if s > 1 and n >= 2 else None
            out.row(n, s, ser, None if prod is None else float(prod), getattr(prod, "tail_bound", None))


def cmd_sweep(args, out):
    P = args.prime_cutoff or SWEEP_CUTOFF
    count = int(round((args.sigma_max - args.sigma_min) / args.step)) + 1
    if count < 1:
        raise ValueError("empty sigma grid")
    out.header("sigma", "F", "tail_bound")
    for i in range(count):
        sigma = round(args.sigma_min + i * args.step, 12)
        value = F_sigma(SpectrumSpec(args.m, sigma, P))
        out.row(sigma, float(value), value.tail_bound)


def _constant(args):
    P = args.prime_cutoff
    name = args.name
    if name == "twin":
        return F_sigma(SpectrumSpec(2, 1.0, P or 10**7))
    if name == "A_k":
        return A_k(args.k, P or 10**6)
    if name == "hl":
        return hl_pair_constant(args.k, P or 10**6)
    if name == "goldbach":
        return singular_series_goldbach(args.N, P or 10**6)
    if name == "quadratic":
        return quadratic_prime_constant(P or 10**7)
    if name == "quartic":
        return quartic_prime_constant(P or 10**7)
    spec = {"pair-quadratic": QUADRATIC_TWIN, "pair-cubic": CUBIC_TWIN, "pair-quartic": QUARTIC_TWIN}[name]
    kw = {"exact_rho": args.exact_rho}
    if P:
        kw["prime_cutoff"] = P
    return polynomial_pair_constant(replace(spec, **kw))


def cmd_constants(args, out):
    value, bound, cutoff = _truncated_row(_constant(args))
    out.header("name", "value", "tail_bound", "cutoff")
    out.row(args.name, value, bound, cutoff)


def cmd_correlate(args, out):
    out.header("x", "shift", "sum", "ratio")
    for x in args.x:
        v = lambda_correlation(x, args.shift, threads=args.threads, memory_budget=args.memory_budget)
        out.row(x, args.shift, v, v / x)


def cmd_count_pairs(args, out):
    if args.family == "linear":
        shift = 2 if args.shift is None else args.shift
        if shift % 2:
            raise UsageError("linear pair counts need an even --shift")
        records = [linear_pair_record(x, shift, threads=args.threads) for x in args.x]
    else:
        if args.shift is not None:
            raise UsageError(f"--shift conflicts with --family {args.family}")
        records = poly_twin_counts(FAMILIES[args.family], args.x)
    out.header("x", "count", "ratio", "family", "runtime_ms")
    for r in records:
        out.row(r.x, r.count, r.ratio, r.family, r.runtime_ms if args.timing else None)


def cmd_density(args, out):
    P = args.prime_cutoff or 10**7
    out.header("a", "q", "s", "density")
    for s in args.s:
        out.row(args.a, args.q, s, dirichlet_density_estimate(args.a, args.q, s, P, args.complete_tail))


def cmd_selftest(args, out):
    out.header("check", "status", "detail")
    failed = 0
    for name, failure in selftest.run():
        out.row(name, "fail" if failure else "pass", failure)
        failed += failure is not None
    return 1 if failed else 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "tsv", "jsonl"), default="csv")
    common.add_argument("--precision", type=precision_arg, default=10)
    common.add_argument("--output", "-o", help="write here instead of standard output")
    common.add_argument("--threads", type=positive_int, default=None)
    common.add_argument("--memory-budget", type=positive_int, default=DEFAULT_MEMORY_BUDGET)

    parser = argparse.ArgumentParser(prog="spectralprimes", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("csum", parents=[common], help="Ramanujan sums c_q(n)")
    p.add_argument("--q", type=positive_int, nargs="+", required=True)
    p.add_argument("--n", type=positive_int, nargs="+", required=True)
    p.add_argument("--method", choices=("holder", "divisor", "exponential"), default="holder")
    p.set_defaults(func=cmd_csum)

    p = sub.add_parser("identities", parents=[common], help="divisor-sum identities of c_q")
    p.add_argument("--n", type=positive_int, nargs="+", required=True)
    p.add_argument("--m", type=positive_int, nargs="+")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("series", parents=[common], help="f(n, s) by series and Euler product")
    p.add_argument("--n", type=positive_int, nargs="+", required=True)
    p.add_argument("--s", "--sigma", dest="s", type=float, nargs="+", required=True)
    p.add_argument("--series-cutoff", type=positive_int, default=10**4)
    p.add_argument("--prime-cutoff", type=positive_int, default=10**6)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("spectrum-sweep", parents=[common], help="F(sigma) on a grid")
    p.add_argument("--m", type=positive_int, default=2)
    p.add_argument("--sigma-min", type=float, default=1.0)
    p.add_argument("--sigma-max", type=float, default=2.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--prime-cutoff", type=positive_int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("constants", parents=[common], help="density constants")
    p.add_argument(
        "--name",
        required=True,
        choices=("twin", "A_k", "hl", "goldbach", "quadratic", "quartic",
                 "pair-quadratic", "pair-cubic", "pair-quartic"),
    )
    p.add_argument("--k", type=positive_int, default=1)
    p.add_argument("--N", type=positive_int, default=3)
    p.add_argument("--prime-cutoff", type=positive_int, default=None)
    p.add_argument("--exact-rho", action="store_true", help="count polynomial roots mod p instead of the table")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("correlate", parents=[common], help="sum of Lambda(n) Lambda(n + m)")
    p.add_argument("--x", type=positive_int, nargs="+", required=True)
    p.add_argument("--shift", "--m", dest="shift", type=positive_int, default=2)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("count-pairs", parents=[common], help="prime pair counts with table ratios")
    p.add_argument("--family", choices=("linear", *FAMILIES), default="linear")
    p.add_argument("--shift", type=positive_int, default=None)
    p.add_argument("--x", type=positive_int, nargs="+", required=True)
    p.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
    p.set_defaults(func=cmd_count_pairs)

    p = sub.add_parser("density", parents=[common], help="Dirichlet density of primes a mod q")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--s", type=float, nargs="+", default=[1.05])
    p.add_argument("--prime-cutoff", type=positive_int, default=None)
    p.add_argument("--complete-tail", action="store_true")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("selftest", parents=[common], help="brute-force identity suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def _provenance(args) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_PROVENANCE and k != "command"}
    return {"version": __version__, "command": args.command, "flags": flags}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format, args.precision, _provenance(args))
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status = args.func(args, out) or 0
    except UsageError as exc:
        parser.error(str(exc))
    except BudgetExceeded as exc:
        print(f"spectralprimes: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ArithmeticError) as exc:
        print(f"spectralprimes: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for w in caught:
        print(f"spectralprimes: warning: {w.message}", file=sys.stderr)
    text = out.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
