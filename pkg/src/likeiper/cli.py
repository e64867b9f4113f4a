"""Command-line front end.

Every subcommand emits a deterministic CSV table (default) or the same
records as JSON to stdout.  Values are printed with a fixed number of
decimal places (--digits), rounded half-to-even at the digit boundary, so
repeated runs produce identical bytes.

Exit codes: 0 success, 2 usage error, 3 computation failure (precision
escalation cap or internal cross-route disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import mpmath
from mpmath import mpf

from . import experiments, li, zeros
from .errors import ConsistencyError, PrecisionFailure, ZerosFileError
from .precision import MIN_PREC_BITS
from .reference import zeros_fixture_path


@dataclass(frozen=True)
class RunConfig:
    prec_bits: int | None
    n_max: int
    digits: int
    radius: Fraction
    dft_points: int | None
    out_format: str

    def __post_init__(self):
        if self.prec_bits is not None and self.prec_bits < MIN_PREC_BITS:
            raise ValueError(f"--prec-bits must be >= {MIN_PREC_BITS}")
        if self.n_max < 1:
            raise ValueError("--n-max must be >= 1")
        if self.digits < 1:
            raise ValueError("--digits must be >= 1")
        if not Fraction(0) < self.radius < Fraction(1, 2):
            raise ValueError("--radius must lie in (0, 1/2)")
        if self.dft_points is not None and self.dft_points < 2:
            raise ValueError("--dft-points must be >= 2")
        if self.out_format not in ("csv", "json"):
            raise ValueError("--out must be csv or json")


def format_fixed(value, digits: int) -> str:
    """Fixed-point decimal string with round-half-even at the last digit."""
    text = mpmath.nstr(value, digits + 25, strip_zeros=False)
    quantum = Decimal(1).scaleb(-digits)
    d = Decimal(text).quantize(quantum, rounding=ROUND_HALF_EVEN)
    if d == 0:
        d = abs(d)  # avoid the confusing "-0.000..." form
    return format(d, "f")


def _emit(columns, rows, config: RunConfig, meta: dict | None = None) -> None:
    """Write rows (dicts of already-formatted strings) as CSV or JSON."""
    out = sys.stdout
    if config.out_format == "csv":
        if meta:
            for key, val in meta.items():
                out.write(f"# {key}={val}\n")
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(row[c] for c in columns) + "\n")
    else:
        doc = {"rows": [dict(row) for row in rows]}
        if meta:
            doc["meta"] = {k: str(v) for k, v in meta.items()}
        out.write(json.dumps(doc, indent=2) + "\n")


def _fmt_row(pairs, digits: int) -> dict:
    row = {}
    for key, val in pairs:
        if isinstance(val, (mpf, float)):
            row[key] = format_fixed(val, digits)
        else:
            row[key] = "" if val is None else str(val)
    return row


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_lambda(args, config: RunConfig) -> None:
    table = li.li_coefficients(config.n_max, config.prec_bits,
                               radius=config.radius,
                               start_points=config.dft_points)
    rows = [
        _fmt_row([("n", r.n), ("trend", r.trend), ("tiny", r.tiny),
                  ("lambda", r.full)], config.digits)
        for r in table.rows
    ]
    _emit(["n", "trend", "tiny", "lambda"], rows, config)


def _cmd_tiny(args, config: RunConfig) -> None:
    prec = config.prec_bits or li.default_prec_bits(config.n_max)
    vals = li.tiny_coefficients(config.n_max, prec, radius=config.radius,
                                start_points=config.dft_points)
    rows = [_fmt_row([("n", n), ("tiny", vals[n - 1])], config.digits)
            for n in range(1, config.n_max + 1)]
    _emit(["n", "tiny"], rows, config)


def _cmd_trend(args, config: RunConfig) -> None:
    prec = config.prec_bits or li.default_prec_bits(config.n_max)
    vals = li.trend_coefficients(config.n_max, prec)
    rows = [_fmt_row([("n", n), ("trend", vals[n - 1])], config.digits)
            for n in range(1, config.n_max + 1)]
    _emit(["n", "trend"], rows, config)


def _cmd_table(args, config: RunConfig) -> None:
    data = experiments.conjecture_table(config.n_max, config.prec_bits)
    rows = []
    for n, ratio, tiny, two_log_n in data:
        rows.append(_fmt_row([("n", n), ("ratio", ratio), ("tiny", tiny),
                              ("two_log_n", two_log_n)], config.digits))
    _emit(["n", "ratio", "tiny", "two_log_n"], rows, config)


def _cmd_bounds(args, config: RunConfig) -> None:
    a_values = [v.strip() for v in args.a_values.split(",") if v.strip()]
    report = experiments.check_bounds(args.source, a_values=a_values,
                                      n_max=config.n_max,
                                      prec_bits=config.prec_bits)
    rows = [
        _fmt_row([("family", c.family), ("n", c.n), ("tiny", c.tiny),
                  ("bound", c.bound), ("margin", c.margin),
                  ("satisfied", c.satisfied)], config.digits)
        for c in report.checks
    ]
    _emit(["family", "n", "tiny", "bound", "margin", "satisfied"], rows,
          config, meta={"source": report.source})


def _cmd_identity(args, config: RunConfig) -> None:
    value = experiments.identity_sum(args.z, config.n_max, config.prec_bits)
    rows = [_fmt_row([("z", args.z), ("n_terms", config.n_max),
                      ("partial_sum", value)], config.digits)]
    _emit(["z", "n_terms", "partial_sum"], rows, config)


def _cmd_tailfit(args, config: RunConfig) -> None:
    result = experiments.tail_fit(args.model, args.constants, config.prec_bits)
    rows = [_fmt_row([
        ("model", result.model),
        ("constants", result.constants_source),
        ("partial_sum", result.partial_sum),
        ("tail_trend", result.tail_trend),
        ("tail_model", result.tail_model),
        ("a", result.a),
        ("target", result.target),
        ("printed_a", result.printed_a),
        ("flag", result.flag or ""),
    ], config.digits)]
    _emit(["model", "constants", "partial_sum", "tail_trend", "tail_model",
           "a", "target", "printed_a", "flag"], rows, config)


def _cmd_asymptotic(args, config: RunConfig) -> None:
    data = experiments.asymptotic_logxi(args.n_min, config.n_max,
                                        config.prec_bits or 128)
    rows = [
        _fmt_row([("N", r.n), ("exact", r.exact),
                  ("approx_verbatim", r.approx_verbatim),
                  ("approx_corrected", r.approx_corrected),
                  ("err_verbatim", r.err_verbatim),
                  ("err_corrected", r.err_corrected)], config.digits)
        for r in data
    ]
    _emit(["N", "exact", "approx_verbatim", "approx_corrected",
           "err_verbatim", "err_corrected"], rows, config)


def _cmd_envelope(args, config: RunConfig) -> None:
    data, crossing = experiments.envelope_data(
        config.n_max, a_log=args.a_log, a_sqrt=args.a_sqrt,
        include_main=args.with_main, half_c=not args.full_c,
        prec_bits=config.prec_bits or 128)
    rows = []
    for n, base, sq_lo, sq_hi, lg_lo, lg_hi in data:
        rows.append(_fmt_row([
            ("n", n), ("trend_line", base),
            ("sqrt_lower", sq_lo), ("sqrt_upper", sq_hi),
            ("log_lower", lg_lo), ("log_upper", lg_hi)], config.digits))
    _emit(["n", "trend_line", "sqrt_lower", "sqrt_upper", "log_lower",
           "log_upper"], rows, config,
          meta={"crossing": format_fixed(crossing, config.digits)})


def _cmd_zeros_check(args, config: RunConfig) -> None:
    path = args.zeros_file or zeros_fixture_path()
    table = zeros.load_zeros(path, limit=args.zeros_limit)
    prec = config.prec_bits or 128
    li_table = li.li_coefficients(config.n_max, config.prec_bits)
    rows = []
    for n in range(1, config.n_max + 1):
        estimate, tail = zeros.lambda_from_zeros(n, table, prec)
        reference = li_table.row(n).full
        gap = abs(estimate - reference)
        rows.append(_fmt_row([
            ("n", n), ("estimate", estimate), ("tail_bound", tail),
            ("lambda", reference), ("gap", gap),
            ("within_3x_tail", bool(gap <= 3 * tail))], config.digits))
    _emit(["n", "estimate", "tail_bound", "lambda", "gap", "within_3x_tail"],
          rows, config,
          meta={"zeros_file": path, "zeros_used": table.count})


def _cmd_diagnostics(args, config: RunConfig) -> None:
    data = experiments.convergence_diagnostics(
        args.n, sweep=args.sweep, steps=args.steps,
        prec_bits=config.prec_bits)
    rows = [_fmt_row([("parameter", p), ("estimate", est)], config.digits)
            for p, est in data]
    _emit(["parameter", "estimate"], rows, config,
          meta={"sweep": args.sweep, "n": args.n})


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec-bits", type=int, default=None,
                        help="working precision in bits (default: "
                             "max(256, 2*n_max + 64))")
    common.add_argument("--n-max", type=int, default=31,
                        help="largest coefficient index (default 31)")
    common.add_argument("--digits", type=int, default=12,
                        help="decimal places in the output (default 12, "
                             "round half to even)")
    common.add_argument("--radius", type=str, default="0.25",
                        help="circle radius for the Taylor extraction "
                             "(default 0.25, must be in (0, 1/2))")
    common.add_argument("--dft-points", type=int, default=None,
                        help="starting DFT point count (default 8*n, "
                             "rounded up to a power of two)")
    common.add_argument("--out", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")

    parser = argparse.ArgumentParser(
        prog="likeiper",
        parents=[common],
        description="Li-Keiper coefficients of the Riemann xi function: "
                    "trend/tiny decomposition, bound checks and numerical "
                    "experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lambda", parents=[common],
                   help="n, trend, tiny and full lambda_n")
    sub.add_parser("tiny", parents=[common], help="tiny part lambda_tiny(n)")
    sub.add_parser("trend", parents=[common], help="trend part lambda_trend(n)")
    sub.add_parser("table", parents=[common],
                   help="conjecture table: ratio, tiny, 2 log n")

    p = sub.add_parser("bounds", parents=[common],
                       help="bound verdicts for the tiny part")
    p.add_argument("--source", choices=("computed", "reference"),
                   default="computed")
    p.add_argument("--a-values", type=str, default="2,5",
                   help="comma-separated log-bound amplitudes (default 2,5)")

    p = sub.add_parser("identity", parents=[common],
                       help="partial sums of lambda_n z^n / n")
    p.add_argument("--z", type=str, default="0.5")

    p = sub.add_parser("tailfit", parents=[common],
                       help="solve the tail amplitude a")
    p.add_argument("--model", choices=("log", "sqrtlog"), default="sqrtlog")
    p.add_argument("--constants", choices=("paper", "recomputed"),
                   default="recomputed")

    p = sub.add_parser("asymptotic", parents=[common],
                       help="log xi(N) vs its approximation")
    p.add_argument("--n-min", type=int, default=10)

    p = sub.add_parser("envelope", parents=[common],
                       help="trend envelope curves and crossing")
    p.add_argument("--a-log", type=str, default="1.596")
    p.add_argument("--a-sqrt", type=str, default="0.386")
    p.add_argument("--with-main", action="store_true",
                   help="add the (n/2) log n main term to every column")
    p.add_argument("--full-c", action="store_true",
                   help="use c = gamma - log 2pi - 1 without the 1/2 factor")

    p = sub.add_parser("zeros-check", parents=[common],
                       help="lambda_n from a zeros table")
    p.add_argument("--zeros-file", type=str, default=None,
                   help="path of the ordinates file (default: bundled "
                        "100-zero sample)")
    p.add_argument("--zeros-limit", type=int, default=None)

    p = sub.add_parser("diagnostics", parents=[common],
                       help="convergence sweeps of the tiny part")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--sweep", choices=("dft_points", "precision"),
                   default="dft_points")
    p.add_argument("--steps", type=int, default=5)

    return parser


_HANDLERS = {
    "lambda": _cmd_lambda,
    "tiny": _cmd_tiny,
    "trend": _cmd_trend,
    "table": _cmd_table,
    "bounds": _cmd_bounds,
    "identity": _cmd_identity,
    "tailfit": _cmd_tailfit,
    "asymptotic": _cmd_asymptotic,
    "envelope": _cmd_envelope,
    "zeros-check": _cmd_zeros_check,
    "diagnostics": _cmd_diagnostics,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            prec_bits=args.prec_bits,
            n_max=args.n_max,
            digits=args.digits,
            radius=Fraction(args.radius),
            dft_points=args.dft_points,
            out_format=args.out,
        )
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(str(exc))  # exits with code 2
    try:
        _HANDLERS[args.command](args, config)
    except (ValueError, ZerosFileError) as exc:
        parser.error(str(exc))
    except (PrecisionFailure, ConsistencyError) as exc:
        print(f"likeiper: computation failed: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
