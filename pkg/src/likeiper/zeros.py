"""Cross-check of lambda_n through the sum over nontrivial zeta zeros.

Zeros are data, never computed here: a table of positive ordinates t (the
zeros being 1/2 + i t) is read from a plain-text file, one decimal ordinate
per line, '#' lines ignored.  The coefficient sum

    lambda_n = sum_rho [1 - (1 - 1/rho)^n]
             = 2 sum_{t>0} Re[1 - (1 - 1/rho)^n]

is truncated at the table and reported together with a heuristic tail bound
n * integral_T^inf density(t) / (1/4 + t^2) dt with the usual zero density
log(t/2pi)/(2pi); the bound is reported, never silently added.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from mpmath import mpc, mpf, workprec
import mpmath

from .errors import ZerosFileError
from .precision import _require_prec


@dataclass(frozen=True)
class ZeroTable:
    """Strictly increasing positive zero ordinates read from a file."""

    ordinates: tuple
    source_path: str
    count: int


def load_zeros(path, limit: int | None = None, prec_bits: int = 128) -> ZeroTable:
    """Parse a zeros file into a validated, ascending ZeroTable.

    Raises ZerosFileError on a non-numeric line (with its line number), on
    non-ascending data, or if the first ordinate is not in (14, 15) -- a
    sanity gate that the file really starts at the first zero.
    """
    _require_prec(prec_bits)
    p = Path(path)
    ordinates = []
    with workprec(prec_bits):
        with open(p, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, 1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                try:
                    value = mpf(text)
                except (ValueError, TypeError):
                    raise ZerosFileError(
                        f"{p}:{lineno}: not a decimal ordinate: {text!r}"
                    ) from None
                if ordinates and value <= ordinates[-1]:
                    raise ZerosFileError(
                        f"{p}:{lineno}: ordinates must be strictly increasing"
                    )
                ordinates.append(value)
                if limit is not None and len(ordinates) >= limit:
                    break
    if ordinates and not (14 < ordinates[0] < 15):
        raise ZerosFileError(
            f"{p}: first ordinate {ordinates[0]} outside (14, 15); "
            "the table must start at the first zero"
        )
    return ZeroTable(tuple(ordinates), str(p), len(ordinates))


def _cpow_int(base, n: int):
    """base^n for integer n >= 0 by binary powering (branch-free)."""
    result = mpc(1)
    acc = base
    while n:
        if n & 1:
            result *= acc
        acc *= acc
        n >>= 1
    return result


def lambda_from_zeros(n: int, zeros: ZeroTable, prec_bits: int = 128):
    """Truncated zero-sum estimate of lambda_n plus a heuristic tail bound.

    Returns (estimate, tail_bound).  Each zero pair contributes
    2 Re[1 - (1 - 1/rho)^n] >= 0, so the estimate increases monotonically
    toward lambda_n as zeros are added.
    """
    _require_prec(prec_bits)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return mpf(0), mpf(0)
    if zeros.count == 0:
        raise ValueError("zero table is empty")
    wp = prec_bits + 32
    with workprec(wp):
        half = mpf(1) / 2
        total = mpf(0)
        for t in zeros.ordinates:
            rho = mpc(half, t)
            w = 1 - 1 / rho
            total += 2 * (1 - _cpow_int(w, n).real)
        largest = zeros.ordinates[-1]
        two_pi = 2 * mpmath.pi
        tail = n * (mpmath.log(largest / two_pi) + 1) / (two_pi * largest)
    with workprec(prec_bits):
        return +total, +tail
