"""Truncated Taylor-series arithmetic over arbitrary-precision coefficients.

A series is a finite coefficient vector in a named indeterminate, either
``z`` (the unit-disc variable of the coefficient expansion) or ``u`` (the
shifted zeta argument, u = s - 1 = z/(1-z)).  Binary operations require
matching variable tags and truncate to the shorter operand.  The binomial
pullback implements the exact coefficient map induced by u = z/(1-z):

    u^m = sum_{n>=m} C(n-1, m-1) z^n

so b_n = sum_{m<=min(n,M)} C(n-1, m-1) a_m needs no truncated data beyond
a_n whenever n <= M.  Binomial coefficients are exact integers; each output
index n is assembled at working precision max(prec, 2n + 64) to absorb the
~2^n growth of the C(n-1, m-1) against cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mpf, workprec
import mpmath

VAR_Z = "z"
VAR_U = "u"

_GUARD = 32


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients 0..order of a Taylor expansion in one variable."""

    variable: str
    coeffs: tuple
    prec_bits: int

    def __post_init__(self):
        if self.variable not in (VAR_Z, VAR_U):
            raise ValueError(f"unknown series variable {self.variable!r}")
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        return self.coeffs[k]

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__


def series(variable: str, coeffs, prec_bits: int) -> TruncatedSeries:
    """Build a series, converting coefficients to mpf at prec_bits."""
    with workprec(prec_bits):
        vals = tuple(+mpmath.mpmathify(c) for c in coeffs)
    return TruncatedSeries(variable, vals, prec_bits)


def _check_tags(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.variable != b.variable:
        raise ValueError(
            f"variable mismatch: {a.variable!r} vs {b.variable!r}"
        )


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_tags(a, b)
    prec = max(a.prec_bits, b.prec_bits)
    order = min(a.order, b.order)
    with workprec(prec + _GUARD):
        vals = tuple(a.coeffs[k] + b.coeffs[k] for k in range(order + 1))
    return TruncatedSeries(a.variable, vals, prec)


def series_scale(a: TruncatedSeries, scalar) -> TruncatedSeries:
    with workprec(a.prec_bits + _GUARD):
        s = mpmath.mpmathify(scalar)
        vals = tuple(c * s for c in a.coeffs)
    return TruncatedSeries(a.variable, vals, a.prec_bits)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    _check_tags(a, b)
    prec = max(a.prec_bits, b.prec_bits)
    order = min(a.order, b.order)
    with workprec(prec + _GUARD):
        vals = []
        for n in range(order + 1):
            acc = mpf(0)
            for k in range(n + 1):
                acc += a.coeffs[k] * b.coeffs[n - k]
            vals.append(acc)
    return TruncatedSeries(a.variable, tuple(vals), prec)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """log(a) for a series with unit constant term, via (log a)' = a'/a.

    The recurrence is g_n = a_n - (1/n) sum_{j=1}^{n-1} (n-j) a_j g_{n-j},
    giving a zero constant term.
    """
    if a.coeffs[0] != 1:
        raise ValueError("series_log requires constant term exactly 1; "
                         "factor the constant out first")
    with workprec(a.prec_bits + _GUARD):
        g = [mpf(0)]
        for n in range(1, a.order + 1):
            acc = mpf(0)
            for j in range(1, n):
                acc += (n - j) * a.coeffs[j] * g[n - j]
            g.append(a.coeffs[n] - acc / n)
    return TruncatedSeries(a.variable, tuple(g), a.prec_bits)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a series with zero constant term."""
    if a.coeffs[0] != 0:
        raise ValueError("series_exp requires constant term exactly 0")
    with workprec(a.prec_bits + _GUARD):
        b = [mpf(1)]
        for n in range(1, a.order + 1):
            acc = mpf(0)
            for j in range(1, n + 1):
                acc += j * a.coeffs[j] * b[n - j]
            b.append(acc / n)
    return TruncatedSeries(a.variable, tuple(b), a.prec_bits)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(.)) truncated at inner's order, by Horner over series.

    The inner series must have zero constant term; the result carries the
    inner variable tag.
    """
    if inner.coeffs[0] != 0:
        raise ValueError("series_compose requires inner constant term exactly 0")
    prec = max(outer.prec_bits, inner.prec_bits)
    order = inner.order
    with workprec(prec + _GUARD):
        acc = [mpf(0)] * (order + 1)
        acc[0] = outer.coeffs[outer.order]
        for i in range(outer.order - 1, -1, -1):
            # acc <- acc * inner + outer[i]
            new = []
            for n in range(order + 1):
                c = mpf(0)
                for k in range(n + 1):
                    c += acc[k] * inner.coeffs[n - k]
                new.append(c)
            new[0] += outer.coeffs[i]
            acc = new
    return TruncatedSeries(inner.variable, tuple(acc), prec)


def binomial_pullback(a: TruncatedSeries, n_terms: int) -> TruncatedSeries:
    """Exact binomial transform from u-coefficients to z-coefficients.

    b_n = sum_{m=1}^{min(n, M)} C(n-1, m-1) a_m for n = 1..n_terms, with
    b_0 = 0.  Binomial coefficients are exact integers converted only at
    the final product.
    """
    if a.variable != VAR_U:
        raise ValueError("binomial_pullback expects a series in u")
    if a.coeffs[0] != 0:
        raise ValueError("binomial_pullback requires zero constant term")
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    out = [mpf(0)]
    for n in range(1, n_terms + 1):
        wp = max(a.prec_bits, 2 * n + 64) + 16
        with workprec(wp):
            acc = mpf(0)
            binom = 1  # C(n-1, m-1), updated exactly
            top = min(n, a.order)
            for m in range(1, top + 1):
                acc += binom * a.coeffs[m]
                binom = binom * (n - m) // m
            out.append(acc)
    return TruncatedSeries(VAR_Z, tuple(out), a.prec_bits)
