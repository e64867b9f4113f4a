"""Li-Keiper coefficient pipeline.

The logarithm of the completed zeta function at s = 1/(1-z) splits into a
smooth part from the s(s-1)/2, pi^(-s/2) and Gamma(s/2) factors (the trend)
and the remainder log((s-1) zeta(s)) (the tiny part).  With u = s - 1:

    trend_u(u) = log(1+u) - (log pi / 2) u + [log Gamma(1/2 + u/2) - log Gamma(1/2)]
    tiny_u(u)  = log(u zeta(1+u))

and lambda_n = n * [z^n] of the pullback under u = z/(1-z).

The tiny Taylor data comes from the Stieltjes constants, extracted as
coefficients of the entire function u*zeta(1+u) by an inverse DFT over a
circle around u = 0.  The digamma-shift expansion supplies the trend:

    log Gamma(1/2 + w) - log Gamma(1/2)
        = -(gamma + 2 log 2) w + sum_{k>=2} (-1)^k (2^k - 1) zeta(k) w^k / k

with w = u/2 = z/(2(1-z)).

Every coefficient is produced by two independent routes (binomial pullback
vs. series composition for the tiny part; summed-series single pass vs.
trend+tiny for the full value) and the routes must agree to tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mpf, workprec
import mpmath

from .errors import ConsistencyError, PrecisionFailure
from .precision import constants, euler_gamma, zeta_em, _require_prec
from .series import (
    VAR_U,
    VAR_Z,
    TruncatedSeries,
    binomial_pullback,
    series_add,
    series_compose,
    series_log,
    series_scale,
)

DEFAULT_RADIUS = Fraction(1, 4)

_MAX_POINT_DOUBLINGS = 5


@dataclass(frozen=True)
class StieltjesSet:
    """Stieltjes constants gamma_0..gamma_{count-1} with extraction metadata.

    Values carry internal guard precision beyond prec_bits; prec_bits records
    the precision the set was requested (and validated) at.
    """

    values: tuple
    circle_radius: Fraction
    dft_points: int
    prec_bits: int

    @property
    def count(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class LiRow:
    n: int
    trend: mpf
    tiny: mpf
    full: mpf
    prec_bits: int


@dataclass(frozen=True)
class LiTable:
    rows: tuple
    prec_bits: int
    circle_radius: Fraction
    dft_points: int

    def row(self, n: int) -> LiRow:
        return self.rows[n - 1]

    def __len__(self) -> int:
        return len(self.rows)


def default_prec_bits(n_max: int) -> int:
    """Default working precision for a table up to index n_max."""
    return max(256, 2 * n_max + 64)


# ---------------------------------------------------------------------------
# Stieltjes extraction
# ---------------------------------------------------------------------------

# h values keyed by (wp, radius, exact angle fraction); shared across calls.
_CIRCLE_CACHE: dict = {}


def _series_guard_bits(count: int, radius: Fraction) -> int:
    """Bits lost recovering gamma_k = +-k! c_{k+1} from circle data of size ~1."""
    fact_bits = math.lgamma(count) / math.log(2)  # log2((count-1)!)
    radius_bits = count * math.log2(float(1 / radius))
    return int(fact_bits + radius_bits) + 1


def _h_on_circle(j: int, points: int, radius: Fraction, wp: int):
    """h(u) = u * zeta(1 + u) at u = radius * exp(2 pi i j / points)."""
    key = (wp, radius, Fraction(j, points))
    got = _CIRCLE_CACHE.get(key)
    if got is not None:
        return got
    with workprec(wp):
        r = mpf(radius.numerator) / radius.denominator
        if j == 0:
            u = r
        elif 2 * j == points:
            u = -r
        else:
            angle = Fraction(2 * j, points)
            u = r * mpmath.mpc(
                mpmath.cospi(mpf(angle.numerator) / angle.denominator),
                mpmath.sinpi(mpf(angle.numerator) / angle.denominator),
            )
        value = u * zeta_em(1 + u, wp)
    _CIRCLE_CACHE[key] = value
    return value


def _taylor_from_circle(count: int, points: int, radius: Fraction, wp: int) -> list:
    """Taylor coefficients c_0..c_count of h by inverse DFT over the circle.

    Uses the conjugate symmetry h(conj u) = conj h(u), so only points in the
    closed upper half circle are evaluated.
    """
    half = points // 2
    with workprec(wp):
        hs = [_h_on_circle(m, points, radius, wp) for m in range(half + 1)]
        # twiddles exp(-2 pi i t / points) as (re, im) pairs
        tw = []
        for t in range(points):
            frac = Fraction(2 * t, points)
            x = mpf(frac.numerator) / frac.denominator
            tw.append((mpmath.cospi(x), -mpmath.sinpi(x)))
        r = mpf(radius.numerator) / radius.denominator
        rpow = mpf(1)
        coeffs = []
        h0 = hs[0]
        hhalf = hs[half]
        for j in range(count + 1):
            acc = h0 + (hhalf if j % 2 == 0 else -hhalf)
            for m in range(1, half):
                wre, wim = tw[(j * m) % points]
                hm = hs[m]
                acc += 2 * (hm.real * wre - hm.imag * wim)
            coeffs.append(acc / (points * rpow))
            rpow *= r
    return coeffs


def _gammas_from_taylor(coeffs: list, wp: int) -> list:
    """gamma_k = (-1)^k k! c_{k+1}."""
    with workprec(wp):
        out = []
        fact = 1
        for k in range(len(coeffs) - 1):
            val = fact * coeffs[k + 1]
            out.append(val if k % 2 == 0 else -val)
            fact *= k + 1
    return out


def _min_points(count: int) -> int:
    m = 1
    while m < 8 * count:
        m *= 2
    return m


_STIELTJES_CACHE: dict = {}


def stieltjes(count: int, prec_bits: int, radius: Fraction = DEFAULT_RADIUS,
              start_points: int | None = None) -> StieltjesSet:
    """Stieltjes constants gamma_0..gamma_{count-1} by Cauchy-circle DFT.

    The point count starts at the smallest power of two >= 8*count (or at
    start_points, rounded up to that minimum) and doubles until every
    retained gamma_k moves by less than
    2^-(prec_bits-16); the working precision absorbs the k! 4^k loss of
    recovering gamma_k from circle samples of size ~1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    _require_prec(prec_bits)
    if not isinstance(radius, Fraction):
        radius = Fraction(radius).limit_denominator(1 << 30)
    if not 0 < radius < Fraction(1, 2):
        raise ValueError("circle radius must lie in (0, 1/2)")
    key = (count, prec_bits, radius, start_points)
    got = _STIELTJES_CACHE.get(key)
    if got is not None:
        return got

    wp = prec_bits + _series_guard_bits(count, radius) + 48
    points = _min_points(count)
    if start_points is not None:
        while points < start_points:
            points *= 2
    threshold_bits = prec_bits - 16
    gammas = _gammas_from_taylor(
        _taylor_from_circle(count, points, radius, wp), wp
    )
    for _ in range(_MAX_POINT_DOUBLINGS):
        points2 = 2 * points
        coeffs2 = _taylor_from_circle(count, points2, radius, wp)
        gammas2 = _gammas_from_taylor(coeffs2, wp)
        with workprec(wp):
            stable = all(
                abs(a - b) < mpf(2) ** (-threshold_bits)
                for a, b in zip(gammas, gammas2)
            )
            norm_ok = abs(coeffs2[0] - 1) < mpf(2) ** (-threshold_bits)
        if stable and norm_ok:
            result = StieltjesSet(tuple(gammas2), radius, points2, prec_bits)
            _validate_gamma0(result)
            _STIELTJES_CACHE[key] = result
            return result
        points, gammas = points2, gammas2
    raise PrecisionFailure("stieltjes extraction did not stabilize under point doubling")


def _validate_gamma0(ss: StieltjesSet) -> None:
    with workprec(ss.prec_bits + 16):
        ref = euler_gamma(ss.prec_bits)
        if abs(ss.values[0] - ref) > mpf(2) ** (-(ss.prec_bits - 16)):
            raise ConsistencyError("gamma_0 from the circle disagrees with euler_gamma")


# ---------------------------------------------------------------------------
# Tiny part
# ---------------------------------------------------------------------------

def tiny_u_series(count: int, prec_bits: int, radius: Fraction = DEFAULT_RADIUS,
                  start_points: int | None = None) -> TruncatedSeries:
    """log((s-1) zeta(s)) as a series in u = s - 1, zero constant term.

    Built as series_log of 1 + sum_k (-1)^k gamma_k u^{k+1} / k!.  The
    returned coefficients carry guard precision 2*count + 64 beyond
    prec_bits for the downstream binomial pullback.
    """
    ss = stieltjes(count, prec_bits, radius, start_points)
    sprec = prec_bits + 2 * count + 64
    with workprec(sprec + 32):
        coeffs = [mpf(1)]
        fact = 1
        for k, g in enumerate(ss.values):
            val = g / fact
            coeffs.append(val if k % 2 == 0 else -val)
            fact *= k + 1
    h_series = TruncatedSeries(VAR_U, tuple(coeffs), sprec)
    return series_log(h_series)


def _route_tolerance(n: int, wp: int):
    # both routes see ~2^n term growth over working precision wp
    return mpf(2) ** (n + 64 - wp)


def _pullback_with_check(u_series: TruncatedSeries, n_terms: int) -> TruncatedSeries:
    """Binomial pullback cross-checked against the composition route."""
    pulled = binomial_pullback(u_series, n_terms)
    u_of_z = TruncatedSeries(
        VAR_Z, tuple(mpf(0 if k == 0 else 1) for k in range(n_terms + 1)),
        u_series.prec_bits,
    )
    composed = series_compose(u_series, u_of_z)
    with workprec(u_series.prec_bits + 32):
        for n in range(1, n_terms + 1):
            wp_n = max(u_series.prec_bits, 2 * n + 64)
            tol = _route_tolerance(n, wp_n) * (1 + abs(pulled.coeffs[n]))
            if abs(pulled.coeffs[n] - composed.coeffs[n]) > tol:
                raise ConsistencyError(
                    f"pullback and composition routes disagree at index {n}"
                )
    return pulled


def tiny_coefficients(n_max: int, prec_bits: int | None = None,
                      radius: Fraction = DEFAULT_RADIUS,
                      start_points: int | None = None) -> tuple:
    """lambda_tiny(1..n_max): n times the z^n coefficient of the tiny part."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max == 0:
        return ()
    prec = prec_bits if prec_bits is not None else default_prec_bits(n_max)
    g = tiny_u_series(n_max, prec, radius, start_points)
    pulled = _pullback_with_check(g, n_max)
    with workprec(g.prec_bits):
        return tuple(n * pulled.coeffs[n] for n in range(1, n_max + 1))


# ---------------------------------------------------------------------------
# Trend part
# ---------------------------------------------------------------------------

def _digamma_shift_terms(n_max: int, wp: int) -> list:
    """Coefficients t_k of log Gamma(1/2 + w) - log Gamma(1/2) in w."""
    cs = constants(wp)
    with workprec(wp):
        terms = [mpf(0), -(cs.gamma + 2 * cs.log2)]
        for k in range(2, n_max + 1):
            zk = zeta_em(k, wp)
            val = (mpf(2) ** k - 1) * zk / k
            terms.append(val if k % 2 == 0 else -val)
    return terms


def trend_coefficients(n_max: int, prec_bits: int | None = None) -> tuple:
    """lambda_trend(1..n_max) from the log(1/(1-z)), pi and Gamma factors.

    Composes the digamma-shift expansion with w(z) = z/(2(1-z)); the
    constant term vanishes by construction.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max == 0:
        return ()
    prec = prec_bits if prec_bits is not None else default_prec_bits(n_max)
    sprec = prec + 2 * n_max + 64
    wp = sprec + 32
    terms = _digamma_shift_terms(n_max, wp)
    cs = constants(wp)
    with workprec(wp):
        shift = TruncatedSeries(VAR_U, tuple(terms), sprec)
        half = mpf(1) / 2
        w_of_z = TruncatedSeries(
            VAR_Z, tuple(mpf(0) if k == 0 else half for k in range(n_max + 1)), sprec
        )
        composed = series_compose(shift, w_of_z)
        log_inv = TruncatedSeries(
            VAR_Z,
            tuple(mpf(0) if k == 0 else mpf(1) / k for k in range(n_max + 1)),
            sprec,
        )
        total = series_add(
            series_add(log_inv, series_scale(w_of_z, -cs.logpi)), composed
        )
        return tuple(n * total.coeffs[n] for n in range(1, n_max + 1))


def trend_u_series(n_max: int, prec_bits: int) -> TruncatedSeries:
    """The trend part as a series in u: log(1+u) - (log pi/2) u + shift(u/2)."""
    sprec = prec_bits + 2 * n_max + 64
    wp = sprec + 32
    terms = _digamma_shift_terms(n_max, wp)
    cs = constants(wp)
    with workprec(wp):
        coeffs = [mpf(0)]
        pow2 = mpf(1)
        for k in range(1, n_max + 1):
            pow2 /= 2
            log_term = mpf(1) / k if k % 2 == 1 else mpf(-1) / k
            val = log_term + terms[k] * pow2
            if k == 1:
                val -= cs.logpi / 2
            coeffs.append(val)
    return TruncatedSeries(VAR_U, tuple(coeffs), sprec)


# ---------------------------------------------------------------------------
# Assembled table
# ---------------------------------------------------------------------------

def li_coefficients(n_max: int, prec_bits: int | None = None,
                    radius: Fraction = DEFAULT_RADIUS,
                    start_points: int | None = None) -> LiTable:
    """Table of (n, trend, tiny, full) for n = 1..n_max.

    The full value is produced by an independent single pass: the trend and
    tiny u-series are summed before coefficient extraction, so it must agree
    with trend + tiny computed separately; disagreement raises
    ConsistencyError.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    prec = prec_bits if prec_bits is not None else default_prec_bits(max(n_max, 1))
    if n_max == 0:
        return LiTable((), prec, radius, 0)
    tiny = tiny_coefficients(n_max, prec, radius, start_points)
    trend = trend_coefficients(n_max, prec)
    g = tiny_u_series(n_max, prec, radius, start_points)
    t_u = trend_u_series(n_max, prec)
    full_series = _pullback_with_check(series_add(t_u, g), n_max)
    ss = stieltjes(n_max, prec, radius, start_points)
    rows = []
    with workprec(max(g.prec_bits, prec) + 32):
        for n in range(1, n_max + 1):
            full = n * full_series.coeffs[n]
            wp_n = max(g.prec_bits, 2 * n + 64)
            tol = _route_tolerance(n, wp_n) * n * (1 + abs(full))
            if abs(full - (trend[n - 1] + tiny[n - 1])) > tol:
                raise ConsistencyError(
                    f"single-pass lambda_{n} disagrees with trend + tiny"
                )
            rows.append(LiRow(n, trend[n - 1], tiny[n - 1], full, prec))
    return LiTable(tuple(rows), prec, radius, ss.dft_points)


# ---------------------------------------------------------------------------
# Convergence sweeps (used by the diagnostics experiment)
# ---------------------------------------------------------------------------

def tiny_at_points(n: int, prec_bits: int, points: int,
                   radius: Fraction = DEFAULT_RADIUS) -> mpf:
    """lambda_tiny(n) from a single DFT at a forced point count (no
    stability loop); diagnostic use only."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if points < 2 * n or points % 2 != 0:
        raise ValueError("points must be even and at least 2n")
    wp = prec_bits + _series_guard_bits(n, radius) + 48
    coeffs = _taylor_from_circle(n, points, radius, wp)
    gammas = _gammas_from_taylor(coeffs, wp)
    sprec = prec_bits + 2 * n + 64
    with workprec(sprec + 32):
        cs = [mpf(1)]
        fact = 1
        for k, gv in enumerate(gammas):
            val = gv / fact
            cs.append(val if k % 2 == 0 else -val)
            fact *= k + 1
    h_series = TruncatedSeries(VAR_U, tuple(cs), sprec)
    g = series_log(h_series)
    pulled = binomial_pullback(g, n)
    with workprec(sprec):
        return n * pulled.coeffs[n]
