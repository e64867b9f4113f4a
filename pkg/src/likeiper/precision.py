"""Arbitrary-precision kernel: constants, Bernoulli numbers, log-gamma,
and zeta via Euler-Maclaurin summation.

Every routine takes an explicit target precision in bits, runs with its own
guard digits inside an mpmath working-precision context, and returns a value
rounded to the requested precision.  All functions are pure, so results are
deterministic for fixed arguments and safe to cache across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp, mpc, mpf, workprec
import mpmath

from .errors import PoleError, PrecisionFailure

MIN_PREC_BITS = 64

# Exclusion radius around the zeta pole at s = 1; callers needing the s -> 1
# regime must go through the (s-1)*zeta(s) series route instead.
POLE_RADIUS_BITS = 16

_MAX_BERNOULLI_TERMS = 64


def _require_prec(prec_bits: int) -> None:
    if not isinstance(prec_bits, int) or prec_bits < MIN_PREC_BITS:
        raise ValueError(
            f"prec_bits must be an integer >= {MIN_PREC_BITS}, got {prec_bits!r}"
        )


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact rationals)
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli_fraction(index: int) -> Fraction:
    """Exact Bernoulli number B_index (B_1 = -1/2 convention), cached."""
    if index < 0:
        raise ValueError("Bernoulli index must be >= 0")
    cache = _BERNOULLI_CACHE
    while len(cache) <= index:
        n = len(cache)
        # sum_{k=0}^{n} C(n+1,k) B_k = 0  =>  solve for B_n
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * cache[k]
        cache.append(-acc / (n + 1))
    return cache[index]


def bernoulli(index: int) -> Fraction:
    """Exact B_index for even index >= 2 (the only ones the kernel needs)."""
    if not isinstance(index, int) or index < 2 or index % 2 != 0:
        raise ValueError(f"index must be an even integer >= 2, got {index!r}")
    return bernoulli_fraction(index)


# Per-precision mpf tables of B_{2j}/(2j)! (zeta tail) and
# B_{2j}/((2j)(2j-1)) (Stirling tail).
_ZETA_TAIL_COEFFS: dict[int, list] = {}
_STIRLING_TAIL_COEFFS: dict[int, list] = {}


def _zeta_tail_coeffs(wp: int) -> list:
    tbl = _ZETA_TAIL_COEFFS.setdefault(wp, [])
    with workprec(wp):
        while len(tbl) < _MAX_BERNOULLI_TERMS:
            j = len(tbl) + 1
            frac = bernoulli_fraction(2 * j) / math.factorial(2 * j)
            tbl.append(mpf(frac.numerator) / frac.denominator)
    return tbl


def _stirling_tail_coeffs(wp: int) -> list:
    tbl = _STIRLING_TAIL_COEFFS.setdefault(wp, [])
    with workprec(wp):
        while len(tbl) < _MAX_BERNOULLI_TERMS:
            j = len(tbl) + 1
            frac = bernoulli_fraction(2 * j) / ((2 * j) * (2 * j - 1))
            tbl.append(mpf(frac.numerator) / frac.denominator)
    return tbl


# ---------------------------------------------------------------------------
# Euler-Mascheroni constant (Brent-McMillan, basic variant)
# ---------------------------------------------------------------------------

def euler_gamma(prec_bits: int) -> mpf:
    """Euler-Mascheroni constant, accurate to at least prec_bits - 8 bits.

    Uses the Bessel-ratio scheme gamma = A(n)/B(n) - log n with
    A = sum H_k (n^k/k!)^2 and B = sum (n^k/k!)^2, whose error decays
    like exp(-4n).
    """
    _require_prec(prec_bits)
    wp = prec_bits + 32
    # exp(-4n) below 2^-(prec_bits+16)
    n = int((prec_bits + 16) * math.log(2) / 4) + 2
    with workprec(wp):
        term = mpf(1)
        harmonic = mpf(0)
        num = mpf(0)
        den = mpf(1)
        eps = mpf(2) ** (-(wp + 8))
        k = 1
        while True:
            r = mpf(n) / k
            term = term * r * r
            harmonic += mpf(1) / k
            num += term * harmonic
            den += term
            if k > n and term < eps * den:
                break
            if k > 32 * n:
                raise PrecisionFailure("euler_gamma series failed to converge")
            k += 1
        value = num / den - mpmath.log(n)
    with workprec(prec_bits):
        return +value


# ---------------------------------------------------------------------------
# Constants cache
# ---------------------------------------------------------------------------

class Constants:
    """Frequently used constants at a fixed precision.

    Each constant is recomputed at doubled precision on construction and the
    two results are required to agree to the requested precision.
    """

    def __init__(self, prec_bits: int):
        _require_prec(prec_bits)
        self.prec_bits = prec_bits
        self.gamma = self._stable(euler_gamma, prec_bits)
        self.pi = self._stable(self._pi, prec_bits)
        self.log2 = self._stable(self._log_of_int(2), prec_bits)
        self.logpi = self._stable(self._logpi, prec_bits)
        self.log2pi = self._stable(self._log2pi, prec_bits)

    @staticmethod
    def _pi(prec_bits: int) -> mpf:
        with workprec(prec_bits):
            return +mp.pi

    @staticmethod
    def _log_of_int(n: int):
        def compute(prec_bits: int) -> mpf:
            with workprec(prec_bits):
                return mpmath.log(mpf(n))

        return compute

    @staticmethod
    def _logpi(prec_bits: int) -> mpf:
        with workprec(prec_bits):
            return mpmath.log(mp.pi)

    @staticmethod
    def _log2pi(prec_bits: int) -> mpf:
        with workprec(prec_bits):
            return mpmath.log(2 * mp.pi)

    @staticmethod
    def _stable(compute, prec_bits: int) -> mpf:
        coarse = compute(prec_bits)
        fine = compute(2 * prec_bits)
        with workprec(2 * prec_bits):
            if abs(coarse - fine) > mpf(2) ** (-(prec_bits - 8)) * (1 + abs(fine)):
                raise PrecisionFailure("constant not stable under precision doubling")
        with workprec(prec_bits):
            return +fine

    def bernoulli(self, index: int) -> Fraction:
        return bernoulli(index)


_CONSTANTS_CACHE: dict[int, Constants] = {}


def constants(prec_bits: int) -> Constants:
    """Shared Constants instance per precision (idempotent to re-create)."""
    got = _CONSTANTS_CACHE.get(prec_bits)
    if got is None:
        got = Constants(prec_bits)
        _CONSTANTS_CACHE[prec_bits] = got
    return got


# ---------------------------------------------------------------------------
# log Gamma (argument raising + Stirling series)
# ---------------------------------------------------------------------------

def log_gamma(x, prec_bits: int) -> mpf:
    """log Gamma(x) for real x > 0, accurate to prec_bits - 16 bits."""
    _require_prec(prec_bits)
    xv = mpmath.mpmathify(x)
    if isinstance(xv, mpc):
        raise ValueError("log_gamma handles real arguments only")
    if xv <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    wp = prec_bits + 32
    # Smallest argument at which the Stirling tail reaches the target
    # within _MAX_BERNOULLI_TERMS terms (error floor ~ exp(-2*pi*y)).
    y_target = 7.5 * 2.0 ** ((prec_bits + 24) / 128.0) + 4.0
    coeffs = _stirling_tail_coeffs(wp)
    with workprec(wp):
        xw = +xv
        tol = mpf(2) ** (-(prec_bits + 24))
        for _ in range(8):
            shift = max(0, int(math.ceil(y_target - float(xw))))
            y = xw + shift
            tail = mpf(0)
            yinv2 = 1 / (y * y)
            power = 1 / y  # y^-(2j-1)
            converged = False
            for j in range(_MAX_BERNOULLI_TERMS):
                term = coeffs[j] * power
                tail += term
                if abs(term) < tol:
                    converged = True
                    break
                power *= yinv2
            if converged:
                stirling = (y - mpf(1) / 2) * mpmath.log(y) - y \
                    + mpmath.log(2 * mp.pi) / 2 + tail
                lowered = mpf(0)
                for i in range(shift):
                    lowered += mpmath.log(xw + i)
                value = stirling - lowered
                with workprec(prec_bits):
                    return +value
            y_target *= 2
    raise PrecisionFailure("log_gamma Stirling series failed to converge")


# ---------------------------------------------------------------------------
# Riemann zeta via Euler-Maclaurin
# ---------------------------------------------------------------------------

_LN_CACHE: dict[int, list] = {}


def _ln_table(limit: int, wp: int) -> list:
    """Cached table of log k for k <= limit at working precision wp."""
    tbl = _LN_CACHE.setdefault(wp, [mpf(0), mpf(0)])  # index 0 unused
    if len(tbl) <= limit:
        with workprec(wp):
            for k in range(len(tbl), limit + 1):
                tbl.append(mpmath.log(mpf(k)))
    return tbl


def _power_sum(s, lo: int, hi: int, lnk: list):
    """sum_{k=lo}^{hi-1} k^(-s), assuming the current context precision."""
    total = mpf(0)
    if lo <= 1 < hi:
        total += 1
        lo = 2
    for k in range(lo, hi):
        total += mpmath.exp(-s * lnk[k])
    return total


def _bernoulli_tail(s, K: int, lnk: list, tol, coeffs):
    """Correction terms of the Euler-Maclaurin formula at truncation K.

    Returns (K^{1-s}/(s-1) + K^{-s}/2 + Bernoulli sum, converged) where
    convergence means the first omitted term dropped below tol.
    """
    k_inv_s = mpmath.exp(-s * lnk[K])  # K^-s
    value = K * k_inv_s / (s - 1) + k_inv_s / 2
    rising = s  # (s)_{2j-1}
    power = k_inv_s / K  # K^{-s-2j+1}
    ksq = K * K
    for j in range(_MAX_BERNOULLI_TERMS):
        term = coeffs[j] * rising * power
        value += term
        if abs(term) < tol:
            return value, True
        rising = rising * (s + (2 * j + 1)) * (s + (2 * j + 2))
        power = power / ksq
    return value, False


def zeta_em(s, prec_bits: int):
    """zeta(s) by Euler-Maclaurin summation with a doubled-K verification.

    The truncation point K adapts until the first omitted Bernoulli term is
    below 2^-(prec_bits+8); the result is recomputed with K doubled and both
    evaluations must agree to the target precision.  Returns an mpf for real
    input, an mpc otherwise.

    Raises PoleError within 2^-16 of s = 1 and PrecisionFailure if the
    parameter escalation cap is reached.
    """
    _require_prec(prec_bits)
    sv = mpmath.mpmathify(s)
    is_complex = isinstance(sv, mpc) and sv.imag != 0
    if not is_complex:
        sv = sv.real if isinstance(sv, mpc) else sv
        im = mpf(0)
    else:
        im = abs(sv.imag)
    dist = abs(sv - 1)
    if dist <= mpf(2) ** (-POLE_RADIUS_BITS):
        raise PoleError(f"zeta_em evaluated within 2^-{POLE_RADIUS_BITS} of the pole at s = 1")

    guard = 32
    if dist < 1:  # the K^{1-s}/(s-1) term amplifies roundoff near the pole
        guard += -int(mpmath.floor(mpmath.log(dist, 2)))
    if im > 1:
        guard += int(1.5 * math.log2(float(im)))
    wp = prec_bits + guard
    coeffs = _zeta_tail_coeffs(wp)

    with workprec(wp):
        sw = +sv
        tol = mpf(2) ** (-(prec_bits + 8))
        K = max(16, prec_bits // 2, int(im) + 1)

        # grow K until the Bernoulli tail can converge at all (cheap probe)
        for _ in range(12):
            lnk = _ln_table(K, wp)
            tail, ok = _bernoulli_tail(sw, K, lnk, tol, coeffs)
            if ok:
                break
            K *= 2
        else:
            raise PrecisionFailure("zeta_em: Bernoulli tail did not converge")

        main = _power_sum(sw, 1, K, lnk)
        value = main + tail
        agree_tol = mpf(2) ** (-(prec_bits + 2))
        for _ in range(6):
            K2 = 2 * K
            lnk = _ln_table(K2, wp)
            tail2, ok = _bernoulli_tail(sw, K2, lnk, tol, coeffs)
            main = main + _power_sum(sw, K, K2, lnk)
            value2 = main + tail2
            if ok and abs(value - value2) <= agree_tol * (1 + abs(value2)):
                with workprec(prec_bits):
                    return +value2
            K = K2
            value = value2
    raise PrecisionFailure("zeta_em: doubled-K verification failed to stabilize")


# ---------------------------------------------------------------------------
# Alternating (eta) evaluation -- independent of the Euler-Maclaurin route,
# used as a cross-check oracle.
# ---------------------------------------------------------------------------

def alternating_zeta(s, prec_bits: int):
    """zeta(s) = eta(s)/(1 - 2^(1-s)) with eta summed by Chebyshev-weighted
    acceleration of the alternating series (Cohen-Villegas-Zagier scheme)."""
    _require_prec(prec_bits)
    sv = mpmath.mpmathify(s)
    im = abs(sv.imag) if isinstance(sv, mpc) else mpf(0)
    wp = prec_bits + 32 + int(2.3 * float(im))
    n = int(0.3933 * (wp + 16)) + 4
    with workprec(wp):
        sw = +sv
        lnk = _ln_table(n + 1, wp)
        d = (3 + mpmath.sqrt(mpf(8))) ** n
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        total = mpf(0) if im == 0 else mpc(0)
        for k in range(n):
            c = b - c
            total += c * mpmath.exp(-sw * lnk[k + 1])
            b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
        eta = total / d
        value = eta / (1 - mpmath.exp((1 - sw) * lnk[2]))
    with workprec(prec_bits):
        return +value
