"""Shared fixtures: the expensive coefficient tables are built once per
session, and acceptance results are echoed one line per criterion at the
end of the run."""

import time

import mpmath
import pytest
from mpmath import mp, mpf

from likeiper import li_coefficients

# (criterion number, description, passed, detail) recorded by the
# acceptance tests and printed by pytest_terminal_summary.
ACCEPTANCE_LOG = []


def record_criterion(number, description, passed, detail=""):
    ACCEPTANCE_LOG.append((number, description, bool(passed), detail))


@pytest.fixture(scope="session")
def timed_table512():
    """li_coefficients(31, 512) built fresh, with its wall-clock time."""
    t0 = time.perf_counter()
    table = li_coefficients(31, 512)
    elapsed = time.perf_counter() - t0
    return table, elapsed


@pytest.fixture(scope="session")
def table512(timed_table512):
    return timed_table512[0]


@pytest.fixture(scope="session")
def table60():
    """Default-precision table up to n = 60 (identity sums, positivity)."""
    return li_coefficients(60)




@pytest.fixture(scope="session")
def direct_tiny_oracle():
    """Independent tiny-part values: z-circle DFT over mpmath's own zeta.

    No Stieltjes constants, no binomial transform, no package kernels --
    log((z/(1-z)) zeta(1/(1-z))) is sampled directly on |z| = 1/5 and its
    Taylor coefficients are read off by inverse DFT.  Good to well below
    1e-15 for n <= 31 at these settings.
    """
    points = 512
    old = mp.dps
    try:
        mp.dps = 60
        r = mpf(1) / 5
        samples = []
        for m in range(points // 2 + 1):
            w = mpmath.mpc(mpmath.cospi(mpf(2 * m) / points),
                           mpmath.sinpi(mpf(2 * m) / points))
            z = r * w
            samples.append(mpmath.log((z / (1 - z)) * mpmath.zeta(1 / (1 - z))))

        def coefficient(n):
            acc = samples[0] + (samples[points // 2] if n % 2 == 0
                                else -samples[points // 2])
            for m in range(1, points // 2):
                t = (n * m) % points
                wre = mpmath.cospi(mpf(2 * t) / points)
                wim = -mpmath.sinpi(mpf(2 * t) / points)
                hm = samples[m]
                acc += 2 * (hm.real * wre - hm.imag * wim)
            return acc / (points * r ** n)

        values = {n: n * coefficient(n).real for n in range(1, 32)}
    finally:
        mp.dps = old
    return values


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(ACCEPTANCE_LOG):
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2}: {verdict}  {description}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
