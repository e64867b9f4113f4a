"""High-precision Li-Keiper coefficients of the Riemann xi function.

The coefficients lambda_n split into a smooth trend from the Gamma/pi
factors of xi and a tiny oscillating remainder from log((s-1) zeta(s));
this package computes both to arbitrary precision and reproduces the
bound-checking experiments built on them.
"""

from .errors import (
    ConsistencyError,
    PoleError,
    PrecisionFailure,
    ZerosFileError,
)
from .precision import (
    Constants,
    alternating_zeta,
    bernoulli,
    constants,
    euler_gamma,
    log_gamma,
    zeta_em,
)
from .series import (
    TruncatedSeries,
    VAR_U,
    VAR_Z,
    binomial_pullback,
    series,
    series_add,
    series_compose,
    series_exp,
    series_log,
    series_mul,
    series_scale,
)
from .li import (
    LiRow,
    LiTable,
    StieltjesSet,
    default_prec_bits,
    li_coefficients,
    stieltjes,
    tiny_coefficients,
    tiny_u_series,
    trend_coefficients,
)
from .zeros import ZeroTable, lambda_from_zeros, load_zeros
from .experiments import (
    AsymptoticRow,
    BoundCheck,
    BoundReport,
    TailFitResult,
    asymptotic_logxi,
    check_bounds,
    conjecture_table,
    convergence_diagnostics,
    envelope_data,
    identity_sum,
    tail_fit,
)
from .reference import reference_rows, zeros_fixture_path

__version__ = "0.1.0"

__all__ = [
    "AsymptoticRow",
    "BoundCheck",
    "BoundReport",
    "Constants",
    "ConsistencyError",
    "LiRow",
    "LiTable",
    "PoleError",
    "PrecisionFailure",
    "StieltjesSet",
    "TailFitResult",
    "TruncatedSeries",
    "VAR_U",
    "VAR_Z",
    "ZeroTable",
    "ZerosFileError",
    "alternating_zeta",
    "asymptotic_logxi",
    "bernoulli",
    "binomial_pullback",
    "check_bounds",
    "conjecture_table",
    "constants",
    "convergence_diagnostics",
    "default_prec_bits",
    "envelope_data",
    "euler_gamma",
    "identity_sum",
    "lambda_from_zeros",
    "li_coefficients",
    "load_zeros",
    "log_gamma",
    "reference_rows",
    "series",
    "series_add",
    "series_compose",
    "series_exp",
    "series_log",
    "series_mul",
    "series_scale",
    "stieltjes",
    "tail_fit",
    "tiny_coefficients",
    "tiny_u_series",
    "trend_coefficients",
    "zeros_fixture_path",
    "zeta_em",
]
