"""Exact moments of Hurwitz class numbers in arithmetic progressions.

Library surface: class-number tables and moments, twisted Eisenstein main
terms, Frobenius trace statistics over small finite fields, bias averages
with closed-form signs, and verification suites cross-checking every closed
form against an independent brute-force route.
"""

from .arith import ExactRational
from .bias import (
    A1_chars,
    A1_closed,
    A2_chars,
    A2_closed,
    BiasResult,
    DensityReport,
    SignPrediction,
    bias_result,
    density_scan,
    empirical_A1,
    sign_rules,
)
from .eisenstein import (
    Config,
    DEFAULT_CONFIG,
    cusp_residual_0,
    main_term,
    residual_series,
)
from .frobenius import (
    S_direct,
    S_via_moments,
    TraceMassTable,
    trace_mass_table,
)
from .hurwitz import (
    cusp_coefficient,
    hurwitz_H,
    lambda_moment,
    moment_H,
    moment_via_reduction,
)
from .verify import SUITES, VerifySuiteReport, run_suites

__version__ = "0.1.0"

__all__ = [
    "A1_chars",
    "A1_closed",
    "A2_chars",
    "A2_closed",
    "BiasResult",
    "Config",
    "DEFAULT_CONFIG",
    "DensityReport",
    "ExactRational",
    "S_direct",
    "S_via_moments",
    "SUITES",
    "SignPrediction",
    "TraceMassTable",
    "VerifySuiteReport",
    "bias_result",
    "cusp_coefficient",
    "cusp_residual_0",
    "density_scan",
    "empirical_A1",
    "hurwitz_H",
    "lambda_moment",
    "main_term",
    "moment_H",
    "moment_via_reduction",
    "residual_series",
    "run_suites",
    "sign_rules",
    "trace_mass_table",
    "__version__",
]
