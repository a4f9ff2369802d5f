"""Zeros of the hypergeometric family F_n and their lemniscate limit.

The package builds the degree-n polynomials with exact rational
coefficients, computes and certifies all their complex zeros at configurable
precision, explores the steepest-path integral representations behind the
asymptotics, and measures how the zeros crowd onto the section of
|z(1-z)^2| = 4/27 with Re(z) > 1/3 as n grows.
"""

from .exact import (
    ExactPolynomial,
    GammaRatioExact,
    JacobiCorrespondence,
    build_polynomial,
    ek_scaled_coefficients,
    gamma_ratio_exact,
    jacobi_correspondence,
    pochhammer,
)
from .numerics import (
    PrecisionConfig,
    PrecisionExhaustedError,
    eval_horner,
    f_eval,
    fprime_factor,
    principal_sqrt,
    structural_points,
    to_mpc,
    to_mpf,
)
from .rootfinder import CertificationError, RootSet, certify, find_roots, initial_points
from .geometry import (
    LemniscatePoint,
    LevelField,
    basin_classify,
    divides_and_level_field,
    lemniscate_branch,
    lemniscate_residual,
    parabola_boundary,
    saddle_comparison,
)
from .paths import (
    AsymptoticTerm,
    PathError,
    SteepestPath,
    halfplane_bound_check,
    integral_full,
    saddle_asymptotic,
    segment_integral,
    tail_integral,
    trace_path,
    zero_equation_residual,
)
from .analysis import (
    LemmaReport,
    LemniscateReport,
    convergence_report,
    figure_level_curves,
    figure_zero_plot,
    verify_lemmas,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticTerm",
    "CertificationError",
    "ExactPolynomial",
    "GammaRatioExact",
    "JacobiCorrespondence",
    "LemmaReport",
    "LemniscatePoint",
    "LemniscateReport",
    "LevelField",
    "PathError",
    "PrecisionConfig",
    "PrecisionExhaustedError",
    "RootSet",
    "SteepestPath",
    "basin_classify",
    "build_polynomial",
    "certify",
    "convergence_report",
    "divides_and_level_field",
    "ek_scaled_coefficients",
    "eval_horner",
    "f_eval",
    "figure_level_curves",
    "figure_zero_plot",
    "find_roots",
    "fprime_factor",
    "gamma_ratio_exact",
    "initial_points",
    "integral_full",
    "jacobi_correspondence",
    "lemniscate_branch",
    "lemniscate_residual",
    "parabola_boundary",
    "pochhammer",
    "principal_sqrt",
    "saddle_asymptotic",
    "saddle_comparison",
    "segment_integral",
    "structural_points",
    "tail_integral",
    "to_mpc",
    "to_mpf",
    "trace_path",
    "verify_lemmas",
    "zero_equation_residual",
]
