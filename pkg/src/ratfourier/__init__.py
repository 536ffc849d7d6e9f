"""Rational approximation of Fourier transforms by decay-weighted cosine sampling.

Pipeline: sample ``f(n h)`` -> expansion coefficients -> partial-fraction
evaluation ``sum_m (alpha + eta nu + beta nu^2 + theta nu^3)/(kappa + lambda nu^2 + nu^4)``
-> optionally collapsed to a single ratio ``P(nu)/Q(nu)``.
"""
from .approx import (
    PartialFractionModel,
    cosine_expansion,
    cosine_sinc,
    eval_baseline,
    eval_partial_fractions,
    reconstruct_time_domain,
    viete_product,
)
from .coeffs import (
    BaselineCoefficients,
    TermCoefficients,
    compute_baseline_coeffs,
    compute_coeffs,
    compute_even_coeffs,
    compute_mu,
    compute_odd_coeffs,
    export_coeffs,
    load_coeffs,
)
from .fnmodel import (
    BuiltinFunction,
    FunctionKind,
    ParamSet,
    Parity,
    SampledFunction,
    SampleFileError,
    load_samples,
    make_params,
    sample_builtin,
    sample_shifted,
    write_samples,
)
from .oracle import (
    ErrorReport,
    QuadratureError,
    analytic_reference,
    error_report,
    quadrature_ft,
    smooth_rect_reference,
)
from .polyform import (
    Polynomial,
    RationalPolynomial,
    collapse,
    eval_rational,
    export_rational,
    load_rational,
    poly_mul,
)
from .presets import PRESETS

__version__ = "0.1.0"
