"""Extremal Chebyshev configurations on the unit circle, hedgehog Mahler
measures, and exact Hankel-determinant capacity experiments."""

from .exact import (
    HankelReport,
    HankelRow,
    InsufficientCoefficients,
    IntPolynomial,
    IntSeries,
    NonIntegerCoefficient,
    NonUnitConstant,
    PolynomialParseError,
    RatSeries,
    format_polynomial,
    graeffe,
    hankel_determinants,
    hedgehog_series,
    parse_polynomial,
    rat_series_exp,
    rat_series_sqrt,
    series_sqrt,
    sqrt_expm1_ratio_series,
)
from .chebyshev import (
    AsymptoticApproximation,
    ExtremalConstant,
    asymptotic_extremal_constant,
    chebyshev_eval,
    chebyshev_log,
    extremal_configuration,
    extremal_constant,
)
from .geometry import (
    ArcMaxima,
    ArcMaximum,
    CircleConfiguration,
    EmptyConfiguration,
    Hedgehog,
    NoConvergence,
    NonRationalWeights,
    Spine,
    WeightSumError,
    arc_maxima,
    dubinin_bound,
    equal_weight_configuration,
    format_points,
    hedgehog_from_polynomial,
    hedgehog_measure,
    normalize_configuration,
    objective,
    parse_points,
    poly_roots,
    rationalize_weights,
    spine_moduli,
)
from .optimize import (
    ConstructionFailure,
    OptimizationResult,
    UpperBoundReport,
    local_minimize,
    multistart_minimize,
    verify_upper_bound,
)

__version__ = "0.1.0"
