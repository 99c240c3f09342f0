"""Chebyshev polynomials of the first kind and the extremal circle constants.

The central quantity is the degree-n constant (T_n(2^(1/n)))^(1/n): the value
of the arc-product objective achieved by the configuration whose monic
polynomial is a rescaled Chebyshev polynomial on the unit circle.  Everything
is computed and stored in log space; T_n(2^(1/n)) is the n-th power of a
number barely above 1, so naive evaluation loses all precision long before
n reaches 10^6.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import sqrt_expm1_ratio_series
from .geometry import CircleConfiguration, normalize_configuration

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)
_EXP_MAX = 700.0  # exp() overflows just above this


def _acosh1p(u: float) -> float:
    """arccosh(1 + u) for u >= 0, safe against cancellation for tiny u."""
    if u < 0:
        raise ValueError("argument must be >= 1")
    return math.log1p(u + math.sqrt(u * (u + 2.0)))


def chebyshev_log_excess(n: int, u: float) -> float:
    """log T_n(1 + u) for u >= 0.

    Takes the excess u = x - 1 directly so callers that know u exactly
    (e.g. u = expm1(log(2)/n)) do not lose it to subtraction.
    """
    a = _acosh1p(u)
    na = n * a
    # T_n(cosh a) = cosh(n a); split off the dominant exponential
    tail = math.exp(-2.0 * na) if na < 350 else 0.0
    return na + math.log1p(tail) - LOG2


def chebyshev_log(n: int, x: float) -> float:
    """log T_n(x) for x >= 1."""
    if x < 1.0:
        raise ValueError("chebyshev_log requires x >= 1")
    return chebyshev_log_excess(n, x - 1.0)


def chebyshev_eval(n: int, x: float) -> float:
    """T_n(x) via the trigonometric form on [-1, 1] and the hyperbolic form
    outside.

    Values beyond float range come back as +/-inf; use chebyshev_log for the
    growth regime.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if -1.0 <= x <= 1.0:
        return math.cos(n * math.acos(x))
    sign = 1.0
    if x < 0:
        x = -x
        sign = -1.0 if n % 2 else 1.0
    logt = chebyshev_log(n, x)
    if logt > _EXP_MAX:
        return sign * math.inf
    return sign * math.exp(logt)


@dataclass(frozen=True)
class ExtremalConstant:
    """The constant (T_n(2^(1/n) * t))^(1/n), stored as its natural log."""

    n: int
    t_scale: float
    log_value: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    def pow_sqrt_n(self) -> float:
        """value ** sqrt(n); approaches exp(sqrt(log 4)) * (scale terms)."""
        return math.exp(math.sqrt(self.n) * self.log_value)


def extremal_constant(n: int, t: float = 1.0) -> ExtremalConstant:
    """Extremal arc-product constant (T_n(2^(1/n) * t))^(1/n) for t >= 1.

    At t = 1 this is the minimum of the objective over configurations with
    all but one arc factor equal to 1; it tends to 1 as n grows.  For t > 1
    the limit is t + sqrt(t^2 - 1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if t < 1.0:
        raise ValueError("t must be >= 1")
    u2 = math.expm1(LOG2 / n)  # 2^(1/n) - 1, no cancellation
    u = u2 if t == 1.0 else t * u2 + (t - 1.0)
    log_t = chebyshev_log_excess(n, u)
    return ExtremalConstant(n, float(t), log_t / n)


@dataclass(frozen=True)
class AsymptoticApproximation:
    """Partial sum 1 + nu - nu^3/4 + 5 nu^5/96 - ... with nu = sqrt(log(4)/n)."""

    n: int
    nu: float
    terms_used: int
    value: float


@functools.lru_cache(maxsize=None)
def _expansion_coefficients(terms: int) -> tuple[Fraction, ...]:
    if terms < 1:
        return ()
    return sqrt_expm1_ratio_series(terms - 1).coeffs


def asymptotic_extremal_constant(n: int, terms: int = 4) -> AsymptoticApproximation:
    """Asymptotic approximation of extremal_constant(n) using `terms` odd
    powers of nu; exact rational coefficients are converted to float only
    here, at evaluation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if terms < 0:
        raise ValueError("terms must be nonnegative")
    nu = math.sqrt(LOG4 / n)
    value = 1.0
    power = nu
    for coeff in _expansion_coefficients(terms):
        value += float(coeff) * power
        power *= nu * nu
    return AsymptoticApproximation(n, nu, terms, value)


def extremal_configuration(n: int) -> CircleConfiguration:
    """The n-point equal-weight configuration whose monic polynomial attains
    maximum modulus T_n(2^(1/n)) at z = -1 and exactly 1 on every other arc.

    The points come from the nonnegative zeros of T_n: each zero x gives the
    conjugate pair at angles +/- 2*arcsin(2^(-1/n) * x); odd n contributes
    one point exactly at angle 0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    scale = math.exp(-LOG2 / n)
    angles = []
    for m in range(1, n // 2 + 1):
        zero = math.cos((2 * m - 1) * math.pi / (2 * n))
        theta = 2.0 * math.asin(scale * zero)
        angles.append(theta)
        angles.append(2.0 * math.pi - theta)
    if n % 2:
        angles.append(0.0)
    return normalize_configuration(angles, [1.0 / n] * n)
