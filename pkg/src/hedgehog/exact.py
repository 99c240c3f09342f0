"""Exact integer/rational polynomial and truncated power-series arithmetic.

Everything in this module is exact: integer coefficients are arbitrary
precision, rationals are `fractions.Fraction`, and no floating point enters
any computation (floats appear only in the derived growth statistics of
`HankelReport`).  Polynomials and series store coefficients in ascending
order, index i = coefficient of x^i.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction


class PolynomialParseError(ValueError):
    """Raised when a polynomial string cannot be parsed."""


class NonUnitConstant(ValueError):
    """Series operation requires a constant term of exactly 1."""


class NonIntegerCoefficient(ValueError):
    """An integer-series operation produced a non-integral coefficient."""

    def __init__(self, index: int, value: Fraction):
        self.index = index
        self.value = value
        super().__init__(f"coefficient at index {index} is {value}, not an integer")


class InsufficientCoefficients(ValueError):
    """The series is too short for the requested matrix size."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] is the coefficient of x^i.

    Trailing zeros are trimmed on construction, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        c = tuple(operator.index(v) for v in coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __call__(self, x):
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_polynomial(self)!r})"


_TERM_RE = re.compile(r"([+-]?)(\d+)?(?:\*?(x)(?:\^(\d+))?)?$")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse either an expression like "x^3-x-1" or an ascending
    comma-separated coefficient list like "-1,-1,0,1".

    Expressions support +, -, ^, optional '*', integer coefficients and the
    single variable x with nonnegative integer exponents.
    """
    cleaned = text.strip().replace("−", "-").replace(" ", "")
    if not cleaned:
        raise PolynomialParseError("empty polynomial")
    if "x" not in cleaned:
        try:
            return IntPolynomial(int(part) for part in cleaned.split(","))
        except ValueError as exc:
            raise PolynomialParseError(f"bad coefficient list {text!r}") from exc

    terms = re.findall(r"[+-]?[^+-]+", cleaned)
    if "".join(terms) != cleaned:
        raise PolynomialParseError(f"cannot tokenize {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        m = _TERM_RE.fullmatch(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise PolynomialParseError(f"bad term {term!r} in {text!r}")
        sign, digits, var, exp = m.groups()
        if var is None and exp is None and digits is None:
            raise PolynomialParseError(f"bad term {term!r} in {text!r}")
        coeff = int((sign or "") + (digits if digits is not None else "1"))
        power = 0 if var is None else (int(exp) if exp is not None else 1)
        coeffs[power] = coeffs.get(power, 0) + coeff
    out = [0] * (max(coeffs) + 1)
    for power, coeff in coeffs.items():
        out[power] = coeff
    return IntPolynomial(out)


def format_polynomial(p: IntPolynomial) -> str:
    """Render an IntPolynomial as an expression, highest power first."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = f"{head}x" if i == 1 else f"{head}x^{i}"
        parts.append(f"{sign}{body}" if not parts else f"{sign} {body}")
    return " ".join(parts)


def graeffe(p: IntPolynomial) -> IntPolynomial:
    """Monic polynomial of the same degree whose roots are the squares of
    the roots of (monic) p.

    Satisfies result(x^2) = (-1)^deg(p) * p(x) * p(-x).
    """
    if p.is_zero() or not p.is_monic():
        raise ValueError("graeffe requires a nonzero monic polynomial")
    mirrored = IntPolynomial(
        c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)
    )
    q = p * mirrored
    if p.degree % 2:
        q = -q
    assert all(c == 0 for c in q.coeffs[1::2])
    return IntPolynomial(q.coeffs[0::2])


@dataclass(frozen=True)
class IntSeries:
    """Truncated integer power series a_0..a_N; length is exactly N+1."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        c = tuple(operator.index(v) for v in coeffs)
        if not c:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, order: int) -> IntSeries:
        padded = p.coeffs + (0,) * (order + 1 - len(p.coeffs))
        return cls(padded[: order + 1])

    def __mul__(self, other: IntSeries) -> IntSeries:
        # binary ops truncate to the shorter operand's order
        order = min(self.truncation_order, other.truncation_order)
        out = [0] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return IntSeries(out)

    def truncate(self, order: int) -> IntSeries:
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return IntSeries(self.coeffs[: order + 1])


def series_sqrt(s: IntSeries) -> IntSeries:
    """Integer square root of a series with constant term 1, branch +1.

    Raises NonIntegerCoefficient at the first index where the true square
    root leaves the integers.
    """
    if s.coeffs[0] != 1:
        raise NonUnitConstant("series_sqrt requires constant term 1")
    n = s.truncation_order
    t = [1] + [0] * n
    for m in range(1, n + 1):
        acc = s.coeffs[m] - sum(t[i] * t[m - i] for i in range(1, m))
        if acc % 2:
            raise NonIntegerCoefficient(m, Fraction(acc, 2))
        t[m] = acc // 2
    return IntSeries(t)


def hedgehog_series(p: IntPolynomial, order: int) -> IntSeries:
    """Integer series whose square vanishes at the squares and fourth powers
    of the roots of p: sqrt(G2(x) * G4(x)) where G2, G4 are the first two
    Graeffe iterates, the product normalized to constant term +1.
    """
    if not p.is_monic():
        raise ValueError("hedgehog_series requires a monic polynomial")
    if p.constant_term == 0:
        raise ValueError("hedgehog_series requires a nonzero constant term")
    if order < 0:
        raise ValueError("order must be nonnegative")
    g2 = graeffe(p)
    g4 = graeffe(g2)
    product = g2 * g4
    if product.constant_term < 0:
        product = -product
    if product.constant_term != 1:
        raise NonUnitConstant(
            f"normalized product has constant term {product.constant_term}, not 1"
        )
    return series_sqrt(IntSeries.from_polynomial(product, order))


@dataclass(frozen=True)
class RatSeries:
    """Truncated power series with exact rational coefficients c_0..c_N."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        c = tuple(Fraction(v) for v in coeffs)
        if not c:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1


def rat_series_sqrt(s: RatSeries) -> RatSeries:
    """Rational square root (branch +1) of a series with constant term 1."""
    if s.coeffs[0] != 1:
        raise NonUnitConstant("rat_series_sqrt requires constant term 1")
    n = s.truncation_order
    t = [Fraction(1)] + [Fraction(0)] * n
    for m in range(1, n + 1):
        acc = s.coeffs[m] - sum(t[i] * t[m - i] for i in range(1, m))
        t[m] = acc / 2
    return RatSeries(t)


def rat_series_exp(s: RatSeries) -> RatSeries:
    """Rational exponential of a series with constant term 0."""
    if s.coeffs[0] != 0:
        raise ValueError("rat_series_exp requires constant term 0")
    n = s.truncation_order
    e = [Fraction(1)] + [Fraction(0)] * n
    for m in range(1, n + 1):
        e[m] = sum(k * s.coeffs[k] * e[m - k] for k in range(1, m + 1)) / m
    return RatSeries(e)


def sqrt_expm1_ratio_series(order: int) -> RatSeries:
    """Exact rational coefficients of h(t) = sqrt((1 - exp(-t)) / t).

    h(0) = 1 and sqrt(1 - exp(-t)) = sqrt(t) * h(t); the first few
    coefficients are 1, -1/4, 5/96, -1/128, ...
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    minus_t = RatSeries([Fraction(0), Fraction(-1)] + [Fraction(0)] * order)
    decay = rat_series_exp(minus_t)
    numerator = [-c for c in decay.coeffs]
    numerator[0] += 1
    ratio = RatSeries(numerator[1:])  # divide 1 - exp(-t) by t
    return rat_series_sqrt(ratio)


@dataclass(frozen=True)
class HankelRow:
    """One order of the Hankel determinant experiment.

    root_k is |det|^(1/k) and root_k2 is |det|^(1/k^2); both are reported as
    0.0 when the determinant vanishes.
    """

    k: int
    determinant: int
    root_k: float
    root_k2: float


@dataclass(frozen=True)
class HankelReport:
    entries: tuple[HankelRow, ...]

    def max_root(self) -> float:
        return max(row.root_k for row in self.entries)

    def to_csv(self) -> str:
        lines = ["k,A_k,abs_root_k,abs_root_k2"]
        for row in self.entries:
            lines.append(
                f"{row.k},{row.determinant},{row.root_k:.10g},{row.root_k2:.10g}"
            )
        return "\n".join(lines) + "\n"


def _abs_root(value: int, power: int) -> float:
    if value == 0:
        return 0.0
    return math.exp(math.log(abs(value)) / power)


def _exact_quotient(numerator: int, denominator: int) -> int:
    q, r = divmod(numerator, denominator)
    if r:
        raise ArithmeticError("fraction-free elimination produced a remainder")
    return q


def _bareiss_determinant(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination with row pivoting."""
    n = len(m)
    sign = 1
    prev = 1
    for step in range(n - 1):
        if m[step][step] == 0:
            for r in range(step + 1, n):
                if m[r][step] != 0:
                    m[step], m[r] = m[r], m[step]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[step][step]
        for i in range(step + 1, n):
            row, lead = m[i], m[i][step]
            base = m[step]
            for j in range(step + 1, n):
                row[j] = _exact_quotient(pivot * row[j] - lead * base[j], prev)
        prev = pivot
    return sign * m[n - 1][n - 1]


def _principal_minors(entries: list[int], kmax: int) -> list[int]:
    """Leading principal minors of order 1..kmax of (entries[i+j])_{i,j<kmax}.

    A single fraction-free pass reads every minor off the diagonal; if a zero
    pivot interrupts it, the remaining minors are computed independently.
    """
    m = [[entries[i + j] for j in range(kmax)] for i in range(kmax)]
    minors: list[int] = []
    prev = 1
    for step in range(kmax):
        pivot = m[step][step]
        minors.append(pivot)
        if step == kmax - 1:
            break
        if pivot == 0:
            for k in range(step + 2, kmax + 1):
                fresh = [[entries[i + j] for j in range(k)] for i in range(k)]
                minors.append(_bareiss_determinant(fresh))
            break
        for i in range(step + 1, kmax):
            row, lead = m[i], m[i][step]
            base = m[step]
            for j in range(step + 1, kmax):
                row[j] = _exact_quotient(pivot * row[j] - lead * base[j], prev)
        prev = pivot
    return minors


def hankel_determinants(s: IntSeries, kmax: int) -> HankelReport:
    """Exact determinants of the k-by-k matrices (a_{i+j})_{0<=i,j<k} built
    from the series coefficients, for k = 1..kmax, with growth statistics.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    if s.truncation_order < 2 * kmax - 2:
        raise InsufficientCoefficients(
            f"need coefficients up to index {2 * kmax - 2}, "
            f"series stops at {s.truncation_order}"
        )
    minors = _principal_minors(list(s.coeffs), kmax)
    rows = tuple(
        HankelRow(k, det, _abs_root(det, k), _abs_root(det, k * k))
        for k, det in enumerate(minors, start=1)
    )
    return HankelReport(rows)
