"""Circle configurations, weighted arc maxima, and hedgehog measures.

A configuration is n points on the unit circle with positive weights summing
to 1.  Its objective is the product over consecutive arcs of
max(1, max over the arc of prod_k |z - z_k|^{w_k}); the squares of the inner
arc maxima are the spine lengths of the capacity-1 hedgehog attached to the
configuration by the exterior conformal map.  Hedgehogs can also be built
directly from a monic integer polynomial, with spines at the squares and
fourth powers of its roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import IntPolynomial

TWO_PI = 2.0 * math.pi
LOG4 = math.log(4.0)
MERGE_TOL = 1e-12        # coincident configuration points, radians
WEIGHT_SUM_TOL = 1e-9
SPINE_MERGE_TOL = 1e-9   # collinear spines, radians


class EmptyConfiguration(ValueError):
    """A configuration needs at least one point."""


class WeightSumError(ValueError):
    """Weights do not sum to 1 within tolerance."""


class NonRationalWeights(ValueError):
    """Weights are not multiples of 1/denominator within tolerance."""


class NoConvergence(RuntimeError):
    """The root finder failed to reach the requested residual."""


@dataclass(frozen=True)
class CircleConfiguration:
    """Points e^(i*angle) on the unit circle with positive weights.

    Angles are sorted ascending in [0, 2*pi); build instances through
    normalize_configuration, which enforces that.
    """

    angles: tuple[float, ...]
    weights: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.angles)


def normalize_configuration(angles, weights) -> CircleConfiguration:
    """Canonical form: angles reduced mod 2*pi and sorted, points closer than
    1e-12 radians merged with their weights added, weights rescaled to sum
    exactly 1 (rejected if off by more than 1e-9).
    """
    angles = [float(a) for a in angles]
    weights = [float(w) for w in weights]
    if len(angles) != len(weights):
        raise ValueError("angles and weights must have equal length")
    if not angles:
        raise EmptyConfiguration("no points")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")

    reduced = []
    for a in angles:
        r = math.fmod(a, TWO_PI)
        if r < 0:
            r += TWO_PI
        if r >= TWO_PI:
            r = 0.0
        reduced.append(r)
    pairs = sorted(zip(reduced, weights))

    merged: list[list[float]] = []
    for a, w in pairs:
        if merged and a - merged[-1][0] <= MERGE_TOL:
            merged[-1][1] += w
        else:
            merged.append([a, w])
    if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][0] <= MERGE_TOL:
        last = merged.pop()
        merged[0][1] += last[1]

    total = sum(w for _, w in merged)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise WeightSumError(f"weights sum to {total}, expected 1")
    return CircleConfiguration(
        tuple(a for a, _ in merged), tuple(w / total for _, w in merged)
    )


def equal_weight_configuration(angles) -> CircleConfiguration:
    angles = list(angles)
    return normalize_configuration(angles, [1.0 / len(angles)] * len(angles))


def parse_points(text: str) -> CircleConfiguration:
    """Read a point-set file: one 'angle weight' pair per line, angles in
    radians, '#' starts a comment."""
    angles, weights = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'angle weight'")
        angles.append(float(parts[0]))
        weights.append(float(parts[1]))
    return normalize_configuration(angles, weights)


def format_points(config: CircleConfiguration) -> str:
    lines = [f"{a:.17g} {w:.17g}" for a, w in zip(config.angles, config.weights)]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Arc maxima

@dataclass(frozen=True)
class ArcMaximum:
    arc_start_angle: float
    arc_end_angle: float   # start + arc length; exceeds 2*pi on the wrap arc
    argmax_angle: float
    max_value: float       # max over the arc of prod_k |z - z_k|^{w_k}


@dataclass(frozen=True)
class ArcMaxima:
    per_arc: tuple[ArcMaximum, ...]


def _weighted_log_product(t, angles, weights):
    """log prod_k |e^(it) - e^(i*angle_k)|^{w_k}, vectorized in t."""
    half = 0.5 * (np.asarray(t, float)[..., None] - angles)
    with np.errstate(divide="ignore"):
        logs = np.log(2.0 * np.abs(np.sin(half)))
    return logs @ weights


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = 1.0 - _INVPHI


def _golden_refine(angles, weights, lo, hi, tol):
    """Golden-section maximization of the weighted log product, carried out
    on all arcs simultaneously."""
    a = lo.astype(float).copy()
    b = hi.astype(float).copy()
    h = b - a
    x1 = a + _INVPHI2 * h
    x2 = a + _INVPHI * h
    f1 = _weighted_log_product(x1, angles, weights)
    f2 = _weighted_log_product(x2, angles, weights)
    hmax = float(h.max())
    iters = 0
    if hmax > tol:
        iters = int(math.ceil(math.log(tol / hmax) / math.log(_INVPHI)))
    for _ in range(iters):
        left = f1 >= f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        h = b - a
        new_x = np.where(left, a + _INVPHI2 * h, a + _INVPHI * h)
        new_f = _weighted_log_product(new_x, angles, weights)
        old_x1, old_f1 = x1, f1
        x1 = np.where(left, new_x, x2)
        f1 = np.where(left, new_f, f2)
        x2 = np.where(left, old_x1, new_x)
        f2 = np.where(left, old_f1, new_f)
    pick1 = f1 >= f2
    return np.where(pick1, x1, x2), np.where(pick1, f1, f2)


def _arc_log_maxima(angles, weights, samples_per_arc=None, refine_tol=1e-13):
    """Per-arc maxima of the weighted log product: dense sampling to bracket
    the (unique, by concavity) interior maximum, then golden-section.

    Returns (starts, ends, argmax, log_max) arrays over the n arcs.
    """
    th = np.asarray(angles, float)
    w = np.asarray(weights, float)
    n = th.size
    m = samples_per_arc if samples_per_arc is not None else max(256, 64 * n)
    starts = th
    ends = np.concatenate([th[1:], th[:1] + TWO_PI])
    lo = np.empty(n)
    hi = np.empty(n)
    arg0 = np.empty(n)
    val0 = np.empty(n)
    frac = np.arange(1, m + 1) / (m + 1.0)
    for j in range(n):
        ts = starts[j] + (ends[j] - starts[j]) * frac
        vs = _weighted_log_product(ts, th, w)
        best = int(np.argmax(vs))
        arg0[j] = ts[best]
        val0[j] = vs[best]
        lo[j] = ts[best - 1] if best > 0 else starts[j]
        hi[j] = ts[best + 1] if best < m - 1 else ends[j]
    arg, val = _golden_refine(th, w, lo, hi, refine_tol)
    sampled_better = val0 > val
    arg = np.where(sampled_better, arg0, arg)
    val = np.where(sampled_better, val0, val)
    return starts, ends, arg, val


def arc_maxima(config: CircleConfiguration, samples_per_arc: int | None = None,
               refine_tol: float = 1e-13) -> ArcMaxima:
    """Maxima of prod_k |z - z_k|^{w_k} over each of the n consecutive arcs
    (the last arc wraps around from the largest angle back to the smallest).
    """
    starts, ends, arg, val = _arc_log_maxima(
        config.angles, config.weights, samples_per_arc, refine_tol
    )
    records = tuple(
        ArcMaximum(float(s), float(e), float(a), math.exp(float(v)))
        for s, e, a, v in zip(starts, ends, arg, val)
    )
    return ArcMaxima(records)


def objective(config: CircleConfiguration) -> float:
    """prod_j max(1, arc_max_j), accumulated in log space."""
    _, _, _, val = _arc_log_maxima(config.angles, config.weights)
    return math.exp(float(np.maximum(val, 0.0).sum()))


# --------------------------------------------------------------------------
# Hedgehogs

@dataclass(frozen=True)
class Spine:
    modulus: float
    argument: float | None = None  # in [0, 2*pi) when known


@dataclass(frozen=True)
class Hedgehog:
    """Union of segments from the origin to modulus * e^(i*argument)."""

    spines: tuple[Spine, ...]

    @property
    def size(self) -> int:
        return len(self.spines)

    def max_modulus(self) -> float:
        return max(s.modulus for s in self.spines)


def spine_moduli(config: CircleConfiguration) -> Hedgehog:
    """Spine lengths of the capacity-1 hedgehog attached to the configuration:
    the squares of the arc maxima.  Spine directions are not computed (they
    would require integrating the exterior conformal map)."""
    _, _, _, val = _arc_log_maxima(config.angles, config.weights)
    return Hedgehog(tuple(Spine(math.exp(2.0 * float(v))) for v in val))


def hedgehog_measure(h: Hedgehog) -> float:
    """prod_j max(1, spine modulus), accumulated in log space."""
    if not h.spines:
        raise ValueError("hedgehog has no spines")
    return math.exp(sum(max(0.0, math.log(s.modulus)) for s in h.spines))


def dubinin_bound(h: Hedgehog) -> float:
    """Dubinin's capacity upper bound 4^(-1/n) * max_j |beta_j| for an
    n-spine hedgehog; equality holds exactly for the rotationally symmetric
    hedgehog."""
    if not h.spines:
        raise ValueError("hedgehog has no spines")
    return math.exp(math.log(h.max_modulus()) - LOG4 / h.size)


def rationalize_weights(config: CircleConfiguration, denominator: int) -> CircleConfiguration:
    """Snap weights to exact multiples of 1/denominator.

    The result represents the equal-weight multiset in which point j is
    repeated weight*denominator times; multiplicity stays encoded in the
    weights, which is what the objective consumes.
    """
    if denominator < 1:
        raise ValueError("denominator must be positive")
    counts = []
    for w in config.weights:
        a = round(w * denominator)
        if a < 1 or abs(w * denominator - a) > 1e-9:
            raise NonRationalWeights(
                f"weight {w} is not a positive multiple of 1/{denominator}"
            )
        counts.append(a)
    if sum(counts) != denominator:
        raise NonRationalWeights(
            f"multiplicities sum to {sum(counts)}, expected {denominator}"
        )
    return CircleConfiguration(
        config.angles, tuple(a / denominator for a in counts)
    )


# --------------------------------------------------------------------------
# Roots of integer polynomials and polynomial hedgehogs

def poly_roots(p: IntPolynomial, target_residual: float = 1e-12,
               max_iterations: int = 400) -> list[complex]:
    """All complex roots of p by simultaneous (Ehrlich-Aberth) iteration.

    Expects a squarefree polynomial of degree >= 1.  Each returned root r
    satisfies |p(r)| <= target_residual * ||p||_1 * max(1, |r|)^deg (with
    coefficients normalized to monic), and the expanded product over the
    roots reproduces the coefficients to 1e-9 relative to the coefficient
    scale; otherwise NoConvergence is raised.
    """
    d = p.degree
    if d < 1:
        raise ValueError("degree must be at least 1")
    monic = np.array([float(c) for c in p.coeffs]) / float(p.coeffs[-1])
    if d == 1:
        return [complex(-monic[0], 0.0)]
    desc = monic[::-1].astype(complex)
    deriv = (desc[:-1] * np.arange(d, 0, -1)).astype(complex)
    norm1 = float(np.abs(monic).sum())

    scale = max(abs(monic[0]) ** (1.0 / d), 0.5)
    init_angles = TWO_PI * (np.arange(d) + 0.5) / d + 0.4
    z = scale * np.exp(1j * init_angles)

    def residual_ok(values, points):
        bound = target_residual * norm1 * np.maximum(1.0, np.abs(points)) ** d
        return np.abs(values) <= bound

    converged = False
    for it in range(max_iterations):
        pv = np.polyval(desc, z)
        if residual_ok(pv, z).all():
            converged = True
            break
        pd = np.polyval(deriv, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pv / pd
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            step = w / (1.0 - w * s)
        bad = ~np.isfinite(step)
        if bad.any():
            nudge = 0.05 * (1.0 + np.abs(z)) * np.exp(1j * (it + 1.0))
            step = np.where(bad, nudge, step)
        z = z - step
    if not converged:
        raise NoConvergence(f"no convergence after {max_iterations} iterations")

    # a couple of Newton polishing steps, kept only where they help
    for _ in range(3):
        pv = np.polyval(desc, z)
        pd = np.polyval(deriv, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            zn = z - pv / pd
        ok = np.isfinite(zn)
        better = ok & (np.abs(np.polyval(desc, np.where(ok, zn, z))) <= np.abs(pv))
        z = np.where(better, zn, z)

    recon = np.poly(z)[::-1]  # ascending, monic
    err = float(np.abs(recon - monic).max())
    if err > 1e-9 * max(1.0, norm1):
        raise NoConvergence(f"root reconstruction error {err:.3e}")
    return sorted((complex(r) for r in z), key=lambda c: (c.real, c.imag))


def _merge_collinear(spines: list[Spine], tol: float) -> list[Spine]:
    spines = sorted(spines, key=lambda s: s.argument)
    clusters: list[list[Spine]] = []
    for s in spines:
        if clusters and s.argument - clusters[-1][-1].argument <= tol:
            clusters[-1].append(s)
        else:
            clusters.append([s])
    if len(clusters) > 1 and clusters[0][0].argument + TWO_PI - clusters[-1][-1].argument <= tol:
        clusters[0] = clusters.pop() + clusters[0]
    return [max(c, key=lambda s: s.modulus) for c in clusters]


def hedgehog_from_polynomial(p: IntPolynomial,
                             target_residual: float = 1e-12) -> Hedgehog:
    """Hedgehog with spines at the squares and fourth powers of the roots of
    the monic polynomial p.  Collinear spines (arguments within 1e-9 radians)
    are merged keeping the longest, matching the set union of the segments.
    """
    if p.degree < 1 or not p.is_monic():
        raise ValueError("need a monic polynomial of degree >= 1")
    if p.constant_term == 0:
        raise ValueError("constant term must be nonzero")
    raw = []
    for root in poly_roots(p, target_residual):
        for power in (root * root, root ** 4):
            raw.append(Spine(abs(power), math.atan2(power.imag, power.real) % TWO_PI))
    return Hedgehog(tuple(_merge_collinear(raw, SPINE_MERGE_TOL)))
