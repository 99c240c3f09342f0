"""Multistart derivative-free minimization of the arc-product objective.

Local descent is a compass (coordinate step-halving) search over the point
angles with the rotation gauge fixed by pinning the first angle at 0,
followed by an arc-equalization polish: at any local minimum all but one
arc maximum is expected to pin at exactly 1, so a Newton step on the system
"log arc max = 0 on the small arcs" snaps the configuration onto that
manifold.  The polish is pure refinement: it is kept only when it lowers the
objective, so each local run is a genuine descent from its start.

Inner evaluations use the compiled concave arc maximizer; every reported
objective is re-scored with the production objective from `geometry`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import extremal_configuration, extremal_constant
from .geometry import (
    MERGE_TOL,
    TWO_PI,
    CircleConfiguration,
    normalize_configuration,
    objective,
)

DEFAULT_STEP_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 100_000
EQUAL_WEIGHT_TOL = 1e-9
_KERNEL_TOL = 1e-13
_KERNEL_MAX_ITER = 80


class ConstructionFailure(AssertionError):
    """The explicit extremal configuration missed the extremal constant."""


@dataclass(frozen=True)
class OptimizationResult:
    best_config: CircleConfiguration
    best_objective: float
    starts: int
    iterations_total: int
    converged_fraction: float
    seed: int | None


@functools.cache
def _kernel():
    # deferred so importing the package does not pay the numba startup cost
    from ._kernels import arc_logmax

    return arc_logmax


def _merged(angles_sorted: np.ndarray, n: int):
    """Merge near-coincident trial points so every arc has positive length."""
    base = 1.0 / n
    if angles_sorted.size < 2:
        return angles_sorted, np.full(angles_sorted.size, base)
    gaps_ok = (np.diff(angles_sorted) > MERGE_TOL).all()
    wrap = angles_sorted[0] + TWO_PI - angles_sorted[-1] <= MERGE_TOL
    if gaps_ok and not wrap:
        return angles_sorted, np.full(angles_sorted.size, base)
    angles: list[float] = []
    weights: list[float] = []
    for a in angles_sorted:
        if angles and a - angles[-1] <= MERGE_TOL:
            weights[-1] += base
        else:
            angles.append(float(a))
            weights.append(base)
    if len(angles) > 1 and angles[0] + TWO_PI - angles[-1] <= MERGE_TOL:
        weights[0] += weights.pop()
        angles.pop()
    return np.array(angles), np.array(weights)


def _log_objective_free(phi: np.ndarray, n: int) -> float:
    """Log objective as a function of the n-1 free angles (first pinned at 0)."""
    full = np.empty(n)
    full[0] = 0.0
    full[1:] = phi
    full = np.mod(full, TWO_PI)
    full.sort()
    angles, weights = _merged(full, n)
    _, logs = _kernel()(angles, weights, _KERNEL_TOL, _KERNEL_MAX_ITER)
    return float(np.maximum(logs, 0.0).sum())


def _compass(phi: np.ndarray, n: int, step_tolerance: float, max_evals: int):
    """Coordinate descent with step halving; returns (phi, value, evals, done)."""
    value = _log_objective_free(phi, n)
    evals = 1
    step = 0.5
    floor = max(1e-7, step_tolerance)
    while step > floor:
        if evals >= max_evals:
            return phi, value, evals, False
        improved = False
        for i in range(n - 1):
            for sign in (step, -step):
                trial = phi.copy()
                trial[i] += sign
                trial_value = _log_objective_free(trial, n)
                evals += 1
                if trial_value < value - 1e-15:
                    phi, value = trial, trial_value
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return phi, value, evals, True


def _equalize(phi: np.ndarray, n: int, max_iter: int = 40):
    """Newton-solve 'log arc max = 0' on all arcs except the deepest one.

    Returns the refined free angles, or None when the iteration leaves its
    domain (coincident points, singular Jacobian, no convergence).  The
    Jacobian is exact: by the envelope theorem the derivative of an arc
    maximum with respect to an angle is the cotangent term at the argmax.
    """
    if n == 1:
        return phi
    kernel = _kernel()
    full = np.empty(n)
    full[0] = 0.0
    full[1:] = phi
    th = np.sort(np.mod(full, TWO_PI))
    th -= th[0]
    w = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        if (np.diff(th) <= 1e-10).any() or th[0] + TWO_PI - th[-1] <= 1e-10:
            return None
        targ, logs = kernel(th, w, _KERNEL_TOL, _KERNEL_MAX_ITER)
        deep = int(np.argmax(logs))
        small = [j for j in range(n) if j != deep]
        residual = logs[small]
        if np.abs(residual).max() < 1e-13:
            return th[1:].copy()
        jac = np.empty((n - 1, n - 1))
        for row, j in enumerate(small):
            for col in range(1, n):
                jac[row, col - 1] = -w[col] * 0.5 / math.tan(0.5 * (targ[j] - th[col]))
        try:
            delta = np.linalg.solve(jac, residual)
        except np.linalg.LinAlgError:
            return None
        if not np.isfinite(delta).all():
            return None
        largest = np.abs(delta).max()
        if largest > 0.3:
            delta *= 0.3 / largest
        th[1:] -= delta
        th = np.sort(np.mod(th, TWO_PI))
        th -= th[0]
    return None


def _descend(start_angles: np.ndarray, n: int, step_tolerance: float,
             max_iterations: int):
    """Full local pipeline; returns (sorted angles, evals, converged)."""
    full = np.sort(np.mod(start_angles, TWO_PI))
    full = full - full[0]
    if n == 1:
        return full, 1, True
    phi, value, evals, done = _compass(
        full[1:].copy(), n, step_tolerance, max_iterations
    )
    polished = _equalize(phi, n)
    if polished is not None:
        polished_value = _log_objective_free(polished, n)
        evals += 1
        if polished_value < value:
            phi, value = polished, polished_value
    best = np.sort(np.mod(np.concatenate(([0.0], phi)), TWO_PI))
    return best - best[0], evals, done


def _require_equal_weights(config: CircleConfiguration):
    n = config.size
    if any(abs(w - 1.0 / n) > EQUAL_WEIGHT_TOL for w in config.weights):
        raise ValueError("local descent expects an equal-weight configuration")


def local_minimize(start: CircleConfiguration,
                   step_tolerance: float = DEFAULT_STEP_TOLERANCE,
                   max_iterations: int = DEFAULT_MAX_ITERATIONS) -> OptimizationResult:
    """Derivative-free descent from one configuration.  Never returns a
    configuration with an objective above the start's; hitting the iteration
    cap is flagged through converged_fraction = 0.
    """
    _require_equal_weights(start)
    n = start.size
    final_angles, evals, converged = _descend(
        np.asarray(start.angles), n, step_tolerance, max_iterations
    )
    candidate = normalize_configuration(final_angles, [1.0 / n] * n)
    start_objective = objective(start)
    candidate_objective = objective(candidate)
    if candidate_objective <= start_objective:
        best_config, best_objective = candidate, candidate_objective
    else:
        best_config, best_objective = start, start_objective
    return OptimizationResult(
        best_config, best_objective, 1, evals, 1.0 if converged else 0.0, None
    )


def multistart_minimize(n: int, starts: int, seed: int,
                        step_tolerance: float = DEFAULT_STEP_TOLERANCE,
                        max_iterations: int = DEFAULT_MAX_ITERATIONS) -> OptimizationResult:
    """Best of `starts` local descents from i.i.d. uniform random angle sets.

    Deterministic in (n, starts, seed): starts are generated upfront, run in
    a fixed order, and ties are broken by start index.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if starts < 1:
        raise ValueError("starts must be positive")
    rng = np.random.default_rng(seed)
    angle_sets = rng.uniform(0.0, TWO_PI, size=(starts, n))
    best_objective = None
    best_config = None
    total_evals = 0
    converged = 0
    for idx in range(starts):
        final_angles, evals, ok = _descend(
            angle_sets[idx], n, step_tolerance, max_iterations
        )
        total_evals += evals
        converged += int(ok)
        config = normalize_configuration(final_angles, [1.0 / n] * n)
        value = objective(config)
        if best_objective is None or value < best_objective:
            best_objective = value
            best_config = config
    return OptimizationResult(
        best_config, best_objective, starts, total_evals,
        converged / starts, seed,
    )


@dataclass(frozen=True)
class UpperBoundReport:
    n: int
    extremal_constant: float
    construction_objective: float
    search_best: float
    gap_construction: float            # construction - constant
    gap_search_vs_constant: float      # search best - constant
    gap_search_vs_construction: float  # search best - construction
    starts: int
    seed: int


def verify_upper_bound(n: int, starts: int = 100, seed: int = 0,
                       tolerance: float = 1e-8) -> UpperBoundReport:
    """Check the constructive upper bound: the explicit configuration must
    reproduce the extremal constant within `tolerance` (else
    ConstructionFailure), and a multistart search reports how close random
    descent gets."""
    constant = extremal_constant(n).value
    construction = objective(extremal_configuration(n))
    if abs(construction - constant) > tolerance:
        raise ConstructionFailure(
            f"n={n}: construction objective {construction!r} vs constant "
            f"{constant!r} differ by more than {tolerance}"
        )
    search = multistart_minimize(n, starts, seed)
    return UpperBoundReport(
        n=n,
        extremal_constant=constant,
        construction_objective=construction,
        search_best=search.best_objective,
        gap_construction=construction - constant,
        gap_search_vs_constant=search.best_objective - constant,
        gap_search_vs_construction=search.best_objective - construction,
        starts=starts,
        seed=seed,
    )
