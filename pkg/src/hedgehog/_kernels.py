"""Compiled hot loop for the optimizer's arc-maximum evaluations.

The weighted log product is strictly concave on each open arc, so its
maximum is the unique zero of a cotangent sum; a bisection-safeguarded
Newton iteration finds it.  This mirrors the production path in
`geometry._arc_log_maxima` (dense sampling + golden section) but runs a few
hundred times faster, which the multistart search needs.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def arc_logmax(th, w, tol, max_iter):
    """Per-arc argmax and max of sum_k w_k*log(2|sin((t-th_k)/2)|).

    th must be sorted ascending in [0, 2*pi) with positive gaps; arcs run
    between consecutive angles, the last one wrapping around.
    """
    n = th.shape[0]
    targ = np.empty(n)
    out = np.empty(n)
    if n == 1:
        targ[0] = th[0] + math.pi
        out[0] = w[0] * math.log(2.0)
        return targ, out
    for j in range(n):
        a = th[j]
        b = th[j + 1] if j < n - 1 else th[0] + TWO_PI
        span = b - a
        lo = a + 1e-14 * (1.0 + span)
        hi = b - 1e-14 * (1.0 + span)
        t = 0.5 * (lo + hi)
        for _ in range(max_iter):
            slope = 0.0
            curv = 0.0
            for k in range(n):
                h = 0.5 * (t - th[k])
                s = math.sin(h)
                c = math.cos(h)
                slope += w[k] * 0.5 * (c / s)
                curv -= w[k] * 0.25 / (s * s)
            if slope > 0.0:
                lo = t
            else:
                hi = t
            tn = t - slope / curv
            if not (lo < tn < hi) or not math.isfinite(tn):
                tn = 0.5 * (lo + hi)
            if abs(tn - t) < tol:
                t = tn
                break
            t = tn
        v = 0.0
        for k in range(n):
            s = abs(math.sin(0.5 * (t - th[k])))
            v += w[k] * math.log(2.0 * s)
        targ[j] = t
        out[j] = v
    return targ, out
