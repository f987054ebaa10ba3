"""Monotone generalized inverses and adaptive quadrature helpers.

Conventions used throughout: 1/0 = inf, -log(0) = inf, exp(-inf) = 0.
Generalized inverses follow the right-continuity rules of monotone
functions: for non-decreasing f the inverse is inf{x : f(x) >= y}, for
non-increasing f it is inf{x > 0 : f(x) <= y}.
"""

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import NumericError


def adaptive_quad(f, a, b, *, epsabs=1e-10, epsrel=1e-10, limit=400):
    """Integrate ``f`` on [a, b], mapping an infinite upper limit to [0, 1).

    Uses the substitution x = a + y/(1-y) when b is infinite, so that
    heavy power-law tails become integrable endpoint singularities which
    the adaptive Gauss-Kronrod scheme resolves.  Returns (value, abserr).
    """
    with warnings.catch_warnings():
        # roundoff warnings are expected near integrable endpoint
        # singularities; accuracy is asserted by the callers' tests
        warnings.simplefilter("ignore", IntegrationWarning)
        if np.isinf(b):
            def g(y):
                return f(a + y / (1.0 - y)) / (1.0 - y) ** 2

            value, err = quad(g, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel, limit=limit)
        else:
            value, err = quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
    if not np.isfinite(value):
        raise NumericError(f"quadrature did not converge on [{a}, {b}]")
    return value, err


def increasing_inverse(f, y, lo, hi, *, rel_tol=1e-13, max_iter=200):
    """Generalized inverse inf{x : f(x) >= y} of a non-decreasing ``f``.

    ``lo`` and ``hi`` must satisfy f(lo) < y <= f(hi); jumps and flat
    pieces are handled by plain bisection, which converges to the
    left-most point where f reaches y.
    """
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) >= y:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * max(1.0, abs(hi)):
            break
    return hi


def decreasing_inverse(f, y, *, lo=0.0, hi=None, rel_tol=1e-13, max_iter=200):
    """Generalized inverse inf{x > 0 : f(x) <= y} of a non-increasing ``f``.

    When ``hi`` is omitted the upper bracket is grown by doubling until
    f(hi) <= y.  Returns +inf if no finite x satisfies f(x) <= y, and
    0.0 if every x > 0 does.
    """
    if hi is None:
        hi = max(1.0, 2.0 * lo)
        for _ in range(max_iter):
            if f(hi) <= y:
                break
            hi *= 2.0
        else:
            return np.inf
    tiny = np.finfo(float).tiny
    if f(max(lo, tiny)) <= y:
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) <= y:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * max(1.0, abs(hi)):
            break
    return hi
