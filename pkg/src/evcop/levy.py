"""The bijection between unit-mean distributions and Levy measures.

A distribution F on [0, inf) with finite positive mean corresponds
one-to-one to a Levy measure nu on (0, inf] through

    S_nu(t) = F^{-1}(exp(-t)),

where S_nu(t) = nu((t, inf]) is the survival function of the measure.
The inverse map sends nu to the distribution function
F_nu(t) = exp(-S_nu^{-1}(t)) between the killing rate and the total
mass (0 below, 1 above).  Structurally, nu({inf}) equals the lower
support endpoint of F and nu((0, inf]) equals the upper one, and the
Laplace exponent

    Psi(u) = int_0^inf (1 - F(x)^u) dx = int_(0,inf] (1 - e^{-u x}) nu(dx)

is a Bernstein function with Psi(1) = mean of F = 1.
"""

import math

import numpy as np

from .distributions import CustomDistribution, UnitMeanDistribution
from .errors import InvalidSpecError, NumericError, UnsupportedOperationError
from .numerics import adaptive_quad, decreasing_inverse
from .stdf import StdfValue, _check_weights


class LevyMeasure:
    """A Levy measure on (0, inf] represented by its survival function.

    Representing the measure by S_nu(t) = nu((t, inf]) and its
    generalized inverse S_nu^{-1}(y) = inf{x > 0 : S_nu(x) <= y} lets
    atomic and absolutely continuous measures share one interface; both
    functions are non-increasing and right-continuous.

    Attributes
    ----------
    killing_rate : float
        nu({inf}) = lim_{t -> inf} S_nu(t).
    total_mass : float
        nu((0, inf]) = lim_{t -> 0+} S_nu(t); may be +inf.
    """

    def __init__(self, survival, *, killing_rate, total_mass, survival_inverse=None):
        if total_mass <= 0.0:
            raise InvalidSpecError("a Levy measure needs positive total mass")
        if killing_rate < 0.0 or killing_rate > total_mass:
            raise InvalidSpecError("killing rate must lie in [0, total_mass]")
        self._survival = survival
        self._survival_inverse = survival_inverse
        self.killing_rate = float(killing_rate)
        self.total_mass = float(total_mass)

    def survival(self, t):
        """S_nu(t) = nu((t, inf]) for t >= 0."""
        return self._survival(t)

    def survival_inverse(self, y):
        """S_nu^{-1}(y) = inf{x > 0 : S_nu(x) <= y}.

        Returns +inf for y below the killing rate and 0 for y at or
        above the total mass.  Falls back to monotone bisection when no
        closed form was registered.
        """
        if self._survival_inverse is not None:
            return self._survival_inverse(y)
        if np.ndim(y) == 0:
            return self._bisect_inverse(float(y))
        return np.array([self._bisect_inverse(float(v)) for v in np.ravel(y)]).reshape(
            np.shape(y)
        )

    def _bisect_inverse(self, y):
        if y < self.killing_rate:
            return np.inf
        if y >= self.total_mass:
            return 0.0
        return decreasing_inverse(self._survival, y)

    def moment_near_zero(self):
        """int_0^1 x nu(dx), evaluated as int_0^1 S(x) dx - S(1).

        Finiteness of this quantity is the defining integrability
        condition of a Levy measure.
        """
        value, _ = adaptive_quad(lambda x: float(self.survival(x)), 0.0, 1.0)
        return value - float(self.survival(1.0))

    @classmethod
    def from_atom(cls, mass, location) -> "LevyMeasure":
        """The atomic measure ``mass * delta_location``, location in (0, inf]."""
        if mass <= 0.0 or location <= 0.0:
            raise InvalidSpecError("atom needs positive mass and location")
        location = float(location)
        mass = float(mass)

        def survival(t):
            t = np.asarray(t, dtype=float)
            return (mass * (t < location))[()]

        def survival_inverse(y):
            y = np.asarray(y, dtype=float)
            return np.where(y >= mass, 0.0, location)[()]

        killing = mass if np.isinf(location) else 0.0
        return cls(
            survival,
            survival_inverse=survival_inverse,
            killing_rate=killing,
            total_mass=mass,
        )

    @classmethod
    def from_survival(cls, survival, *, killing_rate=None, total_mass=None):
        """Wrap a non-increasing right-continuous survival function.

        Missing limits are probed numerically; the generalized inverse
        is computed by bisection.
        """
        if killing_rate is None:
            killing_rate = float(survival(1e12))
        if total_mass is None:
            total_mass = float(survival(1e-12))
        return cls(survival, killing_rate=killing_rate, total_mass=total_mass)


def levy_from_distribution(dist) -> LevyMeasure:
    """The Levy measure whose survival function is F^{-1}(exp(-t)).

    The generalized inverse comes out in closed form as
    S^{-1}(y) = -log F(y), and the killing rate and total mass equal the
    support endpoints of F exactly.
    """
    if float(dist.cdf(0.0)) >= 1.0:
        raise InvalidSpecError("F(0) must be < 1 (the variable is not identically 0)")

    def survival(t):
        t = np.asarray(t, dtype=float)
        return dist.quantile(np.exp(-np.maximum(t, 0.0)))

    def survival_inverse(y):
        with np.errstate(divide="ignore"):
            return -np.log(dist.cdf(y))

    return LevyMeasure(
        survival,
        survival_inverse=survival_inverse,
        killing_rate=float(dist.lower_support),
        total_mass=float(dist.upper_support),
    )


def distribution_from_levy(nu, *, is_continuous=False) -> UnitMeanDistribution:
    """The distribution function associated with a Levy measure.

    F_nu(t) is 0 below the killing rate, exp(-S_nu^{-1}(t)) between the
    killing rate and the total mass, and 1 beyond the total mass.  Its
    quantile is available in closed form as F_nu^{-1}(p) = S_nu(-log p).
    The mean equals Psi(1) and is evaluated by quadrature; callers
    expecting a unit-mean result should assert it.
    """
    check = nu.moment_near_zero()
    if not np.isfinite(check):
        raise InvalidSpecError("measure violates the integrability condition")
    killing, total = nu.killing_rate, nu.total_mass

    def cdf(t):
        t = np.asarray(t, dtype=float)
        inner = np.exp(-np.asarray(nu.survival_inverse(np.maximum(t, killing)), dtype=float))
        return np.where(t < killing, 0.0, np.where(t >= total, 1.0, inner))

    def quantile(p):
        p = np.asarray(p, dtype=float)
        with np.errstate(divide="ignore"):
            return np.asarray(nu.survival(-np.log(p)), dtype=float)

    mean = psi_from_levy(nu, 1.0)
    return CustomDistribution(
        cdf,
        quantile=quantile,
        lower_support=killing,
        upper_support=total,
        is_continuous=is_continuous,
        mean=mean,
        name="levy-image",
    )


def psi_from_distribution(dist, u) -> float:
    """The Laplace exponent Psi(u) = int_0^{u_F} (1 - F(x)^u) dx."""
    if u < 0.0:
        raise InvalidSpecError("u must be non-negative")
    if u == 0.0:
        return 0.0
    value, err = adaptive_quad(
        lambda x: 1.0 - float(dist.cdf(x)) ** u, 0.0, dist.upper_support
    )
    if err > 1e-4 * max(1.0, abs(value)):
        raise InvalidSpecError(
            "Psi integral did not converge; the input may not have finite mean"
        )
    return value


def psi_from_levy(nu, u) -> float:
    """Levy-Khintchine integral Psi(u) = int_(0,inf] (1 - e^{-u x}) nu(dx).

    The atom at infinity contributes the killing term
    nu({inf}) * 1_{u > 0}; the rest is integrated through the layer
    representation int_{killing}^{total} (1 - e^{-u S^{-1}(y)}) dy.
    """
    if u < 0.0:
        raise InvalidSpecError("u must be non-negative")
    if u == 0.0:
        return 0.0

    def integrand(y):
        x = float(nu.survival_inverse(y))
        return 1.0 if np.isinf(x) else -math.expm1(-u * x)

    value, err = adaptive_quad(integrand, nu.killing_rate, nu.total_mass)
    if err > 1e-4 * max(1.0, abs(value)):
        raise NumericError("Levy-Khintchine integral did not converge")
    return nu.killing_rate + value


def stdf_via_levy(model, t, *, epsabs=1e-10) -> StdfValue:
    """Evaluate ell(t) through the Levy measure of an exchangeable model.

    ell(t) = int_(0,inf] (1 - exp(-sum_i S^{-1}(x/t_i))) dx, where S is
    the survival function of the measure associated with the common
    margin.  Zero weights drop out through S^{-1}(inf) = 0.
    """
    t = _check_weights(model, t)
    if not model.is_exchangeable:
        raise UnsupportedOperationError(
            "the Levy-integral form needs identical margins"
        )
    nu = levy_from_distribution(model.margins[0])
    pos = t[t > 0.0]
    if pos.size == 0:
        return StdfValue(0.0)
    upper = float(np.max(pos)) * nu.total_mass

    def integrand(x):
        acc = 0.0
        for ti in pos:
            acc += float(nu.survival_inverse(x / ti))
            if np.isinf(acc):
                return 1.0
        return -math.expm1(-acc)

    value, err = adaptive_quad(integrand, 0.0, upper, epsabs=epsabs)
    return StdfValue(value, err)


def levy_density_from_distribution(dist):
    """Density transform F -> nu: f_nu(x) = e^{-x} / f_F(F^{-1}(e^{-x})).

    Requires a strictly positive density on the support interior; raises
    on evaluation wherever the density vanishes.
    """
    if not dist.has_density:
        raise UnsupportedOperationError("input distribution has no density")

    def density(x):
        x = np.asarray(x, dtype=float)
        q = dist.quantile(np.exp(-x))
        f = np.asarray(dist.pdf(q), dtype=float)
        if np.any(f <= 0.0):
            raise NumericError("distribution density vanishes at a required point")
        return np.exp(-x) / f

    return density


def distribution_density_from_levy(nu, nu_density):
    """Density transform nu -> F: f_F(x) = e^{-S^{-1}(x)} / f_nu(S^{-1}(x)).

    ``S^{-1}`` here is the regular inverse of the (continuous, strictly
    decreasing) survival function, which coincides with the generalized
    inverse used elsewhere.
    """

    def density(x):
        x = np.asarray(x, dtype=float)
        s = np.asarray(nu.survival_inverse(x), dtype=float)
        f = np.asarray(nu_density(s), dtype=float)
        if np.any(f <= 0.0):
            raise NumericError("Levy density vanishes at a required point")
        return np.exp(-s) / f

    return density
