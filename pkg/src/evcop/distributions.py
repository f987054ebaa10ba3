"""Unit-mean distributions on [0, inf) and their size-biased companions.

Every distribution here models a non-negative random variable X with
E[X] = 1 and F(0) < 1.  Each instance provides the right-continuous cdf,
its left-limit version, the generalized inverse quantile
F^{-1}(p) = inf{x > 0 : F(x) >= p}, the support endpoints, inversion
sampling, and sampling from the size-biased law x dF(x) (which is a
probability measure exactly because the mean is one).

Built-in families
-----------------
frechet(theta), theta in (0, 1)
    F(t) = exp[-(Gamma(1-theta) t)^(-1/theta)]; generates the Gumbel
    extreme-value copula.
weibull_galambos(theta), theta in (0, inf)
    F(t) = 1 - exp[-(t Gamma(1+theta))^(1/theta)]; generates the
    Galambos copula.
bounded_exp(theta), theta in [0, inf)
    F(t) = 1 - (1 - t theta/(1+theta))^(1/theta) on [0, (1+theta)/theta];
    the exponential distribution squashed onto a bounded support, with
    theta = 0 giving back the unit exponential.
uniform_half
    F(t) = t/2 on [0, 2] (= bounded_exp at theta = 1).
two_point(theta), theta in (0, 1]
    P(X = 0) = 1-theta, P(X = 1/theta) = theta; generates the
    exchangeable Cuadras-Auge copula.
point_mass
    X = 1; generates the comonotone (upper Frechet bound) copula.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError, UnsupportedOperationError
from .numerics import adaptive_quad, increasing_inverse

FAMILIES = (
    "frechet",
    "weibull_galambos",
    "bounded_exp",
    "uniform_half",
    "two_point",
    "point_mass",
    "custom",
)


@dataclass(frozen=True)
class DistributionSpec:
    """Serializable tag (family, theta) selecting a built-in family."""

    family: str
    theta: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpecError(f"unknown family {self.family!r}")

    def to_json(self) -> dict:
        out = {"family": self.family}
        if self.theta is not None:
            out["theta"] = self.theta
        return out

    @classmethod
    def from_json(cls, obj) -> "DistributionSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict):
            raise InvalidSpecError("distribution spec must be a JSON object")
        unknown = set(obj) - {"family", "theta"}
        if unknown:
            raise InvalidSpecError(f"unknown spec fields {sorted(unknown)}")
        if "family" not in obj:
            raise InvalidSpecError("distribution spec needs a 'family' field")
        theta = obj.get("theta")
        return cls(obj["family"], None if theta is None else float(theta))


def _elementwise(x, func):
    """Apply ``func`` to a float array view of x; scalars in, scalars out."""
    arr = np.asarray(x, dtype=float)
    out = func(arr)
    return out[()] if np.ndim(x) == 0 else out


class UnitMeanDistribution:
    """Base class: a distribution F on [0, inf) with unit mean.

    Attributes
    ----------
    lower_support, upper_support : float
        Endpoints of the support; ``upper_support`` may be +inf.
    mean : float
        Equal to 1.0 for every built-in family.
    is_continuous : bool
        True when F has no atoms.
    """

    family = "custom"
    theta = None
    mean = 1.0
    is_continuous = True
    lower_support = 0.0
    upper_support = np.inf
    has_density = False

    def cdf(self, t):
        raise NotImplementedError

    def cdf_left(self, t):
        """Left-limit version F(t-); equals the cdf for continuous F."""
        return self.cdf(t)

    def quantile(self, p):
        """Generalized inverse F^{-1}(p) = inf{x > 0 : F(x) >= p}.

        Returns ``lower_support`` at p = 0 and ``upper_support`` at
        p = 1 (+inf sentinel for unbounded support).
        """
        raise NotImplementedError

    def pdf(self, t):
        raise UnsupportedOperationError(f"{self.family} has no density")

    def sample(self, rng, size=None):
        """Draw from F by inversion of a uniform variate."""
        return self.quantile(rng.random(size))

    def sample_size_biased(self, rng, size=None):
        """Draw from the probability law x dF(x); strictly positive a.s."""
        if np.isfinite(self.upper_support):
            return self._size_biased_by_rejection(rng, size)
        raise UnsupportedOperationError(
            f"no size-biased sampler registered for {self.family!r} "
            "with unbounded support"
        )

    def _size_biased_by_rejection(self, rng, size=None):
        # draw X ~ F, accept with probability X/u_F; exact for bounded support
        scalar = size is None
        n = 1 if scalar else int(size)
        out = np.empty(n)
        filled = 0
        while filled < n:
            m = max(n - filled, 32)
            x = np.asarray(self.sample(rng, m), dtype=float)
            keep = x[rng.random(m) * self.upper_support < x]
            k = min(keep.size, n - filled)
            out[filled:filled + k] = keep[:k]
            filled += k
        return float(out[0]) if scalar else out

    def spec(self) -> DistributionSpec:
        if self.family == "custom":
            raise InvalidSpecError("custom distributions have no serializable spec")
        return DistributionSpec(self.family, self.theta)

    def __eq__(self, other):
        if isinstance(other, UnitMeanDistribution):
            if self.family == "custom" or other.family == "custom":
                return self is other
            return (self.family, self.theta) == (other.family, other.theta)
        return NotImplemented

    def __hash__(self):
        if self.family == "custom":
            return object.__hash__(self)
        return hash((self.family, self.theta))

    def __repr__(self):
        if self.theta is None:
            return f"{type(self).__name__}()"
        return f"{type(self).__name__}(theta={self.theta})"


class Frechet(UnitMeanDistribution):
    """Frechet distribution with shape 1/theta, scaled to unit mean."""

    family = "frechet"

    def __init__(self, theta):
        if not 0.0 < theta < 1.0:
            raise InvalidSpecError(f"frechet needs theta in (0, 1), got {theta}")
        self.theta = float(theta)
        self._scale = math.gamma(1.0 - self.theta)
        self.has_density = True

    def cdf(self, t):
        th = self.theta

        def f(t):
            with np.errstate(divide="ignore"):
                z = np.where(t > 0.0, self._scale * np.maximum(t, 0.0), 0.0)
                # z = 0 gives z**(-1/th) = inf and exp(-inf) = 0 = F(0)
                return np.exp(-z ** (-1.0 / th))

        return _elementwise(t, f)

    def quantile(self, p):
        th = self.theta

        def f(p):
            with np.errstate(divide="ignore"):
                return (-np.log(p)) ** (-th) / self._scale

        return _elementwise(p, f)

    def pdf(self, t):
        th = self.theta

        def f(t):
            pos = t > 0.0
            z = np.where(pos, self._scale * t, 1.0)
            val = np.exp(-z ** (-1.0 / th)) * (self._scale / th) * z ** (-1.0 / th - 1.0)
            return np.where(pos, val, 0.0)

        return _elementwise(t, f)

    def sample_size_biased(self, rng, size=None):
        # x dF(x) is the law of A^(-theta)/Gamma(1-theta), A ~ Gamma(1-theta, 1)
        a = rng.gamma(1.0 - self.theta, size=size)
        return a ** (-self.theta) / self._scale


class WeibullGalambos(UnitMeanDistribution):
    """Weibull distribution with shape 1/theta, scaled to unit mean."""

    family = "weibull_galambos"

    def __init__(self, theta):
        if not theta > 0.0:
            raise InvalidSpecError(f"weibull_galambos needs theta > 0, got {theta}")
        self.theta = float(theta)
        self._scale = math.gamma(1.0 + self.theta)
        self.has_density = True

    def cdf(self, t):
        th = self.theta

        def f(t):
            z = np.maximum(self._scale * t, 0.0)
            return -np.expm1(-z ** (1.0 / th))

        return _elementwise(t, f)

    def quantile(self, p):
        th = self.theta

        def f(p):
            with np.errstate(divide="ignore"):
                return (-np.log1p(-p)) ** th / self._scale

        return _elementwise(p, f)

    def pdf(self, t):
        th = self.theta

        def f(t):
            pos = t > 0.0
            z = np.where(pos, self._scale * t, 1.0)
            val = np.exp(-z ** (1.0 / th)) * (self._scale / th) * z ** (1.0 / th - 1.0)
            return np.where(pos, val, 0.0)

        return _elementwise(t, f)

    def sample_size_biased(self, rng, size=None):
        # x dF(x) is the law of A^theta/Gamma(1+theta), A ~ Gamma(1+theta, 1)
        a = rng.gamma(1.0 + self.theta, size=size)
        return a ** self.theta / self._scale


class BoundedExp(UnitMeanDistribution):
    """Exponential distribution squashed to the bounded support [0, (1+theta)/theta]."""

    family = "bounded_exp"

    def __init__(self, theta):
        if theta < 0.0:
            raise InvalidSpecError(f"bounded_exp needs theta >= 0, got {theta}")
        self.theta = float(theta)
        self.upper_support = (1.0 + theta) / theta if theta > 0.0 else np.inf
        self.has_density = True

    def cdf(self, t):
        th = self.theta
        if th == 0.0:
            return _elementwise(t, lambda t: -np.expm1(-np.maximum(t, 0.0)))

        def f(t):
            z = 1.0 - np.clip(t, 0.0, self.upper_support) * th / (1.0 + th)
            return 1.0 - z ** (1.0 / th)

        return _elementwise(t, f)

    def quantile(self, p):
        th = self.theta
        if th == 0.0:
            def f(p):
                with np.errstate(divide="ignore"):
                    return -np.log1p(-p)
        else:
            def f(p):
                return (1.0 + th) / th * (1.0 - (1.0 - p) ** th)

        return _elementwise(p, f)

    def pdf(self, t):
        th = self.theta
        if th == 0.0:
            return _elementwise(t, lambda t: np.where(t > 0.0, np.exp(-t), 0.0))

        def f(t):
            inside = (t > 0.0) & (t < self.upper_support)
            z = 1.0 - np.where(inside, t, 0.0) * th / (1.0 + th)
            return np.where(inside, z ** (1.0 / th - 1.0) / (1.0 + th), 0.0)

        return _elementwise(t, f)

    def sample_size_biased(self, rng, size=None):
        if self.theta == 0.0:
            # x e^-x dx is the Gamma(2, 1) density
            return rng.gamma(2.0, size=size)
        return self._size_biased_by_rejection(rng, size)


class UniformHalf(UnitMeanDistribution):
    """Uniform distribution on [0, 2]: F(t) = t/2."""

    family = "uniform_half"
    upper_support = 2.0
    has_density = True

    def cdf(self, t):
        return _elementwise(t, lambda t: np.clip(t, 0.0, 2.0) / 2.0)

    def quantile(self, p):
        return _elementwise(p, lambda p: 2.0 * p)

    def pdf(self, t):
        return _elementwise(t, lambda t: np.where((t > 0.0) & (t < 2.0), 0.5, 0.0))

    def sample_size_biased(self, rng, size=None):
        # x dF has cdf x^2/4 on [0, 2], so the inverse is 2 sqrt(u)
        return 2.0 * np.sqrt(rng.random(size))


class TwoPoint(UnitMeanDistribution):
    """Two-point law P(X = 0) = 1-theta, P(X = 1/theta) = theta."""

    family = "two_point"
    is_continuous = False

    def __init__(self, theta):
        if not 0.0 < theta <= 1.0:
            raise InvalidSpecError(f"two_point needs theta in (0, 1], got {theta}")
        self.theta = float(theta)
        self.upper_support = 1.0 / self.theta

    def cdf(self, t):
        th = self.theta

        def f(t):
            return np.where(t < 0.0, 0.0, np.where(t < 1.0 / th, 1.0 - th, 1.0))

        return _elementwise(t, f)

    def cdf_left(self, t):
        th = self.theta

        def f(t):
            return np.where(t <= 0.0, 0.0, np.where(t <= 1.0 / th, 1.0 - th, 1.0))

        return _elementwise(t, f)

    def quantile(self, p):
        th = self.theta

        def f(p):
            return np.where(p > 1.0 - th, 1.0 / th, 0.0)

        return _elementwise(p, f)

    def sample_size_biased(self, rng, size=None):
        # x dF puts all its mass at 1/theta; the atom at zero has zero weight
        value = 1.0 / self.theta
        return value if size is None else np.full(size, value)


class PointMass(UnitMeanDistribution):
    """Degenerate law X = 1; both support endpoints equal one."""

    family = "point_mass"
    is_continuous = False
    lower_support = 1.0
    upper_support = 1.0

    def cdf(self, t):
        return _elementwise(t, lambda t: np.where(t >= 1.0, 1.0, 0.0))

    def cdf_left(self, t):
        return _elementwise(t, lambda t: np.where(t > 1.0, 1.0, 0.0))

    def quantile(self, p):
        # F^{-1} is identically one; both support endpoints coincide
        return _elementwise(p, lambda p: np.ones_like(p))

    def sample_size_biased(self, rng, size=None):
        return 1.0 if size is None else np.ones(size)


class CustomDistribution(UnitMeanDistribution):
    """User-registered unit-mean distribution built from callables.

    Parameters
    ----------
    cdf : callable
        Vectorized right-continuous distribution function.
    quantile : callable, optional
        Generalized inverse; computed by monotone bisection on ``cdf``
        when omitted (requires a finite bisection bracket, i.e. either a
        bounded support or patience with the doubling search).
    upper_support, lower_support : float
        Support endpoints; ``upper_support`` may be +inf.
    is_continuous : bool
    pdf, cdf_left, size_biased_sampler : callable, optional
    mean : float
        Defaults to 1.0; stored as-is (no renormalization is attempted).
    """

    def __init__(self, cdf, *, quantile=None, lower_support=0.0,
                 upper_support=np.inf, is_continuous=True, pdf=None,
                 cdf_left=None, size_biased_sampler=None, mean=1.0,
                 name="custom"):
        self._cdf = cdf
        self._quantile = quantile
        self._pdf = pdf
        self._cdf_left = cdf_left
        self._size_biased = size_biased_sampler
        self.lower_support = float(lower_support)
        self.upper_support = float(upper_support)
        self.is_continuous = bool(is_continuous)
        self.has_density = pdf is not None
        self.mean = float(mean)
        self.name = name

    def cdf(self, t):
        return _elementwise(t, lambda t: np.asarray(self._cdf(t), dtype=float))

    def cdf_left(self, t):
        if self._cdf_left is not None:
            return _elementwise(t, lambda t: np.asarray(self._cdf_left(t), dtype=float))
        if self.is_continuous:
            return self.cdf(t)
        raise UnsupportedOperationError(
            "a discontinuous custom distribution needs an explicit cdf_left"
        )

    def quantile(self, p):
        if self._quantile is not None:
            return _elementwise(p, lambda p: np.asarray(self._quantile(p), dtype=float))
        return _elementwise(p, np.vectorize(self._quantile_by_bisection))

    def _quantile_by_bisection(self, p):
        if p <= self._cdf(0.0):
            return self.lower_support
        if p >= 1.0:
            return self.upper_support
        hi = self.upper_support
        if np.isinf(hi):
            hi = max(2.0 * self.lower_support, 1.0)
            while self._cdf(hi) < p:
                hi *= 2.0
        return increasing_inverse(self._cdf, p, self.lower_support, hi)

    def pdf(self, t):
        if self._pdf is None:
            raise UnsupportedOperationError("custom distribution has no density")
        return _elementwise(t, lambda t: np.asarray(self._pdf(t), dtype=float))

    def sample_size_biased(self, rng, size=None):
        if self._size_biased is not None:
            return self._size_biased(rng, size)
        return super().sample_size_biased(rng, size)

    def __repr__(self):
        return f"CustomDistribution({self.name!r})"


def make_distribution(spec) -> UnitMeanDistribution:
    """Build a built-in unit-mean distribution from a DistributionSpec.

    Accepts a DistributionSpec, a dict like {"family": ..., "theta": ...},
    or a JSON string of that dict.  Raises InvalidSpecError for unknown
    families, out-of-range parameters, or a spurious theta.
    """
    if not isinstance(spec, DistributionSpec):
        spec = DistributionSpec.from_json(spec)
    family, theta = spec.family, spec.theta
    if family in ("uniform_half", "point_mass"):
        if theta is not None:
            raise InvalidSpecError(f"{family} takes no theta parameter")
        return UniformHalf() if family == "uniform_half" else PointMass()
    if family == "custom":
        raise InvalidSpecError(
            "custom distributions are registered programmatically, "
            "not via make_distribution"
        )
    if theta is None:
        raise InvalidSpecError(f"{family} requires a theta parameter")
    if family == "frechet":
        return Frechet(theta)
    if family == "weibull_galambos":
        return WeibullGalambos(theta)
    if family == "bounded_exp":
        return BoundedExp(theta)
    if family == "two_point":
        return TwoPoint(theta)
    raise InvalidSpecError(f"unknown family {family!r}")


def bound_support(dist, theta, laplace) -> CustomDistribution:
    """Squash a distribution with support [0, inf) onto a bounded support.

    If X ~ F, the transformed variable (1 - exp(-theta X))/(1 - phi(theta))
    with phi the Laplace transform of F has unit mean, bounded support
    [0, 1/(1 - phi(theta))], and distribution function
    F_theta(t) = F(-log(1 - t (1 - phi(theta)))/theta).  As theta -> 0
    the transform degenerates to the identity.

    Parameters
    ----------
    dist : UnitMeanDistribution
        Distribution with support [0, inf).
    theta : float
        Positive squashing rate.
    laplace : callable
        The Laplace transform u -> E[exp(-u X)] of ``dist``.
    """
    if theta <= 0.0:
        raise InvalidSpecError(f"bound_support needs theta > 0, got {theta}")
    if np.isfinite(dist.upper_support):
        raise InvalidSpecError("bound_support expects an unbounded-support input")
    weight = 1.0 - laplace(theta)
    upper = 1.0 / weight

    def forward(t):
        # map the bounded axis back to the original one
        with np.errstate(divide="ignore", invalid="ignore"):
            return -np.log1p(-np.clip(np.asarray(t, dtype=float), 0.0, upper) * weight) / theta

    def cdf(t):
        return dist.cdf(forward(t))

    def quantile(p):
        return -np.expm1(-theta * np.asarray(dist.quantile(p), dtype=float)) / weight

    pdf = None
    if dist.has_density:
        def pdf(t):
            t = np.asarray(t, dtype=float)
            inside = (t > 0.0) & (t < upper)
            x = forward(np.where(inside, t, 0.0))
            jac = weight / (theta * (1.0 - np.where(inside, t, 0.0) * weight))
            return np.where(inside, dist.pdf(x) * jac, 0.0)

    return CustomDistribution(
        cdf,
        quantile=quantile,
        upper_support=upper,
        is_continuous=dist.is_continuous,
        pdf=pdf,
        name=f"bounded({dist!r}, theta={theta})",
    )


def numeric_mean(dist, *, epsabs=1e-12):
    """Unit-mean check: evaluate int_0^{u_F} (1 - F(x)) dx by quadrature."""
    value, _ = adaptive_quad(
        lambda x: 1.0 - dist.cdf(x), 0.0, dist.upper_support, epsabs=epsabs
    )
    return value
