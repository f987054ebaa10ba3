"""Tests for the distribution <-> Levy measure bijection."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from evcop import (
    BoundedExp,
    CopulaModel,
    Frechet,
    InvalidSpecError,
    LevyMeasure,
    PointMass,
    TwoPoint,
    UniformHalf,
    UnsupportedOperationError,
    WeibullGalambos,
    distribution_density_from_levy,
    distribution_from_levy,
    levy_density_from_distribution,
    levy_from_distribution,
    psi_from_distribution,
    psi_from_levy,
    stdf_closed_form,
    stdf_inclusion_exclusion,
    stdf_via_levy,
)

CONTINUOUS_BUILTINS = [
    UniformHalf(),
    Frechet(0.3),
    Frechet(0.5),
    Frechet(0.8),
    WeibullGalambos(0.7),
    WeibullGalambos(2.0),
    BoundedExp(0.5),
]

ALL_BUILTINS = CONTINUOUS_BUILTINS + [BoundedExp(0.0), TwoPoint(0.5), PointMass()]


def _grid(dist, points=200):
    hi = dist.upper_support
    if not np.isfinite(hi):
        hi = float(dist.quantile(1.0 - 1e-6))
    return np.linspace(1e-9, hi * (1.0 - 1e-9), points)


def test_uniform_half_survival_closed_form():
    nu = levy_from_distribution(UniformHalf())
    t = np.linspace(0.0, 8.0, 50)
    assert np.max(np.abs(np.asarray(nu.survival(t)) - 2.0 * np.exp(-t))) < 1e-14
    assert nu.killing_rate == 0.0
    assert nu.total_mass == 2.0
    assert nu.survival_inverse(1.0) == pytest.approx(math.log(2.0), abs=1e-14)


def test_point_mass_measure_is_killing_only():
    nu = levy_from_distribution(PointMass())
    for t in (0.1, 1.0, 100.0):
        assert nu.survival(t) == 1.0
    assert nu.killing_rate == 1.0
    assert nu.total_mass == 1.0
    # pure killing: Psi(u) = 1 for every u > 0
    assert psi_from_levy(nu, 3.3) == pytest.approx(1.0, abs=1e-12)


def test_frechet_survival_matches_density_integral():
    # measure density is theta x^(-1-theta)/Gamma(1-theta); integrate its
    # tail independently and compare with F^{-1}(exp(-t))
    theta = 0.4
    nu = levy_from_distribution(Frechet(theta))
    c = math.gamma(1.0 - theta)
    for t in (0.3, 1.0, 2.5):
        tail, _ = quad(lambda x: theta * x ** (-1 - theta) / c, t, np.inf, limit=300)
        assert float(nu.survival(t)) == pytest.approx(tail, rel=1e-9)
        assert float(nu.survival(t)) == pytest.approx(t ** -theta / c, rel=1e-12)


@pytest.mark.parametrize("dist", ALL_BUILTINS, ids=repr)
def test_structural_correspondences_exact(dist):
    nu = levy_from_distribution(dist)
    assert nu.killing_rate == dist.lower_support
    assert nu.total_mass == dist.upper_support


@pytest.mark.parametrize("dist", CONTINUOUS_BUILTINS, ids=repr)
def test_roundtrip_distribution_to_measure_to_distribution(dist):
    back = distribution_from_levy(levy_from_distribution(dist), is_continuous=True)
    grid = _grid(dist)
    err = np.max(np.abs(np.asarray(back.cdf(grid)) - np.asarray(dist.cdf(grid))))
    assert err < 1e-9
    assert back.mean == pytest.approx(1.0, abs=1e-7)


def test_roundtrip_measure_to_distribution_to_measure_atomic():
    # Cuadras-Auge: nu = (1/theta) delta at -log(1-theta)
    theta = 0.5
    nu = LevyMeasure.from_atom(1.0 / theta, -math.log(1.0 - theta))
    dist = distribution_from_levy(nu)
    grid = np.linspace(1e-6, 2.5, 200)
    expected = TwoPoint(theta).cdf(grid)
    assert np.max(np.abs(np.asarray(dist.cdf(grid)) - expected)) < 1e-12
    nu_back = levy_from_distribution(dist)
    tgrid = np.linspace(1e-6, 3.0, 200)
    err = np.max(
        np.abs(np.asarray(nu_back.survival(tgrid)) - np.asarray(nu.survival(tgrid)))
    )
    assert err < 1e-9


def test_roundtrip_measure_without_closed_inverse():
    # survival-only registration exercises the bisection inverse
    nu = LevyMeasure.from_survival(
        lambda t: 2.0 * np.exp(-np.asarray(t, dtype=float))[()],
        killing_rate=0.0,
        total_mass=2.0,
    )
    dist = distribution_from_levy(nu, is_continuous=True)
    grid = np.linspace(1e-6, 2.0 - 1e-6, 200)
    assert np.max(np.abs(np.asarray(dist.cdf(grid)) - grid / 2.0)) < 1e-9
    # atomic measure through bisection as well
    step = LevyMeasure.from_survival(
        lambda t: 2.0 if t < math.log(2.0) else 0.0,
        killing_rate=0.0,
        total_mass=2.0,
    )
    assert float(step.survival_inverse(1.3)) == pytest.approx(math.log(2.0), abs=1e-12)
    dist2 = distribution_from_levy(step)
    assert float(dist2.cdf(1.0)) == pytest.approx(0.5, abs=1e-12)
    assert float(dist2.cdf(2.0)) == 1.0


def test_atom_at_zero_of_F_means_bounded_measure_support():
    # F(0) = exp(-inf{x : S(x) = 0})
    theta = 0.5
    nu = levy_from_distribution(TwoPoint(theta))
    edge = -math.log(1.0 - theta)
    assert float(nu.survival(edge - 1e-12)) == pytest.approx(1.0 / theta)
    assert float(nu.survival(edge)) == 0.0
    assert math.exp(-edge) == pytest.approx(float(TwoPoint(theta).cdf(0.0)))


@pytest.mark.parametrize("dist", ALL_BUILTINS, ids=repr)
def test_psi_at_one_is_the_mean(dist):
    assert psi_from_distribution(dist, 1.0) == pytest.approx(1.0, abs=1e-8)


def test_psi_frechet_power_law():
    for theta in (0.3, 0.5, 0.8):
        dist = Frechet(theta)
        for u in (0.25, 1.0, 4.0):
            assert psi_from_distribution(dist, u) == pytest.approx(
                u**theta, abs=1e-8
            )


def test_psi_basics_and_concavity():
    dist = WeibullGalambos(0.7)
    assert psi_from_distribution(dist, 0.0) == 0.0
    grid = np.linspace(0.1, 5.0, 25)
    vals = np.array([psi_from_distribution(dist, u) for u in grid])
    diffs = np.diff(vals) / np.diff(grid)
    assert np.all(diffs > 0.0)           # non-decreasing
    assert np.all(np.diff(diffs) < 1e-9)  # concave: slopes decrease


def test_psi_cuadras_auge_atom():
    nu = LevyMeasure.from_atom(2.0, math.log(2.0))
    for u in (0.5, 1.0, 2.0):
        assert psi_from_levy(nu, u) == pytest.approx(
            2.0 * (1.0 - 2.0**-u), abs=1e-10
        )
    assert psi_from_levy(nu, 1.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("dist", ALL_BUILTINS, ids=repr)
def test_psi_routes_agree(dist):
    nu = levy_from_distribution(dist)
    for u in (0.1, 0.5, 1.0, 2.0, 5.0):
        assert psi_from_levy(nu, u) == pytest.approx(
            psi_from_distribution(dist, u), abs=1e-7
        )


def test_psi_routes_agree_through_bisection():
    # strip the closed-form inverse to exercise the numeric path
    dist = Frechet(0.3)
    closed = levy_from_distribution(dist)
    numeric = LevyMeasure.from_survival(
        closed.survival, killing_rate=0.0, total_mass=np.inf
    )
    assert psi_from_levy(numeric, 2.0) == pytest.approx(
        psi_from_distribution(dist, 2.0), abs=1e-7
    )


def test_stdf_via_levy_values():
    uniform = CopulaModel((UniformHalf(), UniformHalf()))
    assert stdf_via_levy(uniform, [1.0, 0.0]).value == pytest.approx(1.0, abs=1e-9)
    assert stdf_via_levy(uniform, [1.0, 1.0]).value == pytest.approx(
        stdf_inclusion_exclusion(uniform, [1.0, 1.0]).value, abs=1e-8
    )
    gumbel = CopulaModel((Frechet(0.5), Frechet(0.5)))
    assert stdf_via_levy(gumbel, [1.0, 1.0]).value == pytest.approx(
        math.sqrt(2.0), abs=1e-6
    )
    mixed = CopulaModel((Frechet(0.5), WeibullGalambos(1.0)))
    with pytest.raises(UnsupportedOperationError):
        stdf_via_levy(mixed, [1.0, 1.0])


def test_density_transforms():
    # uniform margin: f_F = 1/2 on (0, 2) maps to f_nu(x) = 2 e^{-x},
    # which is also -d/dt of the survival 2 e^{-t}
    f_nu = levy_density_from_distribution(UniformHalf())
    xs = np.linspace(0.1, 4.0, 20)
    assert np.max(np.abs(f_nu(xs) - 2.0 * np.exp(-xs))) < 1e-12
    nu = levy_from_distribution(UniformHalf())
    h = 1e-6
    numeric_slope = (np.asarray(nu.survival(xs - h)) - np.asarray(nu.survival(xs + h))) / (2 * h)
    assert np.max(np.abs(f_nu(xs) - numeric_slope)) < 1e-5

    # Gumbel margin: measure density theta x^(-1-theta)/Gamma(1-theta)
    theta = 0.5
    f_nu = levy_density_from_distribution(Frechet(theta))
    assert float(f_nu(1.0)) == pytest.approx(theta / math.gamma(1 - theta), rel=1e-10)

    # Galambos margin at theta = 1 (unit exponential): e^{-x}/(1 - e^{-x})
    f_nu = levy_density_from_distribution(WeibullGalambos(1.0))
    for x in (0.5, 1.0, 2.0):
        assert float(f_nu(x)) == pytest.approx(
            math.exp(-x) / (1.0 - math.exp(-x)), rel=1e-9
        )

    # transforming back recovers the original density
    nu = levy_from_distribution(UniformHalf())
    f_back = distribution_density_from_levy(nu, lambda x: 2.0 * np.exp(-np.asarray(x)))
    assert float(f_back(1.0)) == pytest.approx(0.5, rel=1e-12)

    with pytest.raises(UnsupportedOperationError):
        levy_density_from_distribution(TwoPoint(0.5))


def test_levy_measure_validation():
    with pytest.raises(InvalidSpecError):
        LevyMeasure(lambda t: 1.0, killing_rate=2.0, total_mass=1.0)
    with pytest.raises(InvalidSpecError):
        LevyMeasure.from_atom(-1.0, 1.0)
    nu = levy_from_distribution(UniformHalf())
    assert nu.moment_near_zero() < np.inf
    with pytest.raises(InvalidSpecError):
        psi_from_distribution(UniformHalf(), -1.0)
