"""The bijection between unit-mean margins and Levy measures.

Each margin F corresponds to exactly one Levy measure nu on (0, inf]
through S_nu(t) = F^{-1}(e^{-t}); the lower/upper support endpoints of
F reappear as the killing rate and total mass of nu, and the Laplace
exponent Psi is a Bernstein function with Psi(1) = 1.  The map is
invertible, which this script demonstrates numerically.
"""

import math

import numpy as np

from evcop import (
    Frechet,
    LevyMeasure,
    TwoPoint,
    UniformHalf,
    WeibullGalambos,
    distribution_from_levy,
    levy_from_distribution,
    psi_from_distribution,
    psi_from_levy,
)

margins = [UniformHalf(), Frechet(0.5), WeibullGalambos(1.0), TwoPoint(0.5)]

print("structure carried across the bijection:")
print(f"{'margin':<28}{'killing = b_F':>16}{'total mass = u_F':>18}")
for dist in margins:
    nu = levy_from_distribution(dist)
    print(f"{dist!r:<28}{nu.killing_rate:>16g}{nu.total_mass:>18g}")

print("\nround trip margin -> measure -> margin (sup over a grid):")
for dist in (UniformHalf(), Frechet(0.5), WeibullGalambos(1.0)):
    back = distribution_from_levy(levy_from_distribution(dist), is_continuous=True)
    hi = dist.upper_support if np.isfinite(dist.upper_support) else dist.quantile(1 - 1e-6)
    grid = np.linspace(1e-9, hi, 200)
    err = np.max(np.abs(np.asarray(back.cdf(grid)) - np.asarray(dist.cdf(grid))))
    print(f"  {dist!r:<28} max |F_back - F| = {err:.2e}")

print("\nthe atomic case: mass 2 at log 2 is the two-point margin")
atom = LevyMeasure.from_atom(2.0, math.log(2.0))
dist = distribution_from_levy(atom)
print("  F(1) =", float(dist.cdf(1.0)), " F(2) =", float(dist.cdf(2.0)),
      " (two_point(0.5):", float(TwoPoint(0.5).cdf(1.0)), ", 1.0)")

print("\nLaplace exponents Psi(u), both integral routes:")
print(f"{'u':>6}{'frechet(0.5), u^0.5':>22}{'via measure':>14}{'uniform_half':>14}")
fre = Frechet(0.5)
nu_f = levy_from_distribution(fre)
nu_u = levy_from_distribution(UniformHalf())
for u in (0.25, 1.0, 2.0, 4.0):
    a = psi_from_distribution(fre, u)
    b = psi_from_levy(nu_f, u)
    c = psi_from_levy(nu_u, u)
    print(f"{u:>6}{a:>22.8f}{b:>14.8f}{c:>14.8f}")
print("  (Psi(1) = 1 is the unit-mean identity; frechet gives u^theta exactly)")
