"""Extreme-value copulas from expected scaled maxima of unit-mean variables.

The stable tail dependence function ell(t) = E[max(t_1 X_1, ..., t_d X_d)]
of independent non-negative X_i with unit means defines an extreme-value
copula.  This package evaluates that copula (closed forms, quadrature,
Monte Carlo), exposes the bijection between margins and Levy measures on
(0, inf], and simulates the copula exactly with two algorithms: a
shared-frailty first-passage construction for continuous bounded-support
margins, and an angular-representation sampler for arbitrary margins.
"""

from .distributions import (
    BoundedExp,
    CustomDistribution,
    DistributionSpec,
    Frechet,
    PointMass,
    TwoPoint,
    UniformHalf,
    UnitMeanDistribution,
    WeibullGalambos,
    bound_support,
    make_distribution,
    numeric_mean,
)
from .errors import EvcopError, InvalidSpecError, NumericError, UnsupportedOperationError
from .frailty import (
    FrailtyTrajectory,
    evaluate_H,
    first_passage_times,
    sample_definetti,
    simulate_trajectory,
    solve_first_passage,
)
from .levy import (
    LevyMeasure,
    distribution_density_from_levy,
    distribution_from_levy,
    levy_density_from_distribution,
    levy_from_distribution,
    psi_from_distribution,
    psi_from_levy,
    stdf_via_levy,
)
from .pickands import PickandsState, sample_Q, sample_pickands, simulate_row
from .sampling import SampleBatch, derive_rng
from .statlab import (
    AsymmetryResult,
    BenchReport,
    EmpiricalCopula,
    KSResult,
    asymmetry_test,
    bench_scaling,
    ks_two_sample,
    ks_uniform,
    min_stability_sample,
)
from .stdf import (
    CopulaModel,
    StdfValue,
    copula_cdf,
    stdf_closed_form,
    stdf_inclusion_exclusion,
    stdf_monte_carlo,
)

__version__ = "0.1.0"
