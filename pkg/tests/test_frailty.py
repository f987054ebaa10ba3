"""Tests for the shared-frailty first-passage sampler."""

import math

import numpy as np
import pytest

from evcop import (
    BoundedExp,
    CopulaModel,
    Frechet,
    FrailtyTrajectory,
    NumericError,
    PointMass,
    TwoPoint,
    UniformHalf,
    UnsupportedOperationError,
    copula_cdf,
    derive_rng,
    evaluate_H,
    first_passage_times,
    ks_two_sample,
    ks_uniform,
    min_stability_sample,
    sample_definetti,
    simulate_trajectory,
    solve_first_passage,
    stdf_inclusion_exclusion,
)

UNIFORM2 = CopulaModel((UniformHalf(), UniformHalf()))


def test_evaluate_H_before_first_arrival_is_zero():
    assert evaluate_H(UNIFORM2, 0, 0.4, [1.0, 2.5]) == 0.0


def test_evaluate_H_hand_value():
    # one arrival below t*u = 2: H = -log F(1.0/1.0) = log 2
    assert evaluate_H(UNIFORM2, 0, 1.0, [1.0, 2.5]) == pytest.approx(math.log(2.0))


def test_evaluate_H_compound_poisson_for_two_point():
    # two_point margins turn H into a compound Poisson path with jumps
    # of size -log(1-theta) at theta * S(k); the left-limit cdf makes
    # the boundary arrival S(k) = t/theta count as already jumped
    theta = 0.5
    model = CopulaModel((TwoPoint(theta), TwoPoint(theta)))
    arrivals = [0.6, 1.4, 1.9, 2.4]
    t = 0.95
    expected = -math.log(1 - theta) * sum(1 for s in arrivals if theta * s <= t)
    assert evaluate_H(model, 0, t, arrivals) == pytest.approx(expected)
    boundary = -math.log(1 - theta) * 2
    assert evaluate_H(model, 0, 0.7, arrivals) == pytest.approx(boundary)


def test_evaluate_H_killing_indicator():
    # point mass margin: b = u = 1, the path jumps to +inf at t = S(1)
    model = CopulaModel((PointMass(),))
    assert evaluate_H(model, 0, 2.0, [1.5, 3.0]) == np.inf
    assert evaluate_H(model, 0, 1.0, [1.5, 3.0]) == 0.0


def test_evaluate_H_requires_enough_arrivals():
    with pytest.raises(ValueError):
        evaluate_H(UNIFORM2, 0, 3.0, [1.0, 2.5])
    with pytest.raises(UnsupportedOperationError):
        evaluate_H(CopulaModel((Frechet(0.5),)), 0, 1.0, [1.0])


def test_trajectory_invariants():
    for r in range(50):
        tr = simulate_trajectory(UNIFORM2, derive_rng(3, "traj", r))
        assert np.all(np.diff(tr.arrival_sums) > 0.0)
        assert np.all(tr.crossing_index >= 1)
        assert np.all(tr.levels > tr.triggers)
        assert tr.arrival_sums.size >= tr.crossing_index.max() + 1


def test_first_passage_hand_example():
    # I = 1, S = (1, .), xi = log 2: Y = exp(log 2)/2 = 1 and f(1) = 0
    model = CopulaModel((UniformHalf(),))
    trajectory = FrailtyTrajectory(
        np.array([1.0, 9.9]), np.array([math.log(2.0)]),
        np.array([1]), np.array([1.0]),
    )
    closed = first_passage_times(model, trajectory)
    numeric = first_passage_times(model, trajectory, force_bisection=True)
    assert closed[0] == pytest.approx(1.0, abs=1e-14)
    assert numeric[0] == pytest.approx(1.0, abs=1e-10)


def test_closed_form_root_matches_bisection():
    for r in range(200):
        rng = derive_rng(11, "roots", r)
        tr = simulate_trajectory(UNIFORM2, rng)
        closed = first_passage_times(UNIFORM2, tr)
        numeric = first_passage_times(UNIFORM2, tr, force_bisection=True)
        assert np.max(np.abs(closed - numeric)) < 1e-10


def test_solve_first_passage_validates_bracket():
    f = lambda t: t - 1.0
    assert solve_first_passage(f, (0.5, 2.0)) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(NumericError):
        solve_first_passage(f, (1.5, 2.0))
    with pytest.raises(NumericError):
        solve_first_passage(f, (0.1, 0.9))


def test_unsupported_margins_rejected():
    with pytest.raises(UnsupportedOperationError):
        sample_definetti(CopulaModel((Frechet(0.5), Frechet(0.5))), 10)
    with pytest.raises(UnsupportedOperationError):
        sample_definetti(CopulaModel((TwoPoint(0.5), TwoPoint(0.5))), 10)
    with pytest.raises(UnsupportedOperationError):
        sample_definetti(CopulaModel((PointMass(),)), 10)


def test_reproducibility_and_engine_contract():
    a = sample_definetti(UNIFORM2, 3000, seed=5)
    b = sample_definetti(UNIFORM2, 3000, seed=5)
    assert np.array_equal(a.values, b.values)
    rows = sample_definetti(UNIFORM2, 3000, seed=5, engine="rows")
    rows2 = sample_definetti(UNIFORM2, 3000, seed=5, engine="rows", threads=4)
    assert np.array_equal(rows.values, rows2.values)
    assert a.method == "definetti"
    assert a.n == 3000 and a.dim == 2
    with pytest.raises(ValueError):
        sample_definetti(UNIFORM2, 10, engine="turbo")


def test_engines_agree_in_distribution():
    batch = sample_definetti(UNIFORM2, 20000, seed=21).values
    rows = sample_definetti(UNIFORM2, 20000, seed=22, engine="rows").values
    for j in range(2):
        assert ks_two_sample(batch[:, j], rows[:, j]).passed
    assert ks_two_sample(batch.min(axis=1), rows.min(axis=1)).passed


def test_single_margin_rows_are_uniform():
    model = CopulaModel((UniformHalf(),))
    batch = sample_definetti(model, 100000, seed=7)
    assert ks_uniform(batch.values[:, 0], alpha=0.01).passed


def test_margin_uniformity_and_exchangeability():
    batch = sample_definetti(UNIFORM2, 100000, seed=8)
    for j in range(2):
        assert ks_uniform(batch.values[:, j], alpha=0.01).passed
    # exchangeable model: the two margins have the same joint role
    assert ks_two_sample(batch.values[:, 0], batch.values[:, 1]).passed


def test_min_stability_statistic_is_unit_exponential():
    batch = sample_definetti(UNIFORM2, 100000, seed=9)
    rng = np.random.default_rng(4)
    t = rng.random(2) * 1.5 + 0.25
    rate = stdf_inclusion_exclusion(UNIFORM2, 1.0 / t).value
    sample = min_stability_sample(batch.values, t, rate)
    assert ks_uniform(-np.expm1(-sample), alpha=0.01).passed


def test_empirical_copula_matches_oracle_on_grid():
    n = 100000
    batch = sample_definetti(UNIFORM2, n, seed=10)
    for a in (0.25, 0.5, 0.75):
        for b in (0.25, 0.5, 0.75):
            c = copula_cdf(UNIFORM2, (a, b), method="inclusion_exclusion")
            emp = np.mean((batch.values[:, 0] <= a) & (batch.values[:, 1] <= b))
            assert abs(emp - c) < 4.0 * math.sqrt(c * (1.0 - c) / n)


def test_general_margins_through_bisection_path():
    dist = BoundedExp(0.5)
    model = CopulaModel((dist, dist))
    n = 20000
    batch = sample_definetti(model, n, seed=12)
    for j in range(2):
        assert ks_uniform(batch.values[:, j], alpha=0.01).passed
    c = copula_cdf(model, (0.5, 0.5), method="inclusion_exclusion")
    emp = np.mean((batch.values[:, 0] <= 0.5) & (batch.values[:, 1] <= 0.5))
    assert abs(emp - c) < 4.0 * math.sqrt(c * (1.0 - c) / n)
    rows = sample_definetti(model, 2000, seed=13, engine="rows")
    assert ks_two_sample(batch.values[:, 0], rows.values[:, 0]).passed


def test_mixed_margin_groups():
    model = CopulaModel((UniformHalf(), BoundedExp(2.0), UniformHalf()))
    n = 20000
    batch = sample_definetti(model, n, seed=14)
    for j in range(3):
        assert ks_uniform(batch.values[:, j], alpha=0.01).passed
    c = copula_cdf(model, (0.6, 0.5, 0.4), method="inclusion_exclusion")
    emp = np.mean(np.all(batch.values <= [0.6, 0.5, 0.4], axis=1))
    assert abs(emp - c) < 4.0 * math.sqrt(c * (1.0 - c) / n)
