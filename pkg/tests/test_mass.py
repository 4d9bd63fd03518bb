import math

import numpy as np
import pytest
from scipy.integrate import quad

from kgwall.mass import (
    Bounded, Delta, DeltaSquared, ModeratenessReport, RegularizedMass, Zero,
    mass_from_dict,
    moderateness_exponent, mollifier, mollifier_constant,
    negligibility_profile, negligible_perturbation, wall_case,
    profile_samples, regularize, scaled_mollifier,
)

LADDER = [0.1, 0.05, 0.025, 0.0125]


def test_mollifier_constant():
    assert round(mollifier_constant(), 4) == 2.2523


def test_mollifier_has_unit_mass():
    integral, _ = quad(mollifier, -1.0, 1.0, epsabs=1e-13)
    assert integral == pytest.approx(1.0, abs=1e-8)


def test_mollifier_values():
    assert mollifier(0.0) == pytest.approx(mollifier_constant() / math.e)
    assert mollifier(1.0) == 0.0
    assert mollifier(-2.5) == 0.0
    assert np.all(mollifier(np.linspace(-3, 3, 101)) >= 0)


def test_scaled_mollifier_sums_to_one(wall_grid):
    samples = scaled_mollifier(wall_grid.x - 40.0, 0.1)
    assert wall_grid.dx * np.sum(samples) == pytest.approx(1.0, abs=1e-4)


def test_delta_peak(wall_grid):
    mass = regularize(Delta(40.0), 0.05, wall_grid)
    peak = mollifier_constant() / (math.e * 0.05)
    assert mass.sup_norm == pytest.approx(peak, rel=1e-12)
    assert wall_grid.x[np.argmax(mass.samples)] == 40.0


def test_delta_squared_is_the_square(wall_grid):
    delta = regularize(Delta(40.0), 0.05, wall_grid)
    square = regularize(DeltaSquared(40.0), 0.05, wall_grid)
    assert np.array_equal(square.samples, delta.samples ** 2)


@pytest.mark.parametrize("spec, exponent", [
    (Delta(40.0), 1.0),
    (DeltaSquared(40.0), 2.0),
])
def test_moderateness_exponent(wall_grid, spec, exponent):
    report = moderateness_exponent(spec, LADDER, wall_grid)
    assert report.exponent == pytest.approx(exponent, abs=0.05)
    assert report.residual < 1e-6
    assert len(report.pairs) == len(LADDER)


def test_zero_net_is_moderate_with_exponent_zero(wall_grid):
    report = moderateness_exponent(Zero(), LADDER, wall_grid)
    assert report.exponent == 0.0
    assert report.residual == 0.0


@pytest.mark.parametrize("epsilon", [0.1, 0.05])
def test_delta_scaling_law(wall_grid, epsilon):
    wide = regularize(Delta(40.0), epsilon, wall_grid)
    narrow = regularize(Delta(40.0), epsilon / 2, wall_grid)
    assert narrow.sup_norm / wide.sup_norm == pytest.approx(2.0, abs=1e-6)


def test_fit_recovers_a_synthetic_power_law():
    eps = [0.2, 0.1, 0.05, 0.025]
    report = ModeratenessReport.fit(eps, [3.0 * e ** -1.7 for e in eps])
    assert abs(report.exponent - 1.7) <= 1e-10


def test_bounded_constant_is_moderate_with_exponent_zero(coarse_box):
    spec = Bounded(profile={"Shape": "constant", "Value": 1.0})
    report = moderateness_exponent(spec, [0.5, 0.25, 0.125], coarse_box)
    assert report.sup_norms == pytest.approx([1.0, 1.0, 1.0], rel=1e-12)
    assert report.exponent == pytest.approx(0.0, abs=0.05)


def test_moderateness_needs_three_epsilons(wall_grid):
    with pytest.raises(ValueError):
        moderateness_exponent(Delta(40.0), [0.1, 0.05], wall_grid)


def test_constant_is_reproduced(coarse_box):
    spec = Bounded(profile={"Shape": "constant", "Value": 2.5})
    mass = regularize(spec, 0.3, coarse_box)
    assert np.max(np.abs(mass.samples - 2.5)) < 1e-12


def test_bounded_mollification_is_non_negative(coarse_box):
    spec = Bounded(profile={"Shape": "step", "Left": 30.0, "Right": 40.0})
    mass = regularize(spec, 0.5, coarse_box)
    assert np.all(mass.samples >= 0)
    assert mass.sup_norm <= 1.0 + 1e-12


def test_hump_profile_peak(wall_grid):
    table = profile_samples(
        {"Shape": "hump", "Center": 45.0, "Width": 3.0, "Amplitude": 2.0},
        wall_grid,
    )
    assert np.max(table) == pytest.approx(2.0, rel=1e-12)
    assert np.all(table[wall_grid.x <= 42.0] == 0)


def test_bounded_needs_one_source():
    with pytest.raises(ValueError):
        Bounded()
    with pytest.raises(ValueError):
        Bounded(samples=[1.0], profile={"Shape": "constant"})
    with pytest.raises(ValueError):
        Bounded(samples=[1.0, -1.0])


def test_unknown_profile(coarse_box):
    with pytest.raises(ValueError):
        profile_samples({"Shape": "spiral"}, coarse_box)


@pytest.mark.parametrize("position, epsilon", [
    (120.0, 0.05), (-1.0, 0.05), (0.02, 0.05), (99.99, 0.05),
])
def test_position_checks(wall_grid, position, epsilon):
    with pytest.raises(ValueError):
        regularize(Delta(position), epsilon, wall_grid)


@pytest.mark.parametrize("epsilon", [0.0, -0.1, 1.5])
def test_epsilon_range(wall_grid, epsilon):
    with pytest.raises(ValueError):
        regularize(Delta(40.0), epsilon, wall_grid)


def test_regularized_mass_rejects_bad_samples(torus):
    with pytest.raises(ValueError):
        RegularizedMass(0.1, -np.ones(torus.n), torus)
    with pytest.raises(ValueError):
        RegularizedMass(0.1, np.full(torus.n, np.inf), torus)
    with pytest.raises(ValueError):
        RegularizedMass(0.1, np.ones(torus.n + 1), torus)


def test_unmollified_table(torus):
    mass = RegularizedMass(0.0, np.ones(torus.n), torus)
    assert mass.epsilon == 0.0
    assert not mass.is_zero()


def test_exponential_perturbation(wall_grid):
    base = regularize(Delta(40.0), 0.1, wall_grid)
    perturbed = negligible_perturbation(base)
    difference = np.max(np.abs(perturbed.samples - base.samples))
    assert difference == pytest.approx(base.sup_norm * math.exp(-10),
                                       rel=1e-6)


def test_power_perturbation(wall_grid):
    base = regularize(Delta(40.0), 0.1, wall_grid)
    perturbed = negligible_perturbation(base, "power", 2.0)
    difference = np.max(np.abs(perturbed.samples - base.samples))
    assert difference == pytest.approx(0.01 * base.sup_norm, rel=1e-10)


def test_perturbation_of_zero_is_zero(wall_grid):
    base = regularize(Zero(), 0.1, wall_grid)
    assert negligible_perturbation(base).is_zero()
    assert negligible_perturbation(base, "power", 2.0).is_zero()


def test_perturbation_arguments(wall_grid):
    base = regularize(Delta(40.0), 0.1, wall_grid)
    with pytest.raises(ValueError):
        negligible_perturbation(base, "power")
    with pytest.raises(ValueError):
        negligible_perturbation(base, "linear", 1.0)


def test_negligibility_profile():
    eps = [0.1, 0.05, 0.025]
    exponential = [math.exp(-1 / e) for e in eps]
    profile = negligibility_profile(exponential, eps, range(1, 7))
    assert all(negligible for ratios, negligible in profile.values())

    power = [e ** 2 for e in eps]
    profile = negligibility_profile(power, eps, [1, 2, 3])
    assert profile[1][1]
    assert profile[2][1]
    assert not profile[3][1]
    assert profile[3][0] == pytest.approx([10.0, 20.0, 40.0])


def test_negligibility_profile_noise_floor():
    eps = [0.1, 0.05, 0.025]
    differences = [1e-3, 1e-12, 1e-12]
    profile = negligibility_profile(differences, eps, [6], floor=1e-10)
    assert profile[6][1]
    profile = negligibility_profile(differences, eps, [6], floor=[0, 0, 0])
    assert not profile[6][1]


def test_mass_from_dict():
    assert mass_from_dict({"Mass": "zero"}) == Zero()
    assert mass_from_dict({"Mass": "delta", "Position": 30.0}) == Delta(30.0)
    assert mass_from_dict({"Mass": "delta-squared"}) == DeltaSquared(40.0)
    spec = mass_from_dict({"Mass": "bounded",
                           "Profile": {"Shape": "constant"}})
    assert spec.kind == "bounded"
    with pytest.raises(ValueError):
        mass_from_dict({"Mass": "delta-cubed"})


def test_wall_cases():
    assert wall_case(1) == Zero()
    assert wall_case(2) == Delta(40.0)
    assert wall_case(3) == DeltaSquared(40.0)
    assert wall_case(3).singular
    with pytest.raises(ValueError):
        wall_case(4)
