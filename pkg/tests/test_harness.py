import pytest

from kgwall.config import validate
from kgwall.harness import (
    ConvergenceReport, EpsilonNetPlan, WallEffectResult, consistency_config,
    consistency_experiment, cross_agreement_experiment,
    existence_experiment, wall_config, stability_experiment,
    uniqueness_experiment, wall_effect_experiment, wall_effect_run,
)
from kgwall.propagation import SchemeId

from conftest import small_config


WALL_LADDER = [0.1, 0.05, 0.025]


def small_plan(**changes):
    return EpsilonNetPlan(validate(small_config(**changes)))


def test_wall_config():
    config = wall_config(3, 0.05)
    assert config["Mass"] == "delta-squared"
    assert config["TimeStep"] == 0.2
    assert config.dx == pytest.approx(0.01)
    strang = wall_config(2, 0.05, SchemeId.SPECTRAL_STRANG)
    assert strang["TimeStep"] == 0.005
    assert wall_config(1, 0.05, "spectral-strang", dt=0.01)["TimeStep"] \
        == 0.01
    with pytest.raises(ValueError):
        wall_config(4, 0.05)


def test_plan_needs_a_decreasing_ladder():
    config = validate(small_config())
    with pytest.raises(ValueError):
        EpsilonNetPlan(config, [0.5, 0.4])
    with pytest.raises(ValueError):
        EpsilonNetPlan(config, [0.3, 0.4, 0.5])
    with pytest.raises(ValueError):
        EpsilonNetPlan(config, norm="sup")


def test_existence_without_mass():
    report = existence_experiment(small_plan())
    assert report.kind == "existence"
    assert report.extras["mass_order"] == 0
    assert report.exponents["mass"] == 0.0
    assert report.differences == [0.0, 0.0]
    assert len(set(report.norms)) == 1
    assert report.exponents["growth"] == pytest.approx(0.0, abs=1e-9)
    assert report.passed
    assert report.judge() == report.verdicts


def test_existence_with_delta():
    report = existence_experiment(small_plan(Mass="delta"))
    assert report.extras["mass_order"] == 1
    assert report.exponents["mass"] == pytest.approx(1.0, abs=0.1)
    assert report.verdicts == {"moderate": True}


def test_workers_do_not_change_results():
    serial = existence_experiment(small_plan(Mass="delta"))
    threaded = existence_experiment(small_plan(Mass="delta", Workers=2))
    assert threaded.norms == serial.norms
    assert threaded.differences == serial.differences


@pytest.mark.parametrize("mode", ["exponential", "power"])
def test_uniqueness_without_mass(mode):
    report = uniqueness_experiment(small_plan(), mode)
    assert report.differences == [0.0, 0.0, 0.0]
    assert report.verdicts == {"negligible": True}
    assert report.exponents["decay"] is None


def test_uniqueness_rejects_unknown_mode():
    with pytest.raises(ValueError):
        uniqueness_experiment(small_plan(Mass="delta"), "linear")


def test_consistency_needs_bounded_mass():
    with pytest.raises(ValueError):
        consistency_experiment(small_plan(Mass="delta"))


def test_consistency_without_mass():
    report = consistency_experiment(small_plan())
    assert report.differences == [0.0, 0.0, 0.0]
    assert report.passed


def test_consistency_with_constant_mass():
    config = consistency_config(
        "constant", [0.2, 0.1, 0.05], Points=2000, TimeStep=0.05,
        FinalTime=2.0, Snapshots=[0.0, 2.0],
    )
    report = consistency_experiment(EpsilonNetPlan(config))
    assert report.extras["require_order"]
    assert all(d <= 1e-10 * report.norms[0] for d in report.differences)
    assert report.passed


def test_consistency_config():
    config = consistency_config("step", [0.2, 0.1, 0.05])
    assert config["Mass"] == "bounded"
    assert config["Profile"]["Shape"] == "step"
    assert config["Scheme"] == "spectral-strang"
    assert config["EpsilonLadder"] == [0.2, 0.1, 0.05]
    with pytest.raises(ValueError):
        consistency_config("ramp", [0.2, 0.1, 0.05])


def test_report_rejudges_from_its_numbers():
    tolerances = validate(small_config()).tolerances
    report = ConvergenceReport(
        "consistency", [0.2, 0.1, 0.05], [1.0, 1.0, 1.0],
        [4e-3, 1e-3, 2.5e-4], {"order": 2.0}, {"order": 0.0}, tolerances,
        {"require_order": True},
    )
    assert report.passed
    report.differences = [4e-3, 5e-3, 2.5e-4]
    assert report.judge()["monotone"] is False


def test_wall_effect_rejects_unknown_case():
    with pytest.raises(ValueError):
        wall_effect_experiment(4, 0.05)


def fake_result(centroids):
    times = [0.0, 8.8, 10.2, 10.6, 11.0, 12.0]
    entries = [(t, None, None) for t in times]
    return WallEffectResult(None, entries, centroids, [], [], None, None)


def test_reversal_of_the_centroid():
    nan = float('nan')
    assert fake_result([nan, 41.2, 40.1, 40.36, 40.72, 41.5]).reverses()
    assert not fake_result([nan, 41.2, 39.8, 39.4, 39.0, 38.0]).reverses()
    assert not fake_result([nan, 41.2, nan, 40.36, 40.72, 41.5]).reverses()
    assert fake_result([50.0, 41.2, 40.1, 40.36, 40.72, 41.5]).times[-1] \
        == 12.0


def test_small_wall_effect_run():
    result = wall_effect_run(validate(small_config(Mass="delta")),
                             trace_energy=True)
    assert result.times == [0.0, 1.0, 2.0]
    assert result.reflections[0] == 1.0
    assert result.centroids[0] < 50.0
    assert len(result.trace.records) == 41
    assert result.trace.drift() < 1e-6
    assert result.to_dict()["plan"]["steps"] == 40


@pytest.mark.slow
def test_energy_is_conserved_with_delta():
    result = wall_effect_run(wall_config(2, 0.05, "spectral-strang"),
                             trace_energy=True)
    assert result.trace.drift() <= 1e-4


@pytest.mark.slow
def test_implicit_fd_is_stable_at_the_coarse_step():
    report = stability_experiment(3, 0.05)
    assert report.passed
    assert report.ratio > 0


@pytest.mark.slow
def test_schemes_agree_at_the_fine_step():
    report = cross_agreement_experiment(2, 0.05)
    assert report.relative <= 5e-2


@pytest.fixture(scope="module")
def accurate_runs():
    return {
        case: wall_effect_experiment(case, 0.05, "spectral-strang")
        for case in (1, 2, 3)
    }


@pytest.mark.slow
def test_wall_effect(accurate_runs):
    r1, r2, r3 = (accurate_runs[case].reflections[-1] for case in (1, 2, 3))
    assert r1 == pytest.approx(0.5, abs=1e-9)
    assert r3 > r2 > r1
    assert accurate_runs[3].reverses()
    assert not accurate_runs[1].reverses()
    assert accurate_runs[1].centroids[-1] == pytest.approx(38.0, abs=1e-6)


@pytest.mark.slow
def test_wall_effect_at_the_coarse_step():
    r2 = wall_effect_experiment(2, 0.05).reflections[-1]
    r3 = wall_effect_experiment(3, 0.05).reflections[-1]
    assert r3 > r2


@pytest.mark.slow
@pytest.mark.parametrize("case, order", [(2, 1), (3, 2)])
def test_existence_of_singular_nets(case, order):
    config = wall_config(case, 0.05, "spectral-strang",
                          EpsilonLadder=WALL_LADDER)
    report = existence_experiment(EpsilonNetPlan(config))
    assert report.extras["mass_order"] == order
    assert report.passed


@pytest.mark.slow
def test_uniqueness_with_exponential_perturbation():
    config = wall_config(2, 0.05, "spectral-strang",
                          EpsilonLadder=WALL_LADDER)
    report = uniqueness_experiment(EpsilonNetPlan(config, norm="l2"))
    assert report.differences[-1] == 0.0
    assert report.differences[1] / report.norms[1] < 1e-8
    assert report.verdicts == {"negligible": True}


@pytest.mark.slow
def test_uniqueness_with_power_perturbation():
    config = wall_config(2, 0.05, "spectral-strang",
                          EpsilonLadder=WALL_LADDER)
    report = uniqueness_experiment(EpsilonNetPlan(config), "power", 2.0)
    assert report.exponents["decay"] == pytest.approx(2.0, abs=0.3)
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("shape", ["hump", "step"])
def test_consistency_with_bounded_profiles(shape):
    config = consistency_config(shape, [0.2, 0.1, 0.05])
    report = consistency_experiment(EpsilonNetPlan(config))
    assert report.extras["require_order"] == (shape == "hump")
    assert report.passed
