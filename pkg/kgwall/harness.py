#  kgwall: Klein-Gordon waves against singular mass barriers
#  Copyright (C) 2020  The kgwall authors
#
#  This program is free software: you can redistribute it and/or modify
#  it under the terms of the GNU General Public License as published by
#  the Free Software Foundation, either version 3 of the License, or
#  (at your option) any later version.
#
#  This program is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#  GNU General Public License for more details.
#
#  You should have received a copy of the GNU General Public License
#  along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Epsilon-net experiments (existence, uniqueness, consistency of very weak
solutions) and the wall-effect study of a bump hitting a mass barrier.

Every experiment stores the numbers its verdicts are computed from, so a
report can be re-judged without running anything again.
"""

from kgwall.logging import log
from kgwall.config import validate
from kgwall.grid import make_grid
from kgwall.mass import (
    RegularizedMass, mass_from_dict, moderateness_exponent,
    negligible_perturbation, negligibility_profile, wall_case, regularize,
)
from kgwall.propagation import SchemeId, evolve, initial_bump
from kgwall.diagnostics import (
    EnergyTrace, energy, energy_bound_ratio, l2_norm, left_centroid,
    reflection_coefficient, triple_norm,
)
from kgwall.tools import check_decreasing, fit_power_law, local_slopes

import concurrent.futures
import math


WALL_SNAPSHOTS = [0.0, 8.8, 10.2, 10.6, 11.0, 12.0]
COARSE_DT = 0.2
ACCURATE_DT = 0.005
NEGLIGIBILITY_LADDER = [1, 2, 3, 4, 5, 6]


def wall_config(case, epsilon, scheme=SchemeId.IMPLICIT_FD, dt=None,
                 **overrides):
    """The box of the wall-effect study: L = 100, dx = 0.01, T = 12

    dt defaults to the coarse step for implicit-fd and to the accurate
    one for spectral-strang. overrides are further config keys.
    """

    scheme = SchemeId.parse(scheme, 1.0)
    if dt is None:
        dt = COARSE_DT if scheme is SchemeId.IMPLICIT_FD else ACCURATE_DT
    data = {
        "Alpha": 1.0,
        "Length": 100.0,
        "Points": 10000,
        "TimeStep": dt,
        "FinalTime": 12.0,
        "Scheme": scheme.value,
        "Mass": wall_case(case).kind,
        "Epsilon": epsilon,
        "Snapshots": list(WALL_SNAPSHOTS),
    }
    data.update(overrides)
    return validate(data)


class RunSetup(object):
    """Grid, mass term and initial state described by a config"""

    def __init__(self, config):
        self.config = config
        self.grid = make_grid(config["Length"], config["Points"])
        self.spec = mass_from_dict(config.to_dict())
        self.state0 = initial_bump(
            self.grid, config["BumpCenter"], config["BumpHalfWidth"]
        )

    def mass(self, epsilon=None):
        if epsilon is None:
            epsilon = self.config["Epsilon"]
        return regularize(self.spec, epsilon, self.grid)

    def evolve(self, mass, snapshots=None, monitor=None):
        config = self.config
        if snapshots is None:
            snapshots = config["Snapshots"]
        return evolve(
            self.state0, mass, config.scheme, config["TimeStep"],
            config["FinalTime"], config.alpha, self.grid, snapshots,
            monitor=monitor, tolerance=config.tolerances["DtAlign"],
        )


class SupMonitor(object):
    """Keeps the largest value of a norm over every state it is shown"""

    def __init__(self, norm):
        self.norm = norm
        self.value = 0.0

    def __call__(self, state):
        self.value = max(self.value, self.norm(state))


class EpsilonNetPlan(object):
    """A ladder of epsilons run on one shared config

    :config: a SimulationConfig, its Epsilon is ignored
    :epsilons: strictly decreasing, at least three, default EpsilonLadder
    :norm: 'l2' or 'triple', default the config's Norm
    """

    def __init__(self, config, epsilons=None, norm=None):
        if epsilons is None:
            epsilons = config["EpsilonLadder"]
        self.epsilons = check_decreasing(epsilons, minimum=3)
        self.config = config
        self.norm = norm or config["Norm"]
        if self.norm not in ("l2", "triple"):
            raise ValueError("norm must be 'l2' or 'triple', got %r"
                             % self.norm)
        self.setup = RunSetup(config)
        # the widest mollifier has to fit inside the box
        self.setup.spec.validate(self.setup.grid, self.epsilons[0])
        self.workers = max(1, config["Workers"])

    @property
    def grid(self):
        return self.setup.grid

    @property
    def tolerances(self):
        return self.config.tolerances

    def measure(self, state):
        if self.norm == "l2":
            return l2_norm(state.u, self.grid)
        return triple_norm(state, self.config.alpha, self.grid)

    def map(self, function):
        """function(epsilon) for every epsilon, results in ladder order"""

        if self.workers == 1:
            return [function(e) for e in self.epsilons]
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.workers
        ) as executor:
            futures = [executor.submit(function, e) for e in self.epsilons]
            return [f.result() for f in futures]


def _judge_existence(report):
    threshold = (
        report.extras["mass_order"] / 2.0
        + report.tolerances["ExponentMargin"]
    )
    return {"moderate": report.exponents["growth"] <= threshold}


def _below(values, floors):
    return [v <= f for v, f in zip(values, floors)]


def _judge_uniqueness(report):
    differences = report.differences
    if all(d == 0 for d in differences):
        return {"negligible": True}
    if report.extras["mode"] == "power":
        decay = report.exponents.get("decay")
        power = report.extras["power"]
        return {
            "decay_matches_power": decay is not None and abs(
                decay - power) <= report.tolerances["PowerMargin"],
        }
    floors = [report.tolerances["NoiseFloor"] * n for n in report.norms]
    profile = negligibility_profile(
        differences, report.epsilons, report.extras["ladder"], floors
    )
    return {"negligible": all(ok for ratios, ok in profile.values())}


def _judge_consistency(report):
    differences = report.differences
    floors = [report.tolerances["NoiseFloor"] * n for n in report.norms]
    below = _below(differences, floors)
    monotone = all(
        b or d2 <= d1
        for d1, d2, b in zip(differences, differences[1:], below[1:])
    )
    relative = differences[-1] / report.norms[-1] if report.norms[-1] else 0.0
    verdicts = {
        "monotone": monotone,
        "converged": relative <= report.tolerances["ConsistencyFinal"],
    }
    if report.extras["require_order"]:
        order = report.exponents.get("order")
        verdicts["order"] = (
            all(below) or order is not None
            and order >= report.tolerances["ConsistencyOrder"]
        )
    return verdicts


judges = {
    "existence": _judge_existence,
    "uniqueness": _judge_uniqueness,
    "consistency": _judge_consistency,
}


class ConvergenceReport(object):
    """Numbers measured along an epsilon net, and the verdicts on them

    :norms: one norm per epsilon (what it measures depends on kind)
    :differences: the difference norms the kind is about
    :exponents: fitted exponents, each with an entry in residuals
    """

    def __init__(self, kind, epsilons, norms, differences, exponents,
                 residuals, tolerances, extras=None, config_hash=None):
        if kind not in judges:
            raise ValueError("unknown report kind: %r" % kind)
        self.kind = kind
        self.epsilons = list(epsilons)
        self.norms = list(norms)
        self.differences = list(differences)
        self.exponents = dict(exponents)
        self.residuals = dict(residuals)
        self.tolerances = dict(tolerances)
        self.extras = dict(extras or {})
        self.config_hash = config_hash
        self.verdicts = self.judge()

    def judge(self):
        return judges[self.kind](self)

    @property
    def passed(self):
        return all(self.verdicts.values())

    def to_dict(self):
        return {
            "kind": self.kind,
            "epsilons": self.epsilons,
            "norms": self.norms,
            "differences": self.differences,
            "exponents": self.exponents,
            "residuals": self.residuals,
            "tolerances": self.tolerances,
            "extras": self.extras,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "config_hash": self.config_hash,
        }


def _fit(epsilons, values, name, exponents, residuals, sign=1.0):
    """Fit values against eps; store sign * slope or None if impossible"""

    if len(values) < 2 or any(v <= 0 for v in values):
        exponents[name] = None
        residuals[name] = None
        return
    slope, residual = fit_power_law(epsilons, values)
    exponents[name] = sign * slope
    residuals[name] = residual


def existence_experiment(plan):
    """Moderateness of the solution net, sup over t of its norm

    The verdict compares the growth exponent of sup_t ||u_eps(t)|| in
    1/eps against N0/2 + margin, with N0 the rounded growth exponent of
    the mass net itself.
    """

    setup = plan.setup
    mass_report = moderateness_exponent(setup.spec, plan.epsilons, plan.grid)
    mass_order = max(0, int(round(mass_report.exponent)))

    def run(epsilon):
        monitor = SupMonitor(plan.measure)
        trajectory = setup.evolve(
            setup.mass(epsilon), [setup.config["FinalTime"]], monitor
        )
        log.info("existence: eps=%g sup norm %.6e", epsilon, monitor.value)
        return monitor.value, trajectory[-1]

    results = plan.map(run)
    sup_norms = [value for value, final in results]
    finals = [final for value, final in results]
    differences = [
        l2_norm(a.u - b.u, plan.grid) for a, b in zip(finals, finals[1:])
    ]

    exponents = {}
    residuals = {}
    _fit(plan.epsilons, sup_norms, "growth", exponents, residuals)
    if exponents["growth"] is None:
        # only reachable with vanishing data, which does not grow at all
        exponents["growth"] = 0.0
        residuals["growth"] = 0.0
    exponents["mass"] = mass_report.exponent
    residuals["mass"] = mass_report.residual

    return ConvergenceReport(
        "existence", plan.epsilons, sup_norms, differences, exponents,
        residuals, plan.tolerances,
        extras={
            "mass": setup.spec.kind,
            "mass_sup_norms": mass_report.sup_norms,
            "mass_order": mass_order,
            "norm": plan.norm,
        },
        config_hash=plan.config.config_hash(),
    )


def uniqueness_experiment(plan, mode="exponential", power=None):
    """Distance at T between the solutions of two negligibly close nets

    In exponential mode the masses differ by eps-negligible amounts and the
    verdict asks the differences to beat every eps^k of the ladder (or to
    vanish into the noise floor). power mode is the negative control and
    should decay like eps^p, no faster.
    """

    setup = plan.setup
    if mode == "power" and power is None:
        power = setup.config["Perturbation"]["Power"]
    final_time = [setup.config["FinalTime"]]

    def run(epsilon):
        base = setup.mass(epsilon)
        perturbed = negligible_perturbation(base, mode, power)
        u = setup.evolve(base, final_time)[-1]
        u_tilde = setup.evolve(perturbed, final_time)[-1]
        difference = l2_norm(u.u - u_tilde.u, plan.grid)
        norm = l2_norm(u.u, plan.grid)
        log.info("uniqueness: eps=%g difference %.3e (norm %.3e)",
                 epsilon, difference, norm)
        return norm, difference

    results = plan.map(run)
    norms = [n for n, d in results]
    differences = [d for n, d in results]

    exponents = {}
    residuals = {}
    _fit(plan.epsilons, differences, "decay", exponents, residuals, -1.0)
    extras = {
        "mode": mode,
        "power": power,
        "ladder": list(NEGLIGIBILITY_LADDER),
        "local_slopes": local_slopes(plan.epsilons, differences),
    }
    return ConvergenceReport(
        "uniqueness", plan.epsilons, norms, differences, exponents,
        residuals, plan.tolerances, extras,
        config_hash=plan.config.config_hash(),
    )


def consistency_experiment(plan, require_order=None):
    """Convergence of u_eps to the solution with the unmollified mass

    The reference runs the sampled table itself on the same grid and
    scheme. require_order defaults to False for step profiles, whose
    mollification error is not O(eps^2).
    """

    setup = plan.setup
    spec = setup.spec
    if spec.singular:
        raise ValueError("consistency needs a bounded mass, got %s"
                         % spec.kind)
    table = spec.table(plan.grid)
    if require_order is None:
        profile = getattr(spec, "profile", None) or {}
        require_order = profile.get("Shape") != "step"

    final_time = [setup.config["FinalTime"]]
    reference = setup.evolve(
        RegularizedMass(0.0, table, plan.grid), final_time
    )[-1]
    reference_norm = l2_norm(reference.u, plan.grid)

    def run(epsilon):
        u = setup.evolve(setup.mass(epsilon), final_time)[-1]
        difference = l2_norm(u.u - reference.u, plan.grid)
        log.info("consistency: eps=%g difference %.3e", epsilon, difference)
        return difference

    differences = plan.map(run)
    exponents = {}
    residuals = {}
    _fit(plan.epsilons, differences, "order", exponents, residuals, -1.0)
    return ConvergenceReport(
        "consistency", plan.epsilons, [reference_norm] * len(differences),
        differences, exponents, residuals, plan.tolerances,
        extras={
            "require_order": require_order,
            "local_slopes": local_slopes(plan.epsilons, differences),
        },
        config_hash=plan.config.config_hash(),
    )


class WallEffectResult(list):
    """(t, state, scatter record) per snapshot, plus per-snapshot extras"""

    def __init__(self, config, entries, centroids, energies, bound_ratios,
                 plan, grid, trace=None):
        super().__init__(entries)
        self.grid = grid
        self.trace = trace
        self.config = config
        self.centroids = centroids
        self.energies = energies
        self.bound_ratios = bound_ratios
        self.plan = plan

    @property
    def reflections(self):
        return [scatter.reflection for t, state, scatter in self]

    @property
    def times(self):
        return [t for t, state, scatter in self]

    def reverses(self, turn_time=10.2):
        """Whether the left-moving bump turns around at turn_time

        The centroid of u^2 left of the start point falls until turn_time
        and rises at every snapshot after it.
        """

        before = [c for t, c in zip(self.times, self.centroids)
                  if 0 < t <= turn_time]
        after = [c for t, c in zip(self.times, self.centroids)
                 if t >= turn_time]
        if len(before) < 2 or len(after) < 2:
            return False
        if any(math.isnan(c) for c in before + after):
            return False
        falling = all(b < a for a, b in zip(before, before[1:]))
        rising = all(b > a for a, b in zip(after, after[1:]))
        return falling and rising

    def to_dict(self):
        return {
            "times": self.times,
            "reflections": self.reflections,
            "scatter": [scatter.to_dict() for t, state, scatter in self],
            "centroids": self.centroids,
            "energy": [record.as_row() for record in self.energies],
            "energy_bound_ratios": self.bound_ratios,
            "reverses": self.reverses(),
            "energy_drift": self.trace.drift() if self.trace else None,
            "plan": self.plan.to_dict(),
            "config_hash": self.config.config_hash(),
        }


def wall_effect_run(config, trace_energy=False):
    """Snapshots of one config with scatter records and diagnostics

    With trace_energy the energy of every step is kept in result.trace.
    """

    setup = RunSetup(config)
    grid = setup.grid
    mass = setup.mass()
    trace = EnergyTrace(mass, config.alpha, grid) if trace_energy else None
    trajectory = setup.evolve(mass, monitor=trace)
    entries = []
    centroids = []
    energies = []
    bound_ratios = []
    for state in trajectory:
        scatter = reflection_coefficient(state, config["Barrier"], grid)
        entries.append((state.t, state, scatter))
        centroids.append(left_centroid(state, config["BumpCenter"], grid))
        energies.append(energy(state, mass, config.alpha, grid))
        bound_ratios.append(energy_bound_ratio(
            state, setup.state0, mass, config.alpha, grid))
    log.info("wall effect %s (%s): reflection at T %.4f", config["Mass"],
             config["Scheme"], entries[-1][2].reflection)
    return WallEffectResult(config, entries, centroids, energies,
                            bound_ratios, trajectory.plan, grid, trace)


def wall_effect_experiment(case, epsilon, scheme=SchemeId.IMPLICIT_FD,
                           dt=None, **overrides):
    if int(case) not in (1, 2, 3):
        raise ValueError("case must be 1, 2 or 3, got %r" % case)
    return wall_effect_run(
        wall_config(case, epsilon, scheme, dt, **overrides)
    )


class StabilityReport(object):
    def __init__(self, config_hash, initial_norm, sup_norm, tolerance):
        self.config_hash = config_hash
        self.initial_norm = initial_norm
        self.sup_norm = sup_norm
        self.tolerance = tolerance
        self.ratio = sup_norm / initial_norm if initial_norm else 0.0
        self.passed = self.ratio <= tolerance

    def to_dict(self):
        return {
            "initial_norm": self.initial_norm,
            "sup_norm": self.sup_norm,
            "ratio": self.ratio,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "config_hash": self.config_hash,
        }


def stability_experiment(case, epsilon, dt=COARSE_DT, **overrides):
    """implicit-fd at a coarse step: sup_t |||u(t)||| / |||u(0)|||"""

    config = wall_config(case, epsilon, SchemeId.IMPLICIT_FD, dt,
                          **overrides)
    setup = RunSetup(config)

    def norm(state):
        return triple_norm(state, config.alpha, setup.grid)

    monitor = SupMonitor(norm)
    setup.evolve(setup.mass(), [config["FinalTime"]], monitor)
    return StabilityReport(config.config_hash(), norm(setup.state0),
                           monitor.value, config.tolerances["Stability"])


class CrossAgreementReport(object):
    def __init__(self, reference_norm, gap, tolerance):
        self.reference_norm = reference_norm
        self.gap = gap
        self.tolerance = tolerance
        self.relative = gap / reference_norm if reference_norm else 0.0
        self.passed = self.relative <= tolerance

    def to_dict(self):
        return {
            "reference_norm": self.reference_norm,
            "gap": self.gap,
            "relative": self.relative,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def cross_agreement_experiment(case, epsilon, dt=ACCURATE_DT, **overrides):
    """Relative L2 gap at T between implicit-fd and spectral-strang"""

    finals = []
    for scheme in (SchemeId.SPECTRAL_STRANG, SchemeId.IMPLICIT_FD):
        config = wall_config(case, epsilon, scheme, dt, **overrides)
        setup = RunSetup(config)
        finals.append(
            setup.evolve(setup.mass(), [config["FinalTime"]])[-1]
        )
    grid = setup.grid
    reference, other = finals
    return CrossAgreementReport(
        l2_norm(reference.u, grid),
        l2_norm(reference.u - other.u, grid),
        config.tolerances["CrossAgreement"],
    )


CONSISTENCY_PROFILES = {
    "constant": {"Shape": "constant", "Value": 1.0},
    "hump": {"Shape": "hump", "Center": 45.0, "Width": 3.0,
             "Amplitude": 1.0},
    "step": {"Shape": "step", "Left": 30.0, "Right": 40.0,
             "Amplitude": 1.0},
}


def consistency_config(shape, epsilons, **overrides):
    """The wall-effect box with a bounded mass of the given shape"""

    try:
        profile = CONSISTENCY_PROFILES[shape]
    except KeyError:
        raise ValueError("unknown profile shape: %r" % shape)
    epsilons = check_decreasing(epsilons, minimum=3)
    settings = {
        "Mass": "bounded",
        "Profile": dict(profile),
        "EpsilonLadder": epsilons,
        "Norm": "l2",
        "Snapshots": [0.0, 12.0],
    }
    settings.update(overrides)
    # case 1 only fixes the box, the mass is replaced
    return wall_config(1, epsilons[0], SchemeId.SPECTRAL_STRANG,
                        **settings)
