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
This file contains the mass terms m(x) and their mollified nets m_eps.

A singular mass (a delta or the square of a delta) has no pointwise values;
only the net m_eps = m * psi_eps for eps in (0, 1] is ever sampled.
"""

from kgwall.logging import log
from kgwall.tools import check_decreasing, fit_power_law

from abc import ABC, abstractmethod
from functools import lru_cache

import numpy as np
import scipy.fft
from scipy.integrate import quad


ROUNDED_CONSTANT = 2.2523
RESOLVED_POINTS = 5


def _bump(x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    out[inside] = np.exp(1.0 / (x[inside] ** 2 - 1.0))
    return out


@lru_cache(maxsize=None)
def mollifier_constant():
    """Normalisation c such that c * exp(1/(x^2-1)) has unit mass"""

    integral, error = quad(
        lambda x: float(_bump(x)[0]), -1.0, 1.0, epsabs=1e-14, epsrel=1e-13,
    )
    c = 1.0 / integral
    if round(c, 4) != ROUNDED_CONSTANT:
        log.warning("Mollifier constant %.8f does not match %.4f",
                    c, ROUNDED_CONSTANT)
    log.debug("Mollifier constant c = %.12f (quadrature error %.1e)",
              c, error)
    return c


def mollifier(x):
    """The Friedrichs bump c exp(1/(x^2-1)) on |x| < 1, zero elsewhere"""

    scalar = np.ndim(x) == 0
    out = mollifier_constant() * _bump(x)
    return float(out[0]) if scalar else out


def scaled_mollifier(x, epsilon):
    """psi_eps(x) = psi(x/eps)/eps"""
    return mollifier(np.asarray(x, dtype=float) / epsilon) / epsilon


def _check_epsilon(epsilon):
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1], got %r" % epsilon)


class RegularizedMass(object):
    """Samples of m_eps on a grid; epsilon = 0 marks an unmollified table"""

    def __init__(self, epsilon, samples, grid):
        if epsilon != 0:
            _check_epsilon(epsilon)
        samples = grid.check_samples(samples, "mass samples").copy()
        if not np.all(np.isfinite(samples)):
            raise ValueError("mass samples must be finite")
        if np.any(samples < 0):
            raise ValueError("mass samples must be non-negative")
        samples.setflags(write=False)
        self.epsilon = float(epsilon)
        self.samples = samples
        self.grid = grid
        self.sup_norm = float(np.max(samples))

    def __repr__(self):
        return "RegularizedMass(epsilon=%r, sup_norm=%r)" % (
            self.epsilon, self.sup_norm)

    def is_zero(self):
        return self.sup_norm == 0.0


class MassSpec(ABC):
    """Base class for all mass terms m(x)"""

    kind = None
    singular = False

    def __init__(self, position=None):
        self.position = None if position is None else float(position)

    @abstractmethod
    def sample(self, epsilon, grid):
        """Subclasses who implement this must return the samples of m_eps"""
        pass

    def validate(self, grid, epsilon=0.0):
        if self.position is None:
            return
        if not grid.contains(self.position):
            raise ValueError("position %r lies outside the domain [0, %r)"
                             % (self.position, grid.length))
        if (
            self.position - epsilon <= 0
            or self.position + epsilon >= grid.length
        ):
            raise ValueError("position %r lies within epsilon=%r of the "
                             "domain boundary" % (self.position, epsilon))

    def to_dict(self):
        result = {"Mass": self.kind}
        if self.position is not None:
            result["Position"] = self.position
        return result

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.to_dict())


class Zero(MassSpec):
    kind = "zero"

    def sample(self, epsilon, grid):
        return np.zeros(grid.n)

    def table(self, grid):
        return np.zeros(grid.n)


class Delta(MassSpec):
    kind = "delta"
    singular = True

    def __init__(self, position):
        super().__init__(position)

    def sample(self, epsilon, grid):
        return scaled_mollifier(grid.x - self.position, epsilon)


class DeltaSquared(Delta):
    """The square of a delta, regularised as psi_eps^2 (not as a convolution)"""

    kind = "delta-squared"

    def sample(self, epsilon, grid):
        return super().sample(epsilon, grid) ** 2


def profile_samples(profile, grid):
    """Evaluate a closed-form bounded profile on the grid"""

    shape = profile.get("Shape")
    x = grid.x
    if shape == "constant":
        return np.full(grid.n, float(profile.get("Value", 1.0)))
    if shape == "hump":
        center = float(profile["Center"])
        width = float(profile["Width"])
        amplitude = float(profile.get("Amplitude", 1.0))
        return amplitude * np.e * _bump((x - center) / width)
    if shape == "step":
        left = float(profile["Left"])
        right = float(profile["Right"])
        amplitude = float(profile.get("Amplitude", 1.0))
        return np.where((x >= left) & (x <= right), amplitude, 0.0)
    raise ValueError("unknown profile shape: %r" % shape)


class Bounded(MassSpec):
    """A bounded mass, given as a sample table or as a closed-form profile

    :samples: values of m on the grid points
    :profile: dict with a 'Shape' key, see profile_samples()
    """

    kind = "bounded"

    def __init__(self, samples=None, profile=None):
        super().__init__()
        if (samples is None) == (profile is None):
            raise ValueError("Bounded needs exactly one of samples, profile")
        if samples is not None:
            samples = np.array(samples, dtype=float)
            if not np.all(np.isfinite(samples)) or np.any(samples < 0):
                raise ValueError("bounded mass samples must be finite "
                                 "and non-negative")
            samples.setflags(write=False)
        self.samples = samples
        self.profile = dict(profile) if profile is not None else None

    def table(self, grid):
        if self.samples is not None:
            return grid.check_samples(self.samples, "bounded mass table")
        table = profile_samples(self.profile, grid)
        if np.any(table < 0):
            raise ValueError("profile %r is negative somewhere" % self.profile)
        return table

    def sample(self, epsilon, grid):
        table = self.table(grid)
        half = grid.n // 2
        offsets = np.where(np.arange(grid.n) < half,
                           grid.x, grid.x - grid.length)
        kernel = scaled_mollifier(offsets, epsilon)
        # unit discrete mass, so constants are reproduced
        kernel /= np.sum(kernel) * grid.dx
        smoothed = scipy.fft.ifft(
            scipy.fft.fft(table) * scipy.fft.fft(kernel)
        ).real * grid.dx
        return np.clip(smoothed, 0.0, None)

    def to_dict(self):
        result = {"Mass": self.kind}
        if self.profile is not None:
            result["Profile"] = dict(self.profile)
        else:
            result["Samples"] = [float(s) for s in self.samples]
        return result


type_map = {
    'zero': Zero,
    'delta': Delta,
    'delta-squared': DeltaSquared,
    'bounded': Bounded,
}


def mass_from_dict(data):
    """Build a MassSpec from the 'Mass' section of a config"""

    kind = data["Mass"]
    try:
        cls = type_map[kind]
    except KeyError:
        raise ValueError("unknown mass kind: %r" % kind)
    if cls is Zero:
        return Zero()
    if cls is Bounded:
        return Bounded(samples=data.get("Samples"),
                       profile=data.get("Profile"))
    return cls(data.get("Position", 40.0))


def wall_case(case, position=40.0):
    """Case 1: m = 0, case 2: delta(x - 40), case 3: delta^2(x - 40)"""

    cases = {1: Zero, 2: Delta, 3: DeltaSquared}
    try:
        cls = cases[int(case)]
    except (KeyError, ValueError):
        raise ValueError("case must be 1, 2 or 3, got %r" % case)
    return cls() if cls is Zero else cls(position)


def regularize(spec, epsilon, grid):
    _check_epsilon(epsilon)
    spec.validate(grid, epsilon)
    if spec.kind != "zero" and epsilon < RESOLVED_POINTS * grid.dx:
        log.warning("epsilon=%g resolves the mollifier with fewer than %d "
                    "points per half-width (dx=%g)",
                    epsilon, RESOLVED_POINTS, grid.dx)
    if spec.position is not None:
        j = grid.index_of(spec.position)
        if grid.x[j] != spec.position:
            log.info("position %g is not a grid point, the sampled sup norm "
                     "is attenuated", spec.position)
    return RegularizedMass(epsilon, spec.sample(epsilon, grid), grid)


class ModeratenessReport(object):
    """Sup norms of a net together with the fitted growth exponent N"""

    def __init__(self, epsilons, sup_norms, exponent, residual):
        self.epsilons = list(epsilons)
        self.sup_norms = list(sup_norms)
        self.exponent = exponent
        self.residual = residual

    @classmethod
    def fit(cls, epsilons, sup_norms):
        epsilons = check_decreasing(epsilons, minimum=3)
        if all(s == 0 for s in sup_norms):
            # the zero net is moderate with N = 0
            return cls(epsilons, sup_norms, 0.0, 0.0)
        exponent, residual = fit_power_law(epsilons, sup_norms)
        if exponent < -0.1:
            log.warning("Sup norms shrink like eps^%.3f", -exponent)
        return cls(epsilons, sup_norms, exponent, residual)

    @property
    def pairs(self):
        return list(zip(self.epsilons, self.sup_norms))

    def to_dict(self):
        return {
            "epsilons": self.epsilons,
            "sup_norms": self.sup_norms,
            "exponent": self.exponent,
            "residual": self.residual,
        }


def moderateness_exponent(spec, eps_list, grid):
    eps_list = check_decreasing(eps_list, minimum=3)
    sup_norms = [regularize(spec, e, grid).sup_norm for e in eps_list]
    return ModeratenessReport.fit(eps_list, sup_norms)


def negligible_perturbation(base, mode="exponential", power=None):
    """A second regularisation whose distance from base is controlled

    In 'exponential' mode the difference is sup_norm * exp(-1/eps), which
    is below C_k eps^k for every k. In 'power' mode it is sup_norm * eps^p,
    negligible only up to order p.
    """

    eps = base.epsilon
    if mode == "exponential":
        samples = base.samples * (1.0 + np.exp(-1.0 / eps))
    elif mode == "power":
        if power is None or not power > 0:
            raise ValueError("power mode needs p > 0, got %r" % power)
        if base.is_zero():
            shape = np.zeros_like(base.samples)
        else:
            shape = base.samples / base.sup_norm
        samples = base.samples + eps ** power * base.sup_norm * shape
    else:
        raise ValueError("unknown perturbation mode: %r" % mode)
    return RegularizedMass(eps, samples, base.grid)


def negligibility_profile(differences, eps_list, k_ladder, floor=0.0):
    """Ratios d_eps / eps^k for every k of the ladder

    Returns {k: (ratios, negligible)} where negligible says the ratios do
    not grow as eps decreases; differences at or below floor (a number or
    one value per eps) always pass.
    """

    floors = np.broadcast_to(np.asarray(floor, dtype=float), len(differences))
    result = {}
    for k in k_ladder:
        ratios = [d / e ** k for d, e in zip(differences, eps_list)]
        negligible = all(
            d2 <= f2 or r2 <= r1
            for (r1, r2), d2, f2 in zip(
                zip(ratios, ratios[1:]), differences[1:], floors[1:]
            )
        )
        result[k] = (ratios, negligible)
    return result
