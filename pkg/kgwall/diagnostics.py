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
Norms, the energy functional and scattering diagnostics.
"""

from kgwall.grid import frac_half_norm

import numpy as np


def l2_norm(samples, grid):
    """sqrt(dx * sum u^2), exact quadrature on a periodic uniform grid"""
    samples = grid.check_samples(samples, "samples")
    return float(np.sqrt(grid.dx * np.sum(samples ** 2)))


def hs_norm(field, alpha, grid):
    """||u||_L2 + ||(-Delta)^(alpha/2) u||_L2"""
    return l2_norm(field, grid) + frac_half_norm(field, alpha, grid)


def triple_norm(state, alpha, grid):
    """||u||_H^alpha + ||u_t||_L2, the norm the solution is measured in"""
    return hs_norm(state.u, alpha, grid) + l2_norm(state.v, grid)


class EnergyRecord(object):
    def __init__(self, t, kinetic, elastic, potential):
        self.t = float(t)
        self.kinetic = float(kinetic)
        self.elastic = float(elastic)
        self.potential = float(potential)
        self.total = self.kinetic + self.elastic + self.potential

    def as_row(self):
        return [self.t, self.kinetic, self.elastic, self.potential, self.total]

    def __repr__(self):
        return "EnergyRecord(t=%r, total=%r)" % (self.t, self.total)


def energy(state, mass, alpha, grid):
    """E = ||u_t||^2 + ||(-Delta)^(alpha/2) u||^2 + ||m^(1/2) u||^2"""

    state.check_grid(grid)
    samples = grid.check_samples(mass.samples, "mass samples")
    return EnergyRecord(
        state.t,
        l2_norm(state.v, grid) ** 2,
        frac_half_norm(state.u, alpha, grid) ** 2,
        l2_norm(np.sqrt(samples) * state.u, grid) ** 2,
    )


def energy_bound_ratio(state, state0, mass, alpha, grid):
    """||u(t)||^2 / ((1 + ||m||_inf) (||u1||^2 + ||u0||_H^alpha^2))

    The a priori energy estimate says this stays bounded by a constant
    independent of t and of the mass.
    """

    bound = (1.0 + mass.sup_norm) * (
        l2_norm(state0.v, grid) ** 2 + hs_norm(state0.u, alpha, grid) ** 2
    )
    if bound == 0:
        return 0.0
    return triple_norm(state, alpha, grid) ** 2 / bound


class ScatterRecord(object):
    """L2 mass of u on either side of a barrier

    reflection is the fraction of the mass found on the side where the
    initial bump started.
    """

    def __init__(self, t, barrier, left_mass, right_mass, incident="right"):
        if incident not in ("left", "right"):
            raise ValueError("incident side must be 'left' or 'right'")
        self.t = float(t)
        self.barrier = float(barrier)
        self.left_mass = float(left_mass)
        self.right_mass = float(right_mass)
        self.incident = incident
        total = self.left_mass + self.right_mass
        reflected = self.right_mass if incident == "right" else self.left_mass
        self.reflection = reflected / total if total > 0 else 0.0

    def to_dict(self):
        return {
            "t": self.t,
            "barrier": self.barrier,
            "left_mass": self.left_mass,
            "right_mass": self.right_mass,
            "reflection": self.reflection,
        }


def reflection_coefficient(state, barrier_x, grid, incident="right"):
    if not grid.contains(barrier_x):
        raise ValueError("barrier %r lies outside the domain [0, %g)"
                         % (barrier_x, grid.length))
    state.check_grid(grid)
    density = state.u ** 2
    left = grid.x < barrier_x
    return ScatterRecord(
        state.t,
        barrier_x,
        grid.dx * np.sum(density[left]),
        grid.dx * np.sum(density[~left]),
        incident,
    )


def left_centroid(state, split_x, grid):
    """Centroid of u^2 over x < split_x, NaN if there is no mass"""

    state.check_grid(grid)
    left = grid.x < split_x
    density = state.u[left] ** 2
    total = np.sum(density)
    if total == 0:
        return float('nan')
    return float(np.sum(grid.x[left] * density) / total)


class EnergyTrace(object):
    """evolve() monitor collecting an EnergyRecord for every step"""

    def __init__(self, mass, alpha, grid):
        self.mass = mass
        self.alpha = alpha
        self.grid = grid
        self.records = []

    def __call__(self, state):
        self.records.append(energy(state, self.mass, self.alpha, self.grid))

    def drift(self):
        """max_t |E(t) - E(0)| / E(0), 0 for a trace of zero energy"""

        if not self.records or self.records[0].total == 0:
            return 0.0
        e0 = self.records[0].total
        return max(abs(r.total - e0) for r in self.records) / e0
