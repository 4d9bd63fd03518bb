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
Time evolution of u_tt + (-Delta)^alpha u + m_eps(x) u = 0.

Two schemes are available. SpectralStrang composes the exact free
propagator with the exact flow of the mass term and works for any alpha.
ImplicitFD is the two-level implicit finite difference scheme for alpha = 1,
solved by a cyclic sweep; it stays stable at time steps far beyond any
explicit CFL limit.
"""

from kgwall.logging import log
from kgwall.grid import Spectrum, forward
from kgwall.sweep import CyclicTridiagonal

from abc import ABC, abstractmethod
from enum import Enum
import math

import numpy as np
import scipy.fft


# largest omega*dt at which the splitting kick stays bounded
STIFFNESS_LIMIT = 2.0


class NonFiniteState(ArithmeticError):
    """A field went to inf or nan, usually a blow-up of the scheme"""


class SchemeId(Enum):
    SPECTRAL_STRANG = "spectral-strang"
    IMPLICIT_FD = "implicit-fd"

    @classmethod
    def parse(cls, value, alpha=None):
        scheme = value if isinstance(value, cls) else cls(value)
        if scheme is cls.IMPLICIT_FD and alpha is not None and alpha != 1:
            raise ValueError("scheme implicit-fd requires alpha = 1, got %r"
                             % alpha)
        return scheme


class FieldState(object):
    """Displacement u and velocity v = u_t at time t"""

    def __init__(self, t, u, v):
        u = np.array(u, dtype=float)
        v = np.array(v, dtype=float)
        if u.ndim != 1 or u.shape != v.shape:
            raise ValueError("u and v must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise NonFiniteState("state at t=%g is not finite" % t)
        u.setflags(write=False)
        v.setflags(write=False)
        self.t = float(t)
        self.u = u
        self.v = v

    def __repr__(self):
        return "FieldState(t=%r, n=%d)" % (self.t, len(self.u))

    def scaled(self, factor):
        return FieldState(self.t, factor * self.u, factor * self.v)

    def reversed(self):
        """Same displacement, opposite velocity"""
        return FieldState(self.t, self.u, -self.v)

    def check_grid(self, grid):
        if len(self.u) != grid.n:
            raise ValueError("state has %d points, grid has %d"
                             % (len(self.u), grid.n))


def initial_bump(grid, center=50.0, half_width=0.5):
    """u0 = exp(1/((x-center)^2 - half_width^2)) inside the support, u1 = 0"""

    if center - half_width < 0 or center + half_width >= grid.length:
        raise ValueError("grid [0, %g) does not cover the support [%g, %g]"
                         % (grid.length, center - half_width,
                            center + half_width))
    s = grid.x - center
    inside = np.abs(s) < half_width
    u = np.zeros(grid.n)
    u[inside] = np.exp(1.0 / (s[inside] ** 2 - half_width ** 2))
    return FieldState(0.0, u, np.zeros(grid.n))


class FreeFlow(object):
    """Exact propagator of u_tt + (-Delta)^alpha u = 0 over a fixed time tau

    Mode-wise: u^ -> cos(tau w) u^ + sin(tau w)/w v^ with w = |xi|^alpha;
    the zero mode uses the limit sin(tau w)/w -> tau.
    """

    def __init__(self, grid, alpha, tau):
        w = grid.abs_xi_power(alpha)
        self.tau = tau
        self.cos = np.cos(tau * w)
        self.sinc = tau * np.sinc(tau * w / np.pi)
        self.wsin = w * np.sin(tau * w)

    def apply(self, u, v):
        uh = scipy.fft.fft(u)
        vh = scipy.fft.fft(v)
        u_new = scipy.fft.ifft(self.cos * uh + self.sinc * vh).real
        v_new = scipy.fft.ifft(-self.wsin * uh + self.cos * vh).real
        return u_new, v_new


def free_propagate(state0, t, alpha, grid):
    if t < 0:
        raise ValueError("t must be non-negative, got %r" % t)
    if not alpha > 0:
        raise ValueError("alpha must be positive, got %r" % alpha)
    state0.check_grid(grid)
    flow = FreeFlow(grid, alpha, t)
    uh = forward(state0.u, grid)
    vh = forward(state0.v, grid)
    u = uh.multiply(flow.cos).coefficients + vh.multiply(flow.sinc).coefficients
    v = vh.multiply(flow.cos).coefficients - uh.multiply(flow.wsin).coefficients
    u = Spectrum(u, grid).to_field()
    v = Spectrum(v, grid).to_field()
    return FieldState(state0.t + t, u, v)


class Stepper(ABC):
    """Base class of all time steppers"""

    scheme = None

    def __init__(self, grid, mass, dt):
        if not dt > 0:
            raise ValueError("dt must be positive, got %r" % dt)
        if mass.grid != grid:
            raise ValueError("mass and state live on different grids")
        self.grid = grid
        self.mass = mass
        self.dt = dt

    @abstractmethod
    def step(self, state):
        """Subclasses who implement this must return the state at t + dt"""
        pass


class SpectralStrangStepper(Stepper):
    """Half free step, full mass step, half free step

    The mass sub-flow is the exact solution of u_t = 0, v_t = -m_eps u,
    i.e. a pointwise kick, so m_eps = 0 reduces the step to the exact
    free propagator. The kick is only stable while omega * dt < 2 with
    omega = sqrt(sup m_eps); beyond that the run grows and a warning is
    logged (implicit-fd has no such limit).
    """

    scheme = SchemeId.SPECTRAL_STRANG

    def __init__(self, grid, mass, dt, alpha):
        super().__init__(grid, mass, dt)
        self.alpha = alpha
        self.half = FreeFlow(grid, alpha, dt / 2)
        self.kick = dt * mass.samples
        self.stiffness = math.sqrt(mass.sup_norm) * dt
        if self.stiffness >= STIFFNESS_LIMIT:
            log.warning("omega*dt = %.3g is not below %g, spectral-strang is "
                        "unstable at this step; lower dt or use implicit-fd",
                        self.stiffness, STIFFNESS_LIMIT)

    def step(self, state):
        u, v = self.half.apply(state.u, state.v)
        v = v - self.kick * u
        u, v = self.half.apply(u, v)
        return FieldState(state.t + self.dt, u, v)


class ImplicitFDStepper(Stepper):
    """(u+ - 2u + u-)/dt^2 = (D2 - m)(u+ + u-)/2 on the periodic grid

    D2 is the second difference. The first step from a bare state closes
    the scheme with the mirror level u- = u+ - 2 dt v, which gives
    u+ = M^-1 u + dt v with the same matrix M; afterwards the two most
    recent levels are kept. The reported velocity is the trapezoid value
    on the first step and (3u+ - 4u + u-)/(2 dt) later, O(dt^2) both.
    """

    scheme = SchemeId.IMPLICIT_FD

    def __init__(self, grid, mass, dt):
        super().__init__(grid, mass, dt)
        h = dt * dt / 2.0
        off = -h / grid.dx ** 2
        diag = 1.0 + h * (mass.samples + 2.0 / grid.dx ** 2)
        self.system = CyclicTridiagonal(off, diag, off)
        self._last = None
        self._previous_u = None

    def operator(self, u):
        """(D2 - m) u"""
        g = self.grid
        return (
            (np.roll(u, 1) - 2.0 * u + np.roll(u, -1)) / g.dx ** 2
            - self.mass.samples * u
        )

    def _advance(self, u, u_previous):
        rhs = 2.0 * u - self.system.matvec(u_previous)
        return self.system.solve(rhs)

    def step(self, state):
        dt = self.dt
        if self._last is not state:
            state.check_grid(self.grid)
            u_new = self.system.solve(state.u) + dt * state.v
            v_new = 2.0 * (u_new - state.u) / dt - state.v
        else:
            u_new = self._advance(state.u, self._previous_u)
            v_new = (3.0 * u_new - 4.0 * state.u + self._previous_u) / (2 * dt)
        result = FieldState(state.t + dt, u_new, v_new)
        self._previous_u = state.u
        self._last = result
        return result

    def reverse(self, state):
        """Continue the evolution backwards in time

        The scheme is symmetric in time, so feeding it the levels in
        swapped order retraces the stored trajectory.
        """

        if self._last is not state:
            raise ValueError("can only reverse the state this stepper made")
        u_next = self._advance(state.u, self._previous_u)
        result = state.reversed()
        self._previous_u = u_next
        self._last = result
        return result


def make_stepper(scheme, grid, mass, dt, alpha):
    scheme = SchemeId.parse(scheme, alpha)
    if scheme is SchemeId.IMPLICIT_FD:
        return ImplicitFDStepper(grid, mass, dt)
    return SpectralStrangStepper(grid, mass, dt, alpha)


def step_spectral_strang(state, mass, dt, alpha, grid):
    return SpectralStrangStepper(grid, mass, dt, alpha).step(state)


def step_implicit_fd(state, mass, dt, grid, alpha=1.0):
    SchemeId.parse(SchemeId.IMPLICIT_FD, alpha)
    return ImplicitFDStepper(grid, mass, dt).step(state)


class StepPlan(object):
    """How many steps reach T and which step serves which snapshot"""

    def __init__(self, dt, T, snapshot_times, tolerance=1e-9,
                 max_refinement=64):
        if not dt > 0:
            raise ValueError("dt must be positive, got %r" % dt)
        if T < 0:
            raise ValueError("T must be non-negative, got %r" % T)
        times = [float(t) for t in snapshot_times]
        if not times:
            raise ValueError("snapshot list is empty")
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("snapshot times must be sorted: %r" % times)
        if times[0] < 0 or times[-1] > T * (1 + tolerance):
            raise ValueError("snapshot times must lie in [0, %g]" % T)
        self.requested_dt = float(dt)
        self.T = float(T)
        self.requested = times
        self.steps = self._count_steps(dt, T, times, tolerance, max_refinement)
        self.dt = T / self.steps if self.steps else float(dt)
        self.dt_adjusted = self.dt != self.requested_dt
        if self.dt_adjusted:
            log.warning("dt adjusted from %r to %r", self.requested_dt, self.dt)
        self.indices = [self._index(t) for t in times]
        self.offsets = [abs(self.time_of(k) - t)
                        for k, t in zip(self.indices, times)]

    @staticmethod
    def _aligned(steps, T, times, tolerance):
        for t in times:
            k = t * steps / T
            if abs(k - round(k)) > tolerance * max(1.0, k):
                return False
        return True

    def _count_steps(self, dt, T, times, tolerance, max_refinement):
        if T == 0:
            return 0
        ratio = T / dt
        nearest = round(ratio)
        if nearest > 0 and abs(ratio - nearest) <= tolerance * ratio:
            if self._aligned(nearest, T, times, tolerance):
                return int(nearest)
        start = max(1, math.ceil(ratio))
        for steps in range(start, start * max_refinement + 1):
            if self._aligned(steps, T, times, tolerance):
                return steps
        log.warning("No step count aligns all snapshots, using nearest steps")
        return start

    def time_of(self, k):
        return k * self.T / self.steps if self.steps else 0.0

    def _index(self, t):
        if not self.steps:
            return 0
        return int(round(t * self.steps / self.T))

    def to_dict(self):
        return {
            "requested_dt": self.requested_dt,
            "dt": self.dt,
            "steps": self.steps,
            "dt_adjusted": self.dt_adjusted,
            "snapshot_times": self.requested,
            "snapshot_offsets": self.offsets,
        }


class Trajectory(list):
    """Snapshots of one run, with the step plan that produced them"""

    def __init__(self, states, plan, scheme):
        super().__init__(states)
        self.plan = plan
        self.scheme = scheme


def evolve(state0, mass, scheme, dt, T, alpha, grid, snapshot_times,
           monitor=None, tolerance=1e-9):
    """Run from state0 to T and return the states at snapshot_times

    Each snapshot is the state at the nearest step boundary, which lies
    within dt/2 of the requested time (offsets are kept in the plan).
    monitor, if given, is called with every state including state0.
    """

    scheme = SchemeId.parse(scheme, alpha)
    state0.check_grid(grid)
    plan = StepPlan(dt, T, snapshot_times, tolerance)
    wanted = {}
    for position, k in enumerate(plan.indices):
        wanted.setdefault(k, []).append(position)
    snapshots = [None] * len(plan.indices)

    def record(k, state):
        for position in wanted.get(k, []):
            snapshots[position] = state
        if monitor is not None:
            monitor(state)

    state = state0
    record(0, state)
    if plan.steps:
        stepper = make_stepper(scheme, grid, mass, plan.dt, alpha)
        log.debug("Evolving %d steps of %s with dt=%g",
                  plan.steps, scheme.value, plan.dt)
        for k in range(1, plan.steps + 1):
            state = stepper.step(state)
            # stamp the exact step time instead of the accumulated one
            state.t = state0.t + plan.time_of(k)
            record(k, state)
    return Trajectory(snapshots, plan, scheme)
