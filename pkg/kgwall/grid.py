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
Periodic grid, discrete Fourier transform and the fractional Laplacian.

The real line is replaced by the periodic box [0, L). On such a box the
fractional Laplacian is exactly the Fourier multiplier |xi|^(2 alpha), so
everything here is a multiplication in frequency space.
"""

from kgwall.logging import log

import numpy as np
import scipy.fft


IMAG_RESIDUE = 1e-10


class Grid1D(object):
    """A uniform periodic grid

    :length: the domain size L
    :n: number of grid points, even and at least 4
    """

    def __init__(self, length, n):
        self.length = float(length)
        self.n = int(n)
        self.dx = self.length / self.n
        # j*L/n instead of j*dx, so that integer positions like 40 on
        # L=100, n=10000 are hit exactly
        self.x = np.arange(self.n) * self.length / self.n
        self.xi = 2 * np.pi * scipy.fft.fftfreq(self.n, d=self.dx)
        self.x.setflags(write=False)
        self.xi.setflags(write=False)

    def __repr__(self):
        return "Grid1D(length=%r, n=%r)" % (self.length, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, Grid1D)
            and self.length == other.length
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.length, self.n))

    def abs_xi_power(self, power):
        """|xi|^power with the zero mode mapped to zero"""
        return np.abs(self.xi) ** power

    def index_of(self, x):
        """Index of the grid point closest to x"""
        return int(round(x / self.dx)) % self.n

    def contains(self, x):
        return 0 <= x < self.length

    def check_samples(self, samples, name="field"):
        samples = np.asarray(samples, dtype=float)
        if samples.shape != (self.n,):
            raise ValueError(
                "%s has shape %s, expected (%d,)" % (name, samples.shape, self.n)
            )
        return samples


class Spectrum(object):
    """Complex Fourier coefficients aligned with Grid1D.xi"""

    def __init__(self, coefficients, grid):
        self.coefficients = np.asarray(coefficients, dtype=complex)
        self.grid = grid
        if self.coefficients.shape != (grid.n,):
            raise ValueError("spectrum length does not match the grid")

    def to_field(self, check=True):
        return inverse(self, check=check)

    def multiply(self, symbol):
        return Spectrum(self.coefficients * symbol, self.grid)

    def norm(self):
        """L2 norm computed on the spectral side (Parseval)"""
        g = self.grid
        return np.sqrt(g.dx / g.n * np.sum(np.abs(self.coefficients) ** 2))


def make_grid(length, n):
    if isinstance(n, float) and not n.is_integer():
        raise ValueError("n must be an integer, got %r" % n)
    n = int(n)
    if n < 4:
        raise ValueError("n must be at least 4, got %d" % n)
    if n % 2:
        raise ValueError("n must be even, got %d" % n)
    if not length > 0:
        raise ValueError("L must be positive, got %r" % length)
    return Grid1D(length, n)


def forward(field, grid):
    field = grid.check_samples(field)
    return Spectrum(scipy.fft.fft(field), grid)


def inverse(spectrum, check=True):
    result = scipy.fft.ifft(spectrum.coefficients)
    if check:
        scale = max(1.0, float(np.max(np.abs(result.real), initial=0.0)))
        residue = float(np.max(np.abs(result.imag), initial=0.0))
        if residue > IMAG_RESIDUE * scale:
            log.warning("Discarding imaginary residue %.3e", residue)
    return result.real


def _check_alpha(alpha):
    if not alpha > 0:
        raise ValueError("alpha must be positive, got %r" % alpha)


def frac_laplacian_apply(field, alpha, grid):
    """Apply (-Delta)^alpha, i.e. the multiplier |xi|^(2 alpha)"""

    _check_alpha(alpha)
    spectrum = forward(field, grid)
    return spectrum.multiply(grid.abs_xi_power(2 * alpha)).to_field()


def frac_half_norm(field, alpha, grid):
    """L2 norm of (-Delta)^(alpha/2) u, evaluated on the spectral side"""

    _check_alpha(alpha)
    spectrum = forward(field, grid)
    return float(spectrum.multiply(grid.abs_xi_power(alpha)).norm())
