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
The sweep method: elimination for (cyclic) tridiagonal systems.
"""

import numpy as np
import scipy.linalg


def solve_tridiagonal(lower, diag, upper, rhs):
    """Solve M x = rhs for tridiagonal M

    lower[j] = M[j, j-1] (lower[0] unused), diag[j] = M[j, j],
    upper[j] = M[j, j+1] (upper[-1] unused).
    """

    n = len(diag)
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1] = diag
    ab[2, :-1] = lower[1:]
    return scipy.linalg.solve_banded((1, 1), ab, rhs, check_finite=False)


class CyclicTridiagonal(object):
    """A periodic tridiagonal matrix, solved by Sherman-Morrison

    The corner entries are M[0, n-1] = lower[0] and M[n-1, 0] = upper[-1].
    The correction vector only depends on the matrix, so it is computed
    once and every solve costs a single sweep.
    """

    def __init__(self, lower, diag, upper):
        n = len(diag)
        if n < 3:
            raise ValueError("cyclic system needs at least 3 unknowns")
        self.n = n
        self.lower = np.array(np.broadcast_to(lower, n), dtype=float)
        self.diag = np.array(np.broadcast_to(diag, n), dtype=float)
        self.upper = np.array(np.broadcast_to(upper, n), dtype=float)

        self.top_right = self.lower[0]
        self.bottom_left = self.upper[-1]
        self.gamma = -self.diag[0]

        self.reduced_diag = self.diag.copy()
        self.reduced_diag[0] -= self.gamma
        self.reduced_diag[-1] -= self.bottom_left * self.top_right / self.gamma

        correction = np.zeros(n)
        correction[0] = self.gamma
        correction[-1] = self.bottom_left
        self.z = self._sweep(correction)
        self.denominator = (
            1.0 + self.z[0] + self.top_right * self.z[-1] / self.gamma
        )

    def _sweep(self, rhs):
        return solve_tridiagonal(self.lower, self.reduced_diag, self.upper, rhs)

    def matvec(self, x):
        return (
            self.diag * x
            + self.lower * np.roll(x, 1)
            + self.upper * np.roll(x, -1)
        )

    def solve(self, rhs):
        y = self._sweep(rhs)
        factor = (
            (y[0] + self.top_right * y[-1] / self.gamma) / self.denominator
        )
        return y - factor * self.z
