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

import hashlib
import json

import numpy as np


def check_decreasing(eps_list, minimum=1):
    """Validate an epsilon ladder: in (0, 1], strictly decreasing"""

    eps = [float(e) for e in eps_list]
    if len(eps) < minimum:
        raise ValueError(
            "need at least %d epsilon values, got %d" % (minimum, len(eps))
        )
    for e in eps:
        if not 0 < e <= 1:
            raise ValueError("epsilon %r is outside (0, 1]" % e)
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilon values must be strictly decreasing: %r" % eps)
    return eps


def fit_power_law(eps_list, values):
    """Least-squares slope of log(values) against log(1/eps)

    A positive slope N means values grow like eps^-N, a negative one means
    they decay like eps^|N|. Returns (slope, rms residual).
    """

    eps = np.asarray(eps_list, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(eps) < 2:
        raise ValueError("need at least two points to fit an exponent")
    if np.any(values <= 0):
        raise ValueError("cannot fit a power law through non-positive values")
    x = np.log(1.0 / eps)
    y = np.log(values)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    return float(slope), float(np.sqrt(np.mean(residual ** 2)))


def local_slopes(eps_list, values):
    """Pairwise decay orders log(v_i/v_j) / log(eps_i/eps_j)"""

    result = []
    for (e1, v1), (e2, v2) in zip(
        zip(eps_list, values), zip(eps_list[1:], values[1:])
    ):
        if v1 <= 0 or v2 <= 0:
            result.append(float('inf'))
        else:
            result.append(float(np.log(v1 / v2) / np.log(e1 / e2)))
    return result


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def sha256_of(data):
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
