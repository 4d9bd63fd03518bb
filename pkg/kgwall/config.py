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
Simulation configs: parsing, validation, defaults and serialization.

The documented format is JSON (see docs/config.md); YAML is accepted too.
"""

from kgwall.tools import sha256_of
from kgwall.mass import type_map as MASS_KINDS
from kgwall.propagation import SchemeId

import copy
import json
import os

import yaml


OUTPUT_ENV = "KGWALL_OUTPUT_DIR"

MANDATORY_ARGUMENTS = [
    "Alpha",
    "Length",
    "Points",
    "TimeStep",
    "FinalTime",
    "Scheme",
    "Mass",
    "Epsilon",
    "Snapshots",
]

TOLERANCE_DEFAULTS = {
    "EnergyDrift": 1e-4,
    "ExponentMargin": 0.1,
    "NoiseFloor": 1e-10,
    "PowerMargin": 0.3,
    "Stability": 10.0,
    "CrossAgreement": 5e-2,
    "ConsistencyOrder": 1.5,
    "ConsistencyFinal": 1e-2,
    "DtAlign": 1e-9,
}

DEFAULTS = {
    "Position": 40.0,
    "Barrier": 40.0,
    "BumpCenter": 50.0,
    "BumpHalfWidth": 0.5,
    "Profile": None,
    "Samples": None,
    "EpsilonLadder": [0.1, 0.05, 0.025],
    "Norm": "triple",
    "Perturbation": {"Mode": "exponential", "Power": 2.0},
    "Tolerances": TOLERANCE_DEFAULTS,
    "Workers": 1,
    "OutputDir": "output",
}

# keys that do not change any number a run produces
NON_NUMERIC_KEYS = ["OutputDir", "Workers"]

NORMS = ["l2", "triple"]
PERTURBATION_MODES = ["exponential", "power"]


class ConfigError(ValueError):
    """All violations found in a config, each naming its key"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class SimulationConfig(object):
    """A validated config; attribute access by key, e.g. config["Alpha"]"""

    def __init__(self, data):
        self._data = data

    def __getitem__(self, key):
        return self._data[key]

    def __eq__(self, other):
        return (
            isinstance(other, SimulationConfig)
            and self.to_dict() == other.to_dict()
        )

    def __repr__(self):
        return "SimulationConfig(%s)" % self.config_hash()[:12]

    @property
    def alpha(self):
        return self._data["Alpha"]

    @property
    def dx(self):
        return self._data["Length"] / self._data["Points"]

    @property
    def scheme(self):
        return SchemeId(self._data["Scheme"])

    @property
    def tolerances(self):
        return self._data["Tolerances"]

    def to_dict(self):
        return copy.deepcopy(self._data)

    def replace(self, **changes):
        """A new validated config with some keys changed"""
        data = self.to_dict()
        data.update(changes)
        return validate(data)

    def config_hash(self):
        data = self.to_dict()
        for key in NON_NUMERIC_KEYS:
            data.pop(key, None)
        return sha256_of(data)

    def output_dir(self):
        return os.environ.get(OUTPUT_ENV) or self._data["OutputDir"]


def _number(data, key, violations, positive=True, integer=False):
    value = data.get(key)
    if isinstance(value, bool):
        violations.append("%s must be a number, got %r" % (key, value))
        return value
    try:
        number = float(value)
    except (TypeError, ValueError):
        violations.append("%s must be a number, got %r" % (key, value))
        return value
    if integer:
        if not number.is_integer():
            violations.append("%s must be an integer, got %r" % (key, value))
            return value
        number = int(number)
    if positive and not number > 0:
        violations.append("%s must be positive, got %r" % (key, value))
    return number


def _number_list(data, key, violations):
    value = data.get(key)
    if not isinstance(value, (list, tuple)):
        violations.append("%s must be a list of numbers, got %r"
                          % (key, value))
        return value
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError):
        violations.append("%s must be a list of numbers, got %r"
                          % (key, value))
        return value


def validate(data):
    """Check a raw dict and return a SimulationConfig or raise ConfigError"""

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(["config must be a mapping of keys to values"])

    violations = []
    for key in sorted(data):
        if key not in MANDATORY_ARGUMENTS and key not in DEFAULTS:
            violations.append("unknown key: %s" % key)
    missing = [key for key in MANDATORY_ARGUMENTS if key not in data]
    for key in missing:
        violations.append("mandatory key not set: %s" % key)

    result = copy.deepcopy(DEFAULTS)
    result.update(copy.deepcopy(data))
    # checks below skip missing keys, so present ones are still reported
    for key in missing:
        result[key] = None

    for key in ["Alpha", "Length", "TimeStep", "FinalTime", "Epsilon",
                "BumpHalfWidth"]:
        if key not in missing:
            result[key] = _number(result, key, violations)
    for key in ["Position", "Barrier", "BumpCenter"]:
        result[key] = _number(result, key, violations, positive=False)
    if "Points" not in missing:
        result["Points"] = _number(result, "Points", violations, integer=True)
    result["Workers"] = _number(result, "Workers", violations, integer=True)

    if isinstance(result["Points"], int):
        if result["Points"] < 4 or result["Points"] % 2:
            violations.append("Points must be even and at least 4, got %r"
                              % result["Points"])
    if isinstance(result["Epsilon"], float) and result["Epsilon"] > 1:
        violations.append("Epsilon must lie in (0, 1], got %r"
                          % result["Epsilon"])

    if "Snapshots" not in missing:
        result["Snapshots"] = _number_list(result, "Snapshots", violations)
    snapshots = result["Snapshots"]
    if isinstance(snapshots, list):
        if not snapshots:
            violations.append("Snapshots must not be empty")
        elif snapshots != sorted(snapshots):
            violations.append("Snapshots must be sorted")
        elif isinstance(result["FinalTime"], float) and (
            snapshots[0] < 0 or snapshots[-1] > result["FinalTime"]
        ):
            violations.append("Snapshots must lie in [0, FinalTime]")

    result["EpsilonLadder"] = _number_list(result, "EpsilonLadder",
                                           violations)
    ladder = result["EpsilonLadder"]
    if isinstance(ladder, list):
        if any(not 0 < e <= 1 for e in ladder):
            violations.append("EpsilonLadder values must lie in (0, 1]")
        elif any(b >= a for a, b in zip(ladder, ladder[1:])):
            violations.append("EpsilonLadder must be strictly decreasing")

    if "Scheme" not in missing:
        try:
            SchemeId(result["Scheme"])
        except ValueError:
            violations.append("Scheme must be one of %s, got %r" % (
                ", ".join(s.value for s in SchemeId), result["Scheme"]))
        else:
            if (
                result["Scheme"] == SchemeId.IMPLICIT_FD.value
                and "Alpha" not in missing
                and result["Alpha"] != 1
            ):
                violations.append("Scheme implicit-fd requires Alpha = 1")

    if "Mass" not in missing and (
        not isinstance(result["Mass"], str)
        or result["Mass"] not in MASS_KINDS
    ):
        violations.append("Mass must be one of %s, got %r" % (
            ", ".join(sorted(MASS_KINDS)), result["Mass"]))
    elif result["Mass"] == "bounded":
        if (result["Profile"] is None) == (result["Samples"] is None):
            violations.append("Mass bounded needs exactly one of "
                              "Profile, Samples")
        elif result["Profile"] is not None:
            if not isinstance(result["Profile"], dict) \
                    or "Shape" not in result["Profile"]:
                violations.append("Profile must be a mapping with a Shape")
        else:
            result["Samples"] = _number_list(result, "Samples", violations)
            samples = result["Samples"]
            if isinstance(samples, list) and isinstance(result["Points"], int):
                if len(samples) != result["Points"]:
                    violations.append("Samples must have Points entries")

    if result["Norm"] not in NORMS:
        violations.append("Norm must be one of %s, got %r"
                          % (", ".join(NORMS), result["Norm"]))

    perturbation = result["Perturbation"]
    if not isinstance(perturbation, dict) \
            or perturbation.get("Mode") not in PERTURBATION_MODES:
        violations.append("Perturbation.Mode must be one of %s"
                          % ", ".join(PERTURBATION_MODES))
    else:
        perturbation = dict(perturbation)
        perturbation.setdefault("Power", 2.0)
        perturbation["Power"] = _number(perturbation, "Power", violations)
        unknown = set(perturbation) - {"Mode", "Power"}
        for key in sorted(unknown):
            violations.append("unknown key: Perturbation.%s" % key)
        result["Perturbation"] = perturbation

    tolerances = result["Tolerances"]
    if not isinstance(tolerances, dict):
        violations.append("Tolerances must be a mapping")
    else:
        merged = dict(TOLERANCE_DEFAULTS)
        for key in sorted(tolerances):
            if key not in TOLERANCE_DEFAULTS:
                violations.append("unknown key: Tolerances.%s" % key)
        merged.update(tolerances)
        for key in TOLERANCE_DEFAULTS:
            merged[key] = _number(merged, key, violations)
        result["Tolerances"] = merged

    if not isinstance(result["OutputDir"], str) or not result["OutputDir"]:
        violations.append("OutputDir must be a non-empty string")

    if violations:
        raise ConfigError(violations)
    return SimulationConfig(result)


def parse_config(text):
    """Parse config text (JSON, or YAML as a fallback)"""

    if not text or not text.strip():
        return validate({})
    try:
        data = json.loads(text)
    except ValueError:
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(["config is neither JSON nor YAML: %s" % exc])
    return validate(data)


def load_config(path):
    try:
        with open(path, 'r') as stream:
            text = stream.read()
    except OSError as exc:
        raise ConfigError(["cannot read config file %s: %s"
                           % (path, exc.strerror)])
    try:
        return parse_config(text)
    except ConfigError as exc:
        raise ConfigError(["%s: %s" % (path, v) for v in exc.violations])


def serialize(config):
    return json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"
