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


"""This file contains only user-visible strings"""


DESCRIPTION = (
    "Klein-Gordon waves with singular mass terms: regularised nets,"
    " very weak solution experiments and the wall effect"
)

LOG_HELP = "enable logging to a file in $XDG_DATA_HOME/kgwall"

VERBOSE_HELP = "log debug messages to stderr"

OUTPUT_HELP = (
    "output directory (overrides $KGWALL_OUTPUT_DIR and the config's"
    " OutputDir)"
)

CONFIG_HELP = "path to a JSON config file, see docs/config.md"

CASE_HELP = "1: no mass, 2: delta(x - 40), 3: delta^2(x - 40)"

EPS_LIST_HELP = "comma separated, strictly decreasing, e.g. 0.1,0.05,0.025"

SCHEME_HELP = "time stepper, implicit-fd needs alpha = 1"

VALIDATION_FAILED = "Invalid input: %s"

VERDICT_FAILED = "Verdict failed: %s"

VERDICT_PASSED = "All verdicts passed, results in %s"

SOLVER_FAILED = "Solver failed: %s"
