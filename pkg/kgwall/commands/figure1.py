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


__help__ = """
The wall effect: a bump hitting no mass (case 1), a delta (case 2) and a
delta^2 (case 3) at x = 40. Writes the snapshots of every case and checks
that case 3 reflects more than case 2 and that its left-moving bump turns
around, the latter on an accurate spectral-strang run.
"""

from kgwall.commands import output_dir
from kgwall.harness import (
    WALL_SNAPSHOTS, wall_config, wall_effect_run,
)
from kgwall.logging import log
from kgwall.output import OutputDirectory, write_summary, write_wall_effect
from kgwall.propagation import SchemeId
from kgwall.strings import SCHEME_HELP

CASES = [1, 2, 3]


def add_arguments(parser):
    parser.add_argument('--eps', type=float, default=0.05,
                        help="regularisation parameter (default 0.05)")
    parser.add_argument('--scheme', default=SchemeId.IMPLICIT_FD.value,
                        choices=[s.value for s in SchemeId],
                        help=SCHEME_HELP)
    parser.add_argument('--dt', type=float, default=None,
                        help="time step, default 0.2 for implicit-fd and "
                             "0.005 for spectral-strang")


def _case_summary(result, files=None):
    summary = result.to_dict()
    if files is not None:
        summary["files"] = files
    return summary


def execute(args):
    scheme = SchemeId(args.scheme)
    results = {
        case: wall_effect_run(wall_config(case, args.eps, scheme, args.dt))
        for case in CASES
    }
    if scheme is SchemeId.SPECTRAL_STRANG:
        accurate = results
    else:
        accurate = {
            case: wall_effect_run(
                wall_config(case, args.eps, SchemeId.SPECTRAL_STRANG))
            for case in CASES
        }

    reflection = {case: results[case].reflections[-1] for case in CASES}
    verdicts = {
        "reflection_ordering": reflection[3] > reflection[2],
        "reversal": accurate[3].reverses(),
    }
    log.info("Reflection at T: %s", ", ".join(
        "case %d %.4f" % (case, reflection[case]) for case in CASES))

    reference = wall_config(1, args.eps, scheme, args.dt)
    with OutputDirectory(output_dir(args, reference)) as outdir:
        cases = {}
        for case in CASES:
            files = write_wall_effect(
                outdir, results[case], subdir="case%d" % case,
                title="case %d, eps = %g" % (case, args.eps),
            )
            cases["case%d" % case] = _case_summary(results[case], files)
        write_summary(outdir.file("summary.json"), {
            "command": "figure1",
            "epsilon": args.eps,
            "scheme": scheme.value,
            "snapshots": WALL_SNAPSHOTS,
            "cases": cases,
            "cross_check": {
                "case%d" % case: _case_summary(accurate[case])
                for case in CASES
            },
            "verdicts": verdicts,
        }, reference.config_hash())
    return verdicts, outdir.path
