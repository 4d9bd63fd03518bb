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
Consistency experiment: a bounded mass, mollified along an epsilon ladder,
against the run with the unmollified mass on the same grid and scheme.
"""

from kgwall.commands import output_dir, parse_eps_list
from kgwall.config import load_config
from kgwall.harness import (
    CONSISTENCY_PROFILES, EpsilonNetPlan, consistency_config,
    consistency_experiment,
)
from kgwall.output import OutputDirectory, write_summary
from kgwall.strings import CONFIG_HELP


def add_arguments(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('-c', '--config', type=str, default=None,
                        help=CONFIG_HELP)
    source.add_argument('--profile', choices=sorted(CONSISTENCY_PROFILES),
                        default=None, help="a built-in bounded mass")
    parser.add_argument('--eps', type=parse_eps_list, default=None,
                        help="epsilon ladder, default 0.2,0.1,0.05 or the "
                             "config's EpsilonLadder")


def execute(args):
    if args.config:
        config = load_config(args.config)
        if args.eps:
            config = config.replace(EpsilonLadder=args.eps,
                                    Epsilon=args.eps[0])
    else:
        config = consistency_config(args.profile,
                                    args.eps or [0.2, 0.1, 0.05])
    plan = EpsilonNetPlan(config, norm="l2")
    report = consistency_experiment(plan)
    with OutputDirectory(output_dir(args, config)) as outdir:
        write_summary(outdir.file("summary.json"), {
            "command": "consistency",
            "config": config.to_dict(),
            "report": report.to_dict(),
            "verdicts": report.verdicts,
        }, config.config_hash())
    return report.verdicts, outdir.path
