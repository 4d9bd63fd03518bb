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
Uniqueness experiment: distance between the solutions of two nets whose
masses differ by a negligible (exponential) or an eps^p (power) amount.
"""

from kgwall.commands import add_net_arguments, net_config, output_dir
from kgwall.harness import EpsilonNetPlan, uniqueness_experiment
from kgwall.output import OutputDirectory, write_summary


def add_arguments(parser):
    add_net_arguments(parser)
    parser.add_argument('--mode', choices=["exponential", "power"],
                        default=None, help="default from config")
    parser.add_argument('--power', type=float, default=None,
                        help="p of the power mode, default from config")


def execute(args):
    config = net_config(args)
    mode = args.mode or config["Perturbation"]["Mode"]
    power = args.power
    if power is None:
        power = config["Perturbation"]["Power"]
    plan = EpsilonNetPlan(config, norm="l2")
    report = uniqueness_experiment(plan, mode, power)
    with OutputDirectory(output_dir(args, config)) as outdir:
        write_summary(outdir.file("summary.json"), {
            "command": "uniqueness",
            "config": config.to_dict(),
            "report": report.to_dict(),
            "verdicts": report.verdicts,
        }, config.config_hash())
    return report.verdicts, outdir.path
