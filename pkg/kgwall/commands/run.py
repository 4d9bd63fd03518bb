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
Run one config. Writes a CSV per snapshot, the energy of every step to
energy.csv, reflection coefficients and centroids to summary.json, and
plot.gp. With spectral-strang the energy drift is checked against
Tolerances.EnergyDrift.
"""

from kgwall.commands import output_dir
from kgwall.config import load_config
from kgwall.harness import wall_effect_run
from kgwall.logging import log
from kgwall.output import OutputDirectory, write_summary, write_wall_effect
from kgwall.propagation import SchemeId
from kgwall.strings import CONFIG_HELP


def add_arguments(parser):
    parser.add_argument('-c', '--config', type=str, required=True,
                        help=CONFIG_HELP)


def execute(args):
    config = load_config(args.config)
    result = wall_effect_run(config, trace_energy=True)
    drift = result.trace.drift()
    log.info("Energy drift %.3e", drift)

    verdicts = {}
    if config.scheme is SchemeId.SPECTRAL_STRANG:
        verdicts["energy_conserved"] = (
            drift <= config.tolerances["EnergyDrift"]
        )

    with OutputDirectory(output_dir(args, config)) as outdir:
        files = write_wall_effect(outdir, result, energy_trace=True)
        write_summary(outdir.file("summary.json"), {
            "command": "run",
            "config": config.to_dict(),
            "result": result.to_dict(),
            "files": files + ["energy.csv", "plot.gp"],
            "verdicts": verdicts,
        }, config.config_hash())
    return verdicts, outdir.path
