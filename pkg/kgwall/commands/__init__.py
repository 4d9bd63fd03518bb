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
Subcommands of the kgwall CLI. Each one is a module exposing __help__,
add_arguments(parser) and execute(args), which returns the verdicts of
the run and the output directory.
"""

from kgwall.config import load_config
from kgwall.harness import wall_config
from kgwall.mass import wall_case
from kgwall.propagation import SchemeId
from kgwall.strings import CASE_HELP, EPS_LIST_HELP

import argparse
from importlib import import_module


COMMANDS = ["run", "sweep", "uniqueness", "consistency", "figure1"]


def load_command(name):
    """This function retrieves the module of a subcommand"""

    if name not in COMMANDS:
        raise ValueError("unknown command: %r" % name)
    return import_module('kgwall.commands.' + name.lower())


def parse_eps_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "not a comma separated list of numbers: %r" % text)
    if not values:
        raise argparse.ArgumentTypeError("empty epsilon list")
    return values


def add_net_arguments(parser):
    """--case, --eps and --config, shared by the epsilon-net commands"""

    parser.add_argument(
        '--case', type=int, choices=[1, 2, 3], default=None,
        help=CASE_HELP,
    )
    parser.add_argument(
        '--eps', type=parse_eps_list, required=True,
        help=EPS_LIST_HELP,
    )
    parser.add_argument(
        '-c', '--config', type=str, default=None,
        help="base config; --case replaces its mass",
    )


def net_config(args):
    """The config an epsilon-net command runs on"""

    eps = args.eps
    if args.config:
        config = load_config(args.config)
        changes = {"EpsilonLadder": eps, "Epsilon": eps[0]}
        if args.case is not None:
            changes["Mass"] = wall_case(args.case).kind
        return config.replace(**changes)
    if args.case is None:
        raise ValueError("either --case or --config is required")
    return wall_config(
        args.case, eps[0], SchemeId.SPECTRAL_STRANG,
        EpsilonLadder=eps, Snapshots=[0.0, 12.0],
    )


def output_dir(args, config):
    return args.output or config.output_dir()
