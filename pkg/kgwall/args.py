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


from kgwall.__init__ import __version__
from kgwall.commands import COMMANDS, load_command
from kgwall import strings

import argparse


parser = argparse.ArgumentParser(description=strings.DESCRIPTION)

parser.add_argument(
    '-v', '--version',
    action='version',
    version='kgwall %s' % __version__,
)

parser.add_argument(
    '-l', '--log',
    default=False,
    action='store_true',
    help=strings.LOG_HELP,
)

parser.add_argument(
    '--verbose',
    default=False,
    action='store_true',
    help=strings.VERBOSE_HELP,
)

parser.add_argument(
    '-o', '--output',
    type=str,
    default=None,
    help=strings.OUTPUT_HELP,
)

subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
subparsers.required = True

for name in COMMANDS:
    command = load_command(name)
    subparser = subparsers.add_parser(
        name,
        help=command.__help__.strip().split("\n")[0],
        description=command.__help__.strip(),
    )
    command.add_arguments(subparser)


def parse_args(argv=None):
    return parser.parse_args(argv)
