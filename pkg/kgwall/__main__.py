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


from kgwall.args import parse_args
from kgwall.commands import load_command
from kgwall.config import ConfigError
from kgwall.logging import log, enable_file_logging, set_verbose
from kgwall.output import OutputLocked
from kgwall import strings

import sys

from numpy.linalg import LinAlgError


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_VERDICT = 3


def run_command(argv=None):
    """Parse argv, run the subcommand and return the exit code

    2 means the input was rejected, 3 that the run finished but a
    verdict failed, 1 that the output was locked or the solver broke down.
    """

    try:
        args = parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 for --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    set_verbose(args.verbose)
    if args.log:
        enable_file_logging()

    command = load_command(args.command)
    try:
        verdicts, path = command.execute(args)
    except ConfigError as e:
        for violation in e.violations:
            log.error(strings.VALIDATION_FAILED % violation)
        return EXIT_INVALID
    except OutputLocked as e:
        log.error(str(e))
        return EXIT_ERROR
    except (ArithmeticError, LinAlgError) as e:
        log.error(strings.SOLVER_FAILED % e)
        return EXIT_ERROR
    except ValueError as e:
        log.error(strings.VALIDATION_FAILED % e)
        return EXIT_INVALID
    except Exception as e:
        log.exception(e)
        raise

    failed = sorted(name for name, ok in verdicts.items() if not ok)
    if failed:
        log.error(strings.VERDICT_FAILED % ", ".join(failed))
        return EXIT_VERDICT
    log.info(strings.VERDICT_PASSED % path)
    return EXIT_OK


def main():
    try:
        sys.exit(run_command())
    except KeyboardInterrupt:
        pass


if __name__ == "__main__":
    main()
