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
Writing results: snapshot and energy CSVs, summary.json and plot.gp.

Every file carries the config hash of the run that produced it.
"""

from kgwall.logging import log

import json
import os

import numpy as np


SNAPSHOT_COLUMNS = "x,u,v"
ENERGY_COLUMNS = "t,kinetic,elastic,potential,total"
NUMBER_FORMAT = "%.17g"
LOCK_NAME = ".lock"


class OutputLocked(RuntimeError):
    """Another run is writing into the same directory"""


class OutputDirectory(object):
    """A per-run output directory, held under an exclusive lock file

    Use as a context manager; the lock is released on exit.
    """

    def __init__(self, path):
        self.path = path
        self.lock_file = os.path.join(path, LOCK_NAME)
        self.written = []

    def __enter__(self):
        os.makedirs(self.path, exist_ok=True)
        try:
            fd = os.open(self.lock_file,
                         os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise OutputLocked("output directory %s is in use (remove %s "
                               "if no run is active)"
                               % (self.path, self.lock_file))
        with os.fdopen(fd, 'w') as stream:
            stream.write("%d\n" % os.getpid())
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        try:
            os.remove(self.lock_file)
        except FileNotFoundError:
            log.warning("Lock file %s vanished", self.lock_file)
        return False

    def file(self, *parts):
        path = os.path.join(self.path, *parts)
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.written.append(path)
        return path


def snapshot_name(t):
    return "snapshot_t%07.3f.csv" % t


def _write_table(path, columns, table, config_hash):
    with open(path, 'w', newline='\n') as stream:
        stream.write("# config-hash: %s\n" % config_hash)
        np.savetxt(stream, table, fmt=NUMBER_FORMAT, delimiter=",",
                   header=columns, comments="")
    log.debug("Wrote %s", path)


def write_snapshot(path, state, grid, config_hash):
    """x,u,v with 17 significant digits"""
    state.check_grid(grid)
    table = np.column_stack([grid.x, state.u, state.v])
    _write_table(path, SNAPSHOT_COLUMNS, table, config_hash)


def write_energy(path, records, config_hash):
    table = np.array([r.as_row() for r in records], dtype=float)
    _write_table(path, ENERGY_COLUMNS, table.reshape(-1, 5), config_hash)


def read_table(path):
    """(config hash, column names, 2-d array) of a file written here"""

    with open(path, 'r') as stream:
        first = stream.readline().strip()
        columns = stream.readline().strip().split(",")
        table = np.loadtxt(stream, delimiter=",", ndmin=2)
    prefix = "# config-hash: "
    if not first.startswith(prefix):
        raise ValueError("%s has no config-hash line" % path)
    return first[len(prefix):], columns, table


def write_summary(path, data, config_hash):
    data = dict(data)
    data["config_hash"] = config_hash
    with open(path, 'w') as stream:
        json.dump(data, stream, indent=2, sort_keys=True)
        stream.write("\n")
    log.debug("Wrote %s", path)


PLOT_HEADER = """\
# config-hash: %(hash)s
# render with: gnuplot plot.gp
set datafile separator ","
set datafile commentschars "#"
set key autotitle columnhead
set terminal pngcairo size 900,%(height)d
set output "%(image)s"
set multiplot layout %(rows)d,1 title "%(title)s"
set xlabel "x"
set ylabel "u"
"""


def write_plot_script(path, snapshot_files, times, title, config_hash,
                      xrange=None):
    """gnuplot script drawing one u(x) panel per snapshot"""

    lines = [PLOT_HEADER % {
        "hash": config_hash,
        "height": 250 * len(snapshot_files),
        "image": os.path.splitext(os.path.basename(path))[0] + ".png",
        "rows": len(snapshot_files),
        "title": title,
    }]
    if xrange is not None:
        lines.append("set xrange [%g:%g]\n" % tuple(xrange))
    for name, t in zip(snapshot_files, times):
        lines.append('plot "%s" using 1:2 with lines title "t = %g"\n'
                     % (name, t))
    lines.append("unset multiplot\n")
    with open(path, 'w') as stream:
        stream.write("".join(lines))
    log.debug("Wrote %s", path)


def write_wall_effect(outdir, result, subdir="", title=None,
                      energy_trace=False):
    """Snapshots, plot script and (optionally) the energy trace of a run

    Returns the snapshot file names relative to the output directory.
    """

    config = result.config
    config_hash = config.config_hash()
    names = []
    for t, state, scatter in result:
        name = snapshot_name(t)
        write_snapshot(outdir.file(subdir, name), state, result.grid,
                       config_hash)
        names.append(name)
    write_plot_script(
        outdir.file(subdir, "plot.gp"), names, result.times,
        title or "%s, eps = %g" % (config["Mass"], config["Epsilon"]),
        config_hash, xrange=(30, 70),
    )
    if energy_trace and result.trace is not None:
        write_energy(outdir.file(subdir, "energy.csv"),
                     result.trace.records, config_hash)
    return [os.path.join(subdir, n) if subdir else n for n in names]