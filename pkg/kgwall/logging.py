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

import logging
import os
import sys

import xdg.BaseDirectory


FORMAT = (
    '%(levelname).1s %(asctime)-15s '
    + '%(filename)s:%(lineno)d %(message)s'
)

logFormatter = logging.Formatter(FORMAT)

log = logging.getLogger('kgwall')
log.setLevel(logging.DEBUG)

stream_handler = logging.StreamHandler(sys.stderr)
stream_handler.setFormatter(logFormatter)
stream_handler.setLevel(logging.INFO)
log.addHandler(stream_handler)

_file_handler = None


def get_log_file():
    """Location of the log file in $XDG_DATA_HOME/kgwall"""

    data_home = xdg.BaseDirectory.save_data_path("kgwall")
    if not os.path.exists(data_home):
        os.makedirs(data_home)
    return os.path.join(data_home, "kgwall.log")


def enable_file_logging(path=None):
    global _file_handler
    if _file_handler is not None:
        return _file_handler
    _file_handler = logging.FileHandler(path or get_log_file())
    _file_handler.setFormatter(logFormatter)
    _file_handler.setLevel(logging.DEBUG)
    log.addHandler(_file_handler)
    return _file_handler


def set_verbose(verbose):
    stream_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
