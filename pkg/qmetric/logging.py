#
# qmetric: variational estimation of quantum state distances
#
# Copyright © 2026 qmetric developers
#
# qmetric is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# qmetric is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with qmetric.  If not, see <https://www.gnu.org/licenses/>.

import contextlib
import curses
import logging
import shutil
import sys

import numpy as np

LOG_FORMAT = "%(asctime)s %(levelname).1s: %(name)s: %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


def line_eraser(fd=sys.stderr) -> bytes:
    if not fd.isatty():
        return b""

    curses.setupterm(fd=fd.fileno())
    eraser = curses.tigetstr("el")
    if eraser:
        return eraser

    # a tty without the escape code; overwrite with blanks instead
    width = shutil.get_terminal_size().columns
    return b"\r" + (b" " * width) + b"\r"


def log_level(debug=False):
    return logging.DEBUG if debug else logging.WARNING


@contextlib.contextmanager
def setup_logging(debug, log_handler):
    root = logging.getLogger()
    old_level = root.getEffectiveLevel()
    root.setLevel(log_level(debug))

    handler = log_handler or logging.StreamHandler()
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(
        logging.Formatter(
            line_eraser().decode("ascii") + LOG_FORMAT, LOG_DATEFMT
        )
    )
    root.addHandler(handler)

    try:
        yield root
    finally:
        # pytest calls main() repeatedly; leave no handler behind on a
        # stream it has already closed.
        root.removeHandler(handler)
        root.setLevel(old_level)


@contextlib.contextmanager
def log_floating_point_errors(name="qmetric.numerics"):
    """
    Report numpy overflow/invalid/divide events through `logging` rather
    than RuntimeWarning, once per kind of event.
    """

    logger = logging.getLogger(name)
    seen = set()

    def handler(kind, flag):
        if kind not in seen:
            seen.add(kind)
            logger.warning("Floating-point %s encountered", kind)

    with np.errstate(over="call", invalid="call", divide="call", call=handler):
        yield seen
