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
import os
import sys

# significant digits of every float written to a results file
SIGNIFICANT_DIGITS = 12


def format_float(x, digits=SIGNIFICANT_DIGITS):
    if x is None:
        return ""
    return "{:.{}g}".format(float(x), digits)


def format_value(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format_float(x)
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return ";".join(format_value(y) for y in x)
    return str(x)


@contextlib.contextmanager
def make_printer(path):
    output = sys.stdout

    if path != "-":
        output = open(path, "w", encoding="utf-8", newline="")

    def fn(*args, **kwargs):
        kwargs["file"] = output
        print(*args, **kwargs)

    fn.output = output

    try:
        yield fn
    finally:
        if path != "-":
            output.close()


class Presenter:
    """Writes a Report below an output directory."""

    def __init__(self, directory):
        self.directory = directory

    @classmethod
    def run(cls, data, report):
        cls(data["target"]).start(report)

    def path(self, filename):
        return os.path.join(self.directory, filename)

    def start(self, report):
        raise NotImplementedError()
