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

import functools

import numpy as np
import scipy


def python_module_missing(name):
    python_module_missing.modules.add(name)


python_module_missing.modules = set()


def get_comment_for_missing_python_module(name):
    return (
        f"Installing the '{name}' Python module (the 'cmdline' extra) "
        "enables more of the command-line interface."
    )


@functools.lru_cache()
def library_versions():
    """
    Versions of the numerical stack.  Results are only bit-reproducible
    across runs that agree on these.
    """

    return {"numpy": np.__version__, "scipy": scipy.__version__}


def get_tools():
    d = {
        "Numerical-Libraries": tuple(
            "{} {}".format(k, v) for k, v in library_versions().items()
        ),
        "Missing-Python-Modules": tuple(
            sorted(python_module_missing.modules)
        ),
    }
    return d
