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

import os

from ..exc import SpecParseError
from .json import MatrixReaderV1, SpecReaderV1


def _open(path):
    try:
        return open(path, encoding="utf-8")
    except OSError as e:
        raise SpecParseError(path, "cannot read file: {}".format(e.strerror))


def load_state(path):
    with _open(path) as fp:
        return MatrixReaderV1(path).load_state(fp)


def load_operator(path):
    with _open(path) as fp:
        return MatrixReaderV1(path).load_operator(fp)


def load_experiment_spec(path):
    """
    Parse a custom experiment.  State files it names are resolved relative
    to the spec's directory and validated before anything runs.
    """

    reader = SpecReaderV1(path)
    with _open(path) as fp:
        spec = reader.load(fp)

    spec.base = os.path.dirname(os.path.abspath(path))
    sizes = []
    for source in state_sources(spec):
        if "file" in source:
            sizes.append(load_state(resolve(spec, source["file"])).n_qubits)
    if spec.algorithm == "nvtde" and "k" in spec.params:
        reader.check_k(spec.params["k"], sizes)
    if "operator" in spec.params:
        load_operator(resolve(spec, spec.params["operator"]))
    return spec


def resolve(spec, path):
    return os.path.join(spec.base, path)


def state_sources(spec):
    for field in ("rho", "sigma"):
        if field in spec.params:
            yield spec.params[field]
    for term in spec.params.get("terms", ()):
        yield term["state"]
