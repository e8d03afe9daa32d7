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

import json
import re

import numpy as np

from .. import linalg
from ..exc import DimensionError, SpecParseError
from ..experiment import CSV, FORMATS, ExperimentSpec
from ..states import DensityMatrix, StateVector, density_from_vector

ALGORITHMS = (
    "vtde",
    "nvtde",
    "trace_norm",
    "trace_norm_two_sided",
    "vfe",
    "vqsl",
)

# which state inputs each algorithm reads from a custom spec
ALGORITHM_INPUTS = {
    "vtde": ("rho", "sigma"),
    "nvtde": ("rho", "sigma"),
    "vfe": ("rho", "sigma"),
    "vqsl": ("rho",),
    "trace_norm": (),
    "trace_norm_two_sided": (),
}

NAMED_STATES = ("zero", "one", "plus", "ghz", "basis", "maximally_mixed")
RANDOM_STATES = ("pure", "mixed", "full_rank")

OPTIM_FIELDS = {
    "method": str,
    "learning_rate": (int, float),
    "iterations": int,
    "restarts": int,
    "gradient": str,
}


class JSONReader:
    def __init__(self, path):
        self.path = path
        self.text = ""

    def parse(self, fp):
        self.text = fp.read()
        try:
            raw = json.loads(self.text)
        except json.JSONDecodeError as e:
            raise SpecParseError(
                self.path,
                "{} (column {})".format(e.msg, e.colno),
                line=e.lineno,
            )
        if not isinstance(raw, dict):
            raise self.error("expected a JSON object at the top level")
        return raw

    def line_of(self, field):
        """Line of the first occurrence of `field` as a key, if any."""

        if field is None:
            return None
        key = field.rsplit(".", 1)[-1]
        match = re.search(r'"{}"\s*:'.format(re.escape(key)), self.text)
        if match is None:
            return None
        return self.text.count("\n", 0, match.start()) + 1

    def error(self, detail, field=None):
        return SpecParseError(
            self.path, detail, line=self.line_of(field), field=field
        )

    def require(self, raw, field, types, prefix=""):
        name = prefix + field
        if field not in raw:
            raise self.error("missing required field", name)
        value = raw[field]
        if isinstance(value, bool) or not isinstance(value, types):
            raise self.error(
                "expected {}, got {!r}".format(_describe(types), value), name
            )
        return value

    def optional(self, raw, field, types, default=None, prefix=""):
        if raw.get(field) is None:
            return default
        return self.require(raw, field, types, prefix)


def _describe(types):
    if not isinstance(types, tuple):
        types = (types,)
    names = {
        int: "an integer",
        float: "a number",
        str: "a string",
        dict: "an object",
        list: "a list",
    }
    return " or ".join(names.get(x, x.__name__) for x in types)


class MatrixReaderV1(JSONReader):
    """
    State and operator files: {"n_qubits": n, "entries": [[re, im], ...]}
    in row-major order, or {"n_qubits": n, "amplitudes": [[re, im], ...]}
    for a pure state.
    """

    def pairs(self, raw, field, count):
        values = self.require(raw, field, list)
        try:
            array = np.asarray(values, dtype=float)
        except (TypeError, ValueError):
            raise self.error("entries must be [re, im] number pairs", field)
        if array.shape != (count, 2):
            raise self.error(
                "expected {} [re, im] pairs, got shape {}".format(
                    count, array.shape
                ),
                field,
            )
        if not np.all(np.isfinite(array)):
            raise self.error("entries must be finite", field)
        return array[:, 0] + 1j * array[:, 1]

    def load_matrix(self, fp):
        raw = self.parse(fp)
        n = self.require(raw, "n_qubits", int)
        if n < 1:
            raise self.error("must be at least 1", "n_qubits")
        dim = 2**n

        if "amplitudes" in raw:
            if "entries" in raw:
                raise self.error(
                    "give either entries or amplitudes, not both", "amplitudes"
                )
            return self.pairs(raw, "amplitudes", dim), True
        return self.pairs(raw, "entries", dim * dim).reshape(dim, dim), False

    def load_state(self, fp):
        data, pure = self.load_matrix(fp)
        # InvalidStateError propagates with its violation kind
        if pure:
            return density_from_vector(StateVector(data))
        return DensityMatrix(data)

    def load_operator(self, fp):
        data, pure = self.load_matrix(fp)
        if pure:
            raise self.error("an operator needs entries", "amplitudes")
        return linalg.check_hermitian(data)


class SpecReaderV1(JSONReader):
    def load(self, fp):
        raw = self.parse(fp)

        algorithm = self.require(raw, "algorithm", str)
        if algorithm not in ALGORITHMS:
            raise self.error(
                "unknown algorithm {!r}; expected one of {}".format(
                    algorithm, ", ".join(ALGORITHMS)
                ),
                "algorithm",
            )

        params = {}
        for field in ALGORITHM_INPUTS[algorithm]:
            params[field] = self.check_source(
                self.require(raw, field, (str, dict)), field
            )

        if algorithm == "trace_norm":
            params["terms"] = self.check_terms(
                self.require(raw, "terms", list)
            )
        elif algorithm == "trace_norm_two_sided":
            params["operator"] = self.require(raw, "operator", str)

        for field in ("n_R", "k"):
            value = self.optional(raw, field, int)
            if value is not None:
                if value < 1:
                    raise self.error("must be at least 1", field)
                params[field] = value
        if algorithm == "nvtde" and "k" in params:
            # file sources are checked once loaded
            self.check_k(
                params["k"],
                [
                    x.get("n_qubits", 1)
                    for x in (params["rho"], params["sigma"])
                    if "file" not in x
                ],
            )
        purification = self.optional(raw, "purification", str)
        if purification is not None:
            if purification not in ("vqsl", "exact"):
                raise self.error(
                    "expected 'vqsl' or 'exact'", "purification"
                )
            params["purification"] = purification

        output_format = self.optional(raw, "format", str, CSV)
        if output_format not in FORMATS:
            raise self.error(
                "expected one of {}".format(", ".join(FORMATS)), "format"
            )

        trials = self.optional(raw, "trials", int, 1)
        shots = self.optional(raw, "shots", int)
        depth = self.optional(raw, "depth", int)
        for field, value in (("trials", trials), ("shots", shots)):
            if value is not None and value < 1:
                raise self.error("must be positive", field)
        if depth is not None and depth < 0:
            raise self.error("must not be negative", "depth")

        return ExperimentSpec(
            self.optional(raw, "name", str, "custom"),
            algorithm=algorithm,
            trials=trials,
            seed=self.optional(raw, "seed", int, 0),
            out=self.optional(raw, "out", str, "."),
            output_format=output_format,
            shots=shots,
            depth=depth,
            optim=self.check_optim(self.optional(raw, "optim", dict, {})),
            params=params,
        )

    def check_k(self, k, sizes):
        if not sizes:
            return
        top = 2 ** max(sizes) - 1
        if k > top:
            raise self.error("outside 1..{}".format(top), "k")

    def check_optim(self, raw):
        optim = {}
        for field, value in raw.items():
            name = "optim.{}".format(field)
            if field not in OPTIM_FIELDS:
                raise self.error("unknown optimizer setting", name)
            optim[field] = self.require(
                raw, field, OPTIM_FIELDS[field], "optim."
            )
        return optim

    def check_source(self, source, field):
        """
        A state is a path to a state file, or an object naming a built-in
        ("named"), a random one ("random") or a file ("file"), optionally
        followed by a "channel".
        """

        if isinstance(source, str):
            return {"file": source}

        kinds = [x for x in ("file", "named", "random") if x in source]
        if len(kinds) != 1:
            raise self.error(
                "a state needs exactly one of file, named or random", field
            )

        if "named" in source:
            name = self.require(source, "named", str, field + ".")
            if name not in NAMED_STATES:
                raise self.error(
                    "unknown state {!r}".format(name), field + ".named"
                )
        if "random" in source:
            kind = self.require(source, "random", str, field + ".")
            if kind not in RANDOM_STATES:
                raise self.error(
                    "unknown random state {!r}".format(kind),
                    field + ".random",
                )
        n = None
        if "named" in source or "random" in source:
            n = self.optional(source, "n_qubits", int, 1, field + ".")
            if n < 1:
                raise self.error("must be at least 1", field + ".n_qubits")
            if source.get("random") == "mixed":
                rank = self.require(source, "rank", int, field + ".")
                if not 1 <= rank <= 2**n:
                    raise self.error(
                        "rank {} outside 1..{}".format(rank, 2**n),
                        field + ".rank",
                    )
            if source.get("named") == "basis":
                index = self.optional(source, "index", int, 0, field + ".")
                if not 0 <= index < 2**n:
                    raise self.error(
                        "outside 0..{}".format(2**n - 1), field + ".index"
                    )

        channel = source.get("channel")
        if channel is not None:
            if not isinstance(channel, dict):
                raise self.error("expected an object", field + ".channel")
            kind = self.require(channel, "kind", str, field + ".channel.")
            if kind not in ("depolarizing", "dephasing"):
                raise self.error(
                    "unknown channel {!r}".format(kind),
                    field + ".channel.kind",
                )
            p = self.require(channel, "p", (int, float), field + ".channel.")
            if not 0 <= p <= 1:
                raise self.error("must lie in [0, 1]", field + ".channel.p")
            if kind == "dephasing" and n is not None and n != 1:
                raise self.error(
                    "dephasing needs a single-qubit state, got {} "
                    "qubits".format(n),
                    field + ".channel.kind",
                )
        return source

    def check_terms(self, terms):
        if not terms:
            raise self.error("needs at least one term", "terms")
        checked = []
        for i, term in enumerate(terms):
            prefix = "terms[{}].".format(i)
            if not isinstance(term, dict):
                raise self.error("expected an object", prefix.rstrip("."))
            checked.append(
                {
                    "coefficient": float(
                        self.require(term, "coefficient", (int, float), prefix)
                    ),
                    "state": self.check_source(
                        self.require(term, "state", (str, dict), prefix),
                        prefix + "state",
                    ),
                }
            )
        return checked


def check_same_qubits(path, *states):
    counts = {x.n_qubits for x in states}
    if len(counts) > 1:
        raise DimensionError(
            "{}: inputs on differing qubit counts {}".format(
                path, sorted(counts)
            )
        )
