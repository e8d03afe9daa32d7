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

"""
Experiments described by a JSON spec file rather than a named preset.
"""

import numpy as np

from .. import states
from ..algorithms import (
    nvtde,
    trace_norm_estimate,
    trace_norm_two_sided,
    vfe,
    vqsl,
    vtde,
)
from ..experiment import ExperimentResult
from ..losses import HermitianDecomposition
from ..readers import load_operator, load_state, resolve
from ..readers.json import check_same_qubits
from .utils import Preset, child_seed, trial_rng, vqsl_row


def named_state(name, n, index=0):
    if name == "zero":
        return states.density_from_vector(states.basis_state(n, 0))
    if name == "one":
        return states.density_from_vector(states.basis_state(n, 2**n - 1))
    if name == "basis":
        return states.density_from_vector(states.basis_state(n, index))
    if name == "plus":
        return states.density_from_vector(
            states.StateVector(np.ones(2**n) / np.sqrt(2**n))
        )
    if name == "ghz":
        return states.density_from_vector(states.ghz(n))
    return states.maximally_mixed(n)


def build_state(spec, source, rng):
    if "file" in source:
        rho = load_state(resolve(spec, source["file"]))
    elif "named" in source:
        rho = named_state(
            source["named"], source.get("n_qubits", 1), source.get("index", 0)
        )
    else:
        n = source.get("n_qubits", 1)
        kind = source["random"]
        if kind == "pure":
            rho = states.density_from_vector(states.random_pure(n, rng))
        elif kind == "full_rank":
            rho = states.random_full_rank(n, rng)
        else:
            rho = states.random_mixed(n, source["rank"], rng)

    channel = source.get("channel")
    if channel is not None:
        rho = states.apply_channel(
            rho, states.ChannelSpec(channel["kind"], channel["p"])
        )
    return rho


class CustomExperiment(Preset):
    NAME = "custom"
    DESCRIPTION = "an experiment read from a spec file"

    def __init__(self, spec):
        super().__init__(spec)
        self.NAME = spec.name

    def trial(self, trial, seed):
        spec = self.spec
        params = spec.params
        algorithm = spec.algorithm
        rng = trial_rng(seed)
        opt = self.optim(
            "trace_norm" if algorithm.startswith("trace_norm") else algorithm,
            child_seed(seed, 1),
        )

        if algorithm == "trace_norm":
            decomp = HermitianDecomposition(
                [
                    (x["coefficient"], build_state(spec, x["state"], rng))
                    for x in params["terms"]
                ]
            )
            result = trace_norm_estimate(decomp, self.depth, opt)
            inputs = [rho.mat for _, rho in decomp.terms]
        elif algorithm == "trace_norm_two_sided":
            h = load_operator(resolve(spec, params["operator"]))
            result = trace_norm_two_sided(h, self.depth, opt)
            inputs = [h]
        elif algorithm == "vqsl":
            rho = build_state(spec, params["rho"], rng)
            n_R = params.get("n_R", rho.n_qubits)
            learned = vqsl(rho, n_R, opt, self.depth)
            return [vqsl_row(trial, algorithm, rho, learned, n_R=n_R)]
        else:
            rho = build_state(spec, params["rho"], rng)
            sigma = build_state(spec, params["sigma"], rng)
            check_same_qubits(spec.name, rho, sigma)
            inputs = [rho.mat, sigma.mat]
            if algorithm == "vtde":
                result = vtde(rho, sigma, self.depth, opt)
            elif algorithm == "nvtde":
                result = nvtde(rho, sigma, opt, self.depth, k=params.get("k"))
            else:
                result = vfe(
                    rho,
                    sigma,
                    n_R=params.get("n_R"),
                    opt_purify=self.optim("vqsl", child_seed(seed, 2)),
                    opt_fid=opt,
                    ansatz_depth=self.depth,
                    purification=params.get("purification"),
                )

        return [
            ExperimentResult.from_estimate(trial, algorithm, inputs, result)
        ]
