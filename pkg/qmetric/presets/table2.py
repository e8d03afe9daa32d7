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

from ..algorithms import vfe
from ..experiment import ExperimentResult
from ..states import random_full_rank
from .utils import Preset, child_seed, trial_rng

SYSTEM_QUBITS = (1, 2, 3)


class TableII(Preset):
    NAME = "table2"
    DESCRIPTION = (
        "VFE on random full-rank pairs of 1, 2 and 3 qubits with as many "
        "ancilla qubits"
    )
    # ten pairs per system size
    DEFAULT_TRIALS = 30

    def trial(self, trial, seed):
        n_A = SYSTEM_QUBITS[trial % len(SYSTEM_QUBITS)]
        rng = trial_rng(seed)
        rho = random_full_rank(n_A, rng)
        sigma = random_full_rank(n_A, rng)

        result = vfe(
            rho,
            sigma,
            n_R=n_A,
            opt_purify=self.optim("vqsl", child_seed(seed, 1)),
            opt_fid=self.optim("vfe", child_seed(seed, 2)),
            ansatz_depth=self.depth,
            purification="vqsl",
        )
        return [
            ExperimentResult.from_estimate(
                trial,
                "n_A={}".format(n_A),
                (rho.mat, sigma.mat),
                result,
                n_A=n_A,
                n_R=n_A,
            )
        ]
