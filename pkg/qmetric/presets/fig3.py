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

import numpy as np

from ..algorithms import vtde
from ..experiment import ExperimentResult
from ..states import random_mixed
from .utils import Preset, child_seed, trial_rng

N_QUBITS = 3
SIGMA_RANK = 2
RHO_RANKS = tuple(range(1, 2**N_QUBITS + 1))
DEPTHS = (1, 2, 4)


def accuracy(row):
    """Estimated over exact trace distance."""

    if not row.oracle:
        return None
    return row.estimate / row.oracle


class Fig3(Preset):
    NAME = "fig3"
    DESCRIPTION = (
        "VTDE accuracy against the rank of rho for 1, 2 and 4 layer "
        "circuits on 3 qubits; one trial samples a pair per rank"
    )
    DEFAULT_TRIALS = 20

    def trial(self, trial, seed):
        rng = trial_rng(seed)
        rows = []
        for rank in RHO_RANKS:
            rho = random_mixed(N_QUBITS, rank, rng)
            sigma = random_mixed(N_QUBITS, SIGMA_RANK, rng)
            for depth in DEPTHS:
                # one optimization per sampled pair, as in a boxplot study
                opt = self.optim(
                    "vtde", child_seed(seed, rank, depth), restarts=1
                )
                result = vtde(rho, sigma, depth, opt)
                row = ExperimentResult.from_estimate(
                    trial,
                    "depth={}".format(depth),
                    (rho.mat, sigma.mat),
                    result,
                    depth=depth,
                    rank_rho=rank,
                    rank_sigma=SIGMA_RANK,
                )
                row.params["accuracy"] = accuracy(row)
                rows.append(row)
        return rows

    def median_accuracy(self, report):
        medians = {}
        for depth in DEPTHS:
            values = [
                x.params["accuracy"]
                for x in report.rows_for("depth={}".format(depth))
                if x.params["accuracy"] is not None
            ]
            if values:
                medians[depth] = float(np.median(values))
        return medians

    def check(self, report):
        medians = self.median_accuracy(report)
        violations = []
        for shallow, deep in zip(DEPTHS, DEPTHS[1:]):
            if shallow not in medians or deep not in medians:
                continue
            if medians[deep] < medians[shallow]:
                violations.append(
                    "median accuracy at depth {} ({:.4f}) below depth {} "
                    "({:.4f})".format(
                        deep, medians[deep], shallow, medians[shallow]
                    )
                )
        return violations
