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

import collections

import numpy as np

from ..algorithms import nvtde, vtde
from ..experiment import ExperimentResult
from ..optim import OptimConfig
from ..oracles import count_positive_eigs
from ..states import random_full_rank, random_mixed
from .utils import Preset, child_seed, trial_rng

N_QUBITS = 4
RHO_RANKS = (1, 2, 4, 8, 16)

VTDE_ERROR = 0.02
FORCED_UNDERESTIMATE = 0.05

# random 4-qubit pairs need a deeper system circuit than GHZ inputs
VTDE_DEPTH = 16
VTDE_BUDGET = {"iterations": 300, "learning_rate": 0.05, "restarts": 6}


def forced_k(positive):
    """
    A projector rank deliberately below the positive-eigenvalue count, or
    None when there is a single positive eigenvalue and no smaller rank.
    """

    return positive // 2 or None


class FigS2(Preset):
    NAME = "figS2"
    DESCRIPTION = (
        "VTDE against nVTDE on random 4-qubit pairs, stratified by the "
        "number of positive eigenvalues of rho - sigma"
    )
    DEFAULT_TRIALS = 30

    @property
    def vtde_depth(self):
        return VTDE_DEPTH if self.depth is None else self.depth

    def vtde_optim(self, seed):
        settings = dict(VTDE_BUDGET)
        settings.update(self.spec.optim)
        return OptimConfig.for_algorithm("vtde", seed=seed, **settings)

    def trial(self, trial, seed):
        rng = trial_rng(seed)
        rank = RHO_RANKS[trial % len(RHO_RANKS)]
        rho = random_mixed(N_QUBITS, rank, rng)
        sigma = random_full_rank(N_QUBITS, rng)
        positive = count_positive_eigs((rho.mat - sigma.mat) / 2)
        inputs = (rho.mat, sigma.mat)
        params = {"rank_rho": rank, "stratum": positive}

        rows = [
            ExperimentResult.from_estimate(
                trial,
                "vtde",
                inputs,
                vtde(rho, sigma, self.vtde_depth, self.vtde_optim(seed)),
                **params,
            )
        ]

        automatic = nvtde(
            rho,
            sigma,
            self.optim("nvtde", child_seed(seed, 1)),
            self.depth,
        )
        rows.append(
            ExperimentResult.from_estimate(
                trial,
                "nvtde",
                inputs,
                automatic,
                k=automatic.extra["k"],
                **params,
            )
        )

        k = forced_k(positive)
        if k is None:
            return rows
        forced = nvtde(
            rho,
            sigma,
            self.optim("nvtde", child_seed(seed, 2)),
            self.depth,
            k=k,
        )
        rows.append(
            ExperimentResult.from_estimate(
                trial, "nvtde forced k", inputs, forced, k=k, **params
            )
        )
        return rows

    def check(self, report):
        violations = []
        strata = collections.defaultdict(list)
        for x in report.rows:
            if x.rel_error is None:
                continue
            if x.label == "vtde" and x.rel_error > VTDE_ERROR:
                violations.append(
                    "trial {} (stratum {}): vtde relative error {:.2%} "
                    "above {:.0%}".format(
                        x.trial, x.params["stratum"], x.rel_error, VTDE_ERROR
                    )
                )
            if x.label == "nvtde forced k":
                strata[x.params["stratum"]].append(x.rel_error)

        means = [np.mean(x) for x in strata.values()]
        if means and max(means) < FORCED_UNDERESTIMATE:
            violations.append(
                "nvtde with a forced k never underestimates by {:.0%} in any "
                "stratum".format(FORCED_UNDERESTIMATE)
            )
        return violations
