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
from ..states import dephase, density_from_vector, plus_state
from .utils import Preset

P_RHO = 0.2
P_SIGMA = 0.9


class TableIII(Preset):
    NAME = "table3"
    DESCRIPTION = (
        "VFE with learned one-qubit purifications of |+> dephased by 0.2 "
        "and 0.9"
    )
    DEFAULT_TRIALS = 10

    def trial(self, trial, seed):
        plus = density_from_vector(plus_state())
        rho, sigma = dephase(plus, P_RHO), dephase(plus, P_SIGMA)
        result = vfe(
            rho,
            sigma,
            n_R=1,
            opt_purify=self.optim("vqsl", seed),
            opt_fid=self.optim("vfe", seed),
            ansatz_depth=self.depth,
            purification="vqsl",
        )
        return [
            ExperimentResult.from_estimate(
                trial,
                "vfe",
                (rho.mat, sigma.mat),
                result,
                p_rho=P_RHO,
                p_sigma=P_SIGMA,
                n_R=1,
            )
        ]
