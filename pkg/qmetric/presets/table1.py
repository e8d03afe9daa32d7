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

from ..algorithms import vtde
from ..experiment import ExperimentResult
from ..states import dephase, density_from_vector, plus_state
from .utils import Preset

DEPHASING = 0.7


class TableI(Preset):
    NAME = "table1"
    DESCRIPTION = "VTDE on |+> against its 0.7-dephased copy"
    DEFAULT_TRIALS = 10

    def trial(self, trial, seed):
        rho = density_from_vector(plus_state())
        sigma = dephase(rho, DEPHASING)
        result = vtde(rho, sigma, self.depth, self.optim("vtde", seed))
        return [
            ExperimentResult.from_estimate(
                trial, "vtde", (rho.mat, sigma.mat), result, p=DEPHASING
            )
        ]
