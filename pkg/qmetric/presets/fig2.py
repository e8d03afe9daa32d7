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
from ..states import density_from_vector, depolarize, ghz
from .utils import Preset

N_QUBITS = 4
NOISE_LEVELS = (0.1, 0.3, 0.5, 0.7, 0.9)

# relative tolerance on the final estimate
ACCURACY = 0.01


def expected_distance(p, n=N_QUBITS):
    """Trace distance between GHZ_n and its p-depolarized copy."""

    return p * (1 - 2.0**-n)


class Fig2(Preset):
    NAME = "fig2"
    DESCRIPTION = (
        "VTDE learning curves for GHZ4 against its depolarized copies, "
        "p = 0.1 to 0.9"
    )
    DEFAULT_TRIALS = len(NOISE_LEVELS)

    def trial(self, trial, seed):
        p = NOISE_LEVELS[trial % len(NOISE_LEVELS)]
        rho = density_from_vector(ghz(N_QUBITS))
        sigma = depolarize(rho, p)
        result = vtde(rho, sigma, self.depth, self.optim("vtde", seed))
        return [
            ExperimentResult.from_estimate(
                trial,
                "p={}".format(p),
                (rho.mat, sigma.mat),
                result,
                p=p,
                expected=expected_distance(p),
            )
        ]

    def check(self, report):
        violations = []
        for x in report.rows:
            expected = x.params["expected"]
            if abs(x.estimate - expected) > ACCURACY * expected:
                violations.append(
                    "trial {} ({}): estimate {:.5f} more than {:.0%} from "
                    "{:.5f}".format(
                        x.trial, x.label, x.estimate, ACCURACY, expected
                    )
                )
        return violations
