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

import logging


logger = logging.getLogger(__name__)


# Avoid setting values on this anywhere other than main.configure(),
# otherwise tests may fail unpredictably depending on order-of-execution.
class Config:
    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton
        if not self._singleton:
            self.reset()

    def reset(self):
        # numerical tolerances
        self.hermitian_atol = 1e-10
        self.unitary_atol = 1e-8
        self.normalization_atol = 1e-10
        self.rank_threshold = 1e-12
        self.positive_threshold = 1e-10
        self.sqrt_atol = 1e-8
        self.magnitude_floor = 1e-8

        # per-algorithm optimizer defaults; see OptimConfig.for_algorithm()
        self.algorithms = {
            "vtde": {"learning_rate": 0.02, "iterations": 120, "depth": 4},
            "nvtde": {"learning_rate": 0.02, "iterations": 120, "depth": 4},
            "trace_norm": {
                "learning_rate": 0.02,
                "iterations": 120,
                "depth": 4,
            },
            "vqsl": {"learning_rate": 0.2, "iterations": 100, "depth": 6},
            "vfe": {"learning_rate": 0.2, "iterations": 100, "depth": 6},
        }
        self.method = "adam"
        self.gradient = "shift"
        self.restarts = 3

        self.nvtde_tolerance = 1e-4
        self.vfe_purification = "vqsl"

        # None means exact expectation values
        self.shots = None

        self.threads = 1
        self.record_timing = False

    def defaults_for(self, algorithm):
        try:
            return dict(self.algorithms[algorithm])
        except KeyError:
            raise ValueError(
                "no defaults for algorithm {!r}".format(algorithm)
            )

    def check_positive(self, name, value):
        if value is not None and value <= 0:
            raise ValueError("{} ({}) must be positive".format(name, value))

    def check_constraints(self):
        self.check_positive("restarts", self.restarts)
        self.check_positive("shots", self.shots)
        self.check_positive("threads", self.threads)

        for name, values in self.algorithms.items():
            for k in ("learning_rate", "iterations", "depth"):
                self.check_positive("{}.{}".format(name, k), values[k])

        if self.vfe_purification not in ("vqsl", "exact"):
            raise ValueError(
                "unknown purification mode {!r}".format(self.vfe_purification)
            )
