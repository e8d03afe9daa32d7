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
import os

from ..experiment import CSV, JSON
from ..profiling import profile
from .csv import CSVPresenter
from .json import JSONPresenter

logger = logging.getLogger(__name__)


class PresenterManager:
    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

        if not self._singleton:
            self.reset()

    def reset(self):
        self.config = {}

    def configure(self, output_format, directory):
        FORMATS = {
            CSV: {"klass": CSVPresenter, "target": directory},
            JSON: {"klass": JSONPresenter, "target": directory},
        }

        self.config = {output_format: FORMATS[output_format]}

        logger.debug(
            "Will generate the following presenter formats: %s",
            ", ".join(self.config.keys()),
        )

    def output(self, report):
        for name, data in self.config.items():
            os.makedirs(data["target"], exist_ok=True)
            logger.debug("Generating %r output in %r", name, data["target"])

            with profile("output", name):
                data["klass"].run(data, report)

            logger.debug(
                "Generated %r output for %d row(s) in %r",
                name,
                len(report.rows),
                data["target"],
            )
