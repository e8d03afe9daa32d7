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

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "QMETRIC_THREADS"


def thread_limit(default=1):
    """
    The number of trials that may run concurrently, from $QMETRIC_THREADS.
    Unparseable or non-positive values fall back to `default`.
    """

    raw = os.environ.get(THREADS_VARIABLE)
    if raw is None or not raw.strip():
        return default

    try:
        value = int(raw)
    except ValueError:
        logger.warning(
            "Ignoring %s=%r: not an integer", THREADS_VARIABLE, raw
        )
        return default

    if value < 1:
        logger.warning(
            "Ignoring %s=%r: must be at least 1", THREADS_VARIABLE, raw
        )
        return default

    return value
