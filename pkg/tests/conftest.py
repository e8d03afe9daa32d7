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

import pytest

from qmetric.config import Config
from qmetric.presenters.formats import PresenterManager
from qmetric.progress import ProgressManager


@pytest.fixture(autouse=True)
def reset_config():
    # Tests may tweak tolerances or shot counts; never leak them.
    Config().reset()
    yield
    Config().reset()


@pytest.fixture(autouse=True)
def reset_progress():
    ProgressManager().reset()


@pytest.fixture(autouse=True)
def reset_presenters():
    PresenterManager().reset()
