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

import concurrent.futures
import time

import pytest

from qmetric.profiling import ProfileManager


@pytest.fixture
def manager():
    ProfileManager().reset()
    yield ProfileManager()
    ProfileManager().reset()


def test_increment(manager):
    start = time.perf_counter()
    manager.increment(start, "losses", "vtde")
    manager.increment(start, "losses", 3)

    assert manager.data["losses"]["vtde"]["count"] == 1
    assert manager.data["losses"]["int"]["count"] == 1
    assert manager.total("losses") >= 0


def test_increment_from_threads(manager):
    def work(_):
        for _ in range(2000):
            manager.increment(time.perf_counter(), "trials", "vtde")

    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(work, range(8)))

    assert manager.data["trials"]["vtde"]["count"] == 8 * 2000
