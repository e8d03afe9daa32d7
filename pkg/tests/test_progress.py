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

import json
import sys

import pytest

from qmetric.main import main
from qmetric.progress import ProgressManager, StatusFD

from .utils.data import data, write_spec
from .utils.tools import skip_unless_module_exists


def run(capsys, *args):
    with pytest.raises(SystemExit) as exc:
        main(args)

    out, err = capsys.readouterr()

    return exc.value.code, out, err


@pytest.fixture
def spec(tmp_path):
    return write_spec(
        tmp_path / "spec.json",
        name="progress",
        algorithm="vtde",
        rho=data("plus.json"),
        sigma=data("plus_deph07.json"),
        trials=3,
        depth=1,
        optim={"iterations": 2, "restarts": 1},
        out=str(tmp_path / "out"),
    )


@skip_unless_module_exists("progressbar")
def test_progress(capsys, spec):
    ret, out, _ = run(capsys, "--progress", "custom", spec)

    assert ret == 0
    assert out == ""


def test_progress_unavailable(capsys, monkeypatch, spec):
    monkeypatch.setattr("qmetric.progress.progressbar", None)

    ret, _, err = run(capsys, "--progress", "custom", spec)

    assert ret == 0
    assert 'the "progressbar" module is unavailable' in err


def test_status_fd(capsys, spec):
    ProgressManager().register(StatusFD(sys.stderr))

    ret, _, err = run(capsys, "custom", spec)

    assert ret == 0

    # log lines may be interleaved with the status lines
    output = [json.loads(x) for x in err.splitlines() if x.startswith("{")]
    assert len(output) == 3

    for x in output:
        assert x["msg"].startswith("trial ")
        assert x["total"] == 3
        assert x["current"] <= x["total"]

    # Last line should mark us as "complete"
    assert output[-1]["current"] == output[-1]["total"]
