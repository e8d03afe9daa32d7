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

import csv
import json
import sys

import pytest

from qmetric import VERSION
from qmetric.main import main
from qmetric.presenters.csv import CSV_FORMAT_MAGIC

from .utils.data import data, write_spec


def run(capsys, *args):
    with pytest.raises(SystemExit) as exc:
        main(args)

    out, err = capsys.readouterr()

    return exc.value.code, out, err


def read_results(path):
    with open(str(path)) as f:
        lines = f.read().splitlines()
    return lines[0], list(csv.DictReader(lines[1:]))


def identical_spec(tmp_path, **fields):
    fields.setdefault("name", "same")
    return write_spec(
        tmp_path / "spec.json",
        algorithm="vtde",
        rho=data("plus.json"),
        sigma=data("plus.json"),
        depth=1,
        optim={"iterations": 3, "restarts": 1},
        out=str(tmp_path / "out"),
        **fields,
    )


def test_oracle_trace_distance(capsys):
    ret, out, _ = run(
        capsys,
        "oracle",
        "trace_distance",
        data("plus.json"),
        data("plus_deph07.json"),
    )

    assert ret == 0
    assert out == "0.7000000000\n"


def test_oracle_fidelity(capsys):
    ret, out, _ = run(
        capsys, "oracle", "fidelity", data("plus.json"), data("plus.json")
    )

    assert ret == 0
    assert out == "1.000000000\n"


def test_oracle_trace_norm(capsys):
    ret, out, _ = run(
        capsys, "oracle", "trace_norm", data("operator_diag.json")
    )

    assert ret == 0
    assert out == "10.00000000\n"


def test_oracle_needs_two_states(capsys):
    ret, _, err = run(capsys, "oracle", "fidelity", data("plus.json"))

    assert ret == 2
    assert "needs two state files" in err


def test_oracle_dimension_mismatch(capsys):
    ret, _, err = run(
        capsys,
        "oracle",
        "trace_distance",
        data("plus.json"),
        data("mixed2.json"),
    )

    assert ret == 1
    assert "dimension" in err


def test_oracle_invalid_state(capsys):
    ret, out, err = run(
        capsys,
        "oracle",
        "trace_distance",
        data("plus.json"),
        data("bad_trace.json"),
    )

    assert ret == 1
    assert out == ""
    assert "trace violation" in err


def test_oracle_unknown_metric(capsys):
    ret, _, err = run(
        capsys, "oracle", "diamond", data("plus.json"), data("plus.json")
    )

    assert ret == 2
    assert "invalid choice" in err


def test_unknown_preset(capsys):
    ret, _, err = run(capsys, "run", "table9")

    assert ret == 2
    assert "unknown preset 'table9'" in err


def test_custom_invalid_state(capsys):
    ret, _, err = run(capsys, "custom", data("spec_bad_trace.json"))

    assert ret == 1
    assert "trace violation" in err


def test_custom_truncated_spec(capsys):
    ret, _, err = run(capsys, "custom", data("truncated.json"))

    assert ret == 2
    assert "truncated.json, line" in err


def test_custom_unknown_field(capsys):
    ret, _, err = run(capsys, "custom", data("spec_unknown_field.json"))

    assert ret == 2
    assert "optim.momentum" in err


def test_custom_missing_spec(capsys, tmp_path):
    ret, _, err = run(capsys, "custom", str(tmp_path / "nowhere.json"))

    assert ret == 2
    assert "cannot read file" in err


@pytest.mark.parametrize(
    "fields,field",
    [
        (
            {
                "algorithm": "vqsl",
                "rho": {"random": "mixed", "rank": 3, "n_qubits": 1},
            },
            "rho.rank",
        ),
        (
            {
                "algorithm": "vqsl",
                "rho": {
                    "named": "ghz",
                    "n_qubits": 2,
                    "channel": {"kind": "dephasing", "p": 0.5},
                },
            },
            "rho.channel.kind",
        ),
        (
            {
                "algorithm": "nvtde",
                "rho": {"named": "zero"},
                "sigma": {"named": "plus"},
                "k": 2,
            },
            "k",
        ),
    ],
)
def test_custom_out_of_range_source(capsys, tmp_path, fields, field):
    path = write_spec(tmp_path / "spec.json", **fields)

    ret, _, err = run(capsys, "custom", path)

    assert ret == 2
    assert "field '{}'".format(field) in err


def test_custom_identical_states(capsys, tmp_path):
    ret, out, _ = run(capsys, "custom", identical_spec(tmp_path))
    magic, rows = read_results(tmp_path / "out" / "same-results.csv")

    assert ret == 0
    assert out == ""
    assert magic == "# {}: 1".format(CSV_FORMAT_MAGIC)
    assert float(rows[0]["estimate"]) <= 1e-6
    assert rows[-1]["trial"] == "summary"
    assert (tmp_path / "out" / "same-trace-0.csv").exists()


def test_custom_json(capsys, tmp_path):
    ret, _, _ = run(capsys, "custom", identical_spec(tmp_path, format="json"))

    with open(str(tmp_path / "out" / "same.json")) as f:
        results = json.load(f)

    assert ret == 0
    assert results["metadata"]["preset"] == "same"
    assert results["violations"] == []


def test_custom_reruns_are_identical(capsys, tmp_path):
    spec = identical_spec(tmp_path)
    results = tmp_path / "out" / "same-results.csv"

    run(capsys, "custom", spec)
    first = results.read_bytes()
    run(capsys, "custom", spec)

    assert results.read_bytes() == first


def test_run_preset(capsys, tmp_path):
    ret, _, _ = run(
        capsys,
        "run",
        "table1",
        "--trials",
        "1",
        "--depth",
        "1",
        "--out",
        str(tmp_path),
    )
    magic, rows = read_results(tmp_path / "table1-results.csv")

    assert ret == 0
    assert magic.startswith("# {}".format(CSV_FORMAT_MAGIC))
    assert [x["trial"] for x in rows] == ["0", "summary"]
    assert float(rows[0]["oracle"]) == pytest.approx(0.7)
    assert float(rows[0]["estimate"]) <= 0.7 + 1e-9


def test_run_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")

    ret, _, err = run(
        capsys,
        "run",
        "table1",
        "--trials",
        "1",
        "--depth",
        "1",
        "--out",
        str(blocker / "out"),
    )

    assert ret == 3
    assert "Cannot write results" in err


def test_run_rejects_zero_trials(capsys):
    ret, _, err = run(capsys, "run", "table1", "--trials", "0")

    assert ret == 2
    assert "must be at least 1" in err


def test_no_command(capsys):
    ret, _, err = run(capsys)

    assert ret == 2
    assert "usage:" in err


def test_list_presets(capsys):
    ret, out, err = run(capsys, "--list-presets")

    assert ret == 0
    assert err == ""
    for name in ("fig2", "table1", "figS2"):
        assert name in out


def test_list_tools(capsys):
    ret, out, err = run(capsys, "--list-tools")

    assert ret == 0
    assert err == ""
    assert "Numerical-Libraries: numpy " in out
    assert "Missing-Python-Modules: " in out


def test_version(capsys):
    ret, out, _ = run(capsys, "--version")

    assert ret == 0
    assert out == "qmetric {}\n".format(VERSION)


def test_help(capsys, monkeypatch):
    # Fake --help in sys.argv so that the presets are listed
    monkeypatch.setattr(sys, "argv", ["qmetric", "--help"])

    ret, out, err = run(capsys, "--help")

    assert ret == 0
    assert err == ""
    assert "presets:" in out
    assert "QMETRIC_THREADS" in out


def test_profiling(capsys):
    ret, out, _ = run(
        capsys,
        "--profile=-",
        "oracle",
        "trace_norm",
        data("operator_diag.json"),
    )

    assert ret == 0
    assert "Profiling output for" in out


def test_ctrl_c_handling(capsys, monkeypatch):
    def interrupt(*args):
        raise KeyboardInterrupt

    monkeypatch.setattr("qmetric.main.oracle_value", interrupt)

    ret, _, err = run(
        capsys, "oracle", "fidelity", data("plus.json"), data("plus.json")
    )

    assert ret == 2
    assert "Keyboard Interrupt" in err


def test_unexpected_exception(capsys, monkeypatch):
    def fail(*args):
        raise RuntimeError("boom")

    monkeypatch.setattr("qmetric.main.oracle_value", fail)

    ret, _, err = run(
        capsys, "oracle", "fidelity", data("plus.json"), data("plus.json")
    )

    assert ret == 2
    assert "Traceback" in err
    assert "RuntimeError: boom" in err
