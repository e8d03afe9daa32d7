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

import numpy as np
import pytest

from qmetric.exc import DimensionError, UnknownPresetError
from qmetric.experiment import (
    JSON,
    ExperimentResult,
    ExperimentSpec,
    Report,
)
from qmetric.presets import PresetManager
from qmetric.presets.custom import CustomExperiment, build_state, named_state
from qmetric.presets.fig2 import Fig2, expected_distance
from qmetric.presets.fig3 import Fig3, accuracy
from qmetric.presets.fig4 import Fig4
from qmetric.presets.figs2 import VTDE_DEPTH, FigS2, forced_k
from qmetric.presets.table1 import TableI
from qmetric.presets.utils import child_seed, trial_rng

from .utils.data import data
from .utils.tools import skip_unless_slow_tests

QUICK = {"iterations": 3, "restarts": 1}


def quick_spec(name, **kwargs):
    kwargs.setdefault("optim", QUICK)
    kwargs.setdefault("depth", 1)
    return ExperimentSpec(name, **kwargs)


def result(trial, label, estimate, oracle, algorithm="vtde", **params):
    return ExperimentResult(
        trial, label, algorithm, "d", estimate, oracle=oracle, params=params
    )


def test_registry_names():
    assert PresetManager().names() == [
        "fig2",
        "fig3",
        "table1",
        "table2",
        "table3",
        "fig4",
        "figS2",
    ]


def test_registry_get():
    assert PresetManager().get("table1") is TableI


def test_registry_unknown():
    with pytest.raises(UnknownPresetError) as exc:
        PresetManager().get("table9")

    assert exc.value.name == "table9"


def test_registry_descriptions():
    text = PresetManager().format_descriptions()

    for name in PresetManager().names():
        assert name in text


def test_make_spec():
    spec = TableI.make_spec(seed=4, output_format=JSON)

    assert spec.name == "table1"
    assert spec.trials == TableI.DEFAULT_TRIALS
    assert spec.seed == 4
    assert FigS2.make_spec(trials=2).trials == 2


def test_child_seed():
    assert child_seed(1, 2) == child_seed(1, 2)
    assert len({child_seed(1, x) for x in range(50)}) == 50
    assert child_seed(1, 2, 3) != child_seed(1, 3, 2)


def test_trial_rng_is_reproducible():
    assert trial_rng(5).random() == trial_rng(5).random()


def test_forced_k():
    assert forced_k(1) is None
    assert forced_k(4) == 2
    assert forced_k(5) == 2


def test_expected_distance():
    for p in (0.1, 0.5, 0.9):
        assert expected_distance(p) == pytest.approx(15 * p / 16)


def test_accuracy():
    assert accuracy(result(0, "x", 0.45, 0.5)) == pytest.approx(0.9)
    assert accuracy(result(0, "x", 0.0, 0.0)) is None


def fig3_report(medians):
    report = Report(ExperimentSpec("fig3"))
    for depth, values in medians.items():
        for trial, value in enumerate(values):
            row = result(trial, "depth={}".format(depth), value, 1.0)
            row.params["accuracy"] = accuracy(row)
            report.rows.append(row)
    return report


def test_fig3_check_accepts_improving_depths():
    preset = Fig3(ExperimentSpec("fig3"))
    report = fig3_report({1: [0.8, 0.7, 0.9], 2: [0.9], 4: [0.95, 0.99]})

    assert preset.median_accuracy(report) == {
        1: pytest.approx(0.8),
        2: pytest.approx(0.9),
        4: pytest.approx(0.97),
    }
    assert preset.check(report) == []


def test_fig3_check_flags_regression():
    preset = Fig3(ExperimentSpec("fig3"))
    violations = preset.check(fig3_report({1: [0.9], 2: [0.95], 4: [0.5]}))

    assert len(violations) == 1
    assert "depth 4" in violations[0]


def test_fig4_check():
    report = Report(ExperimentSpec("fig4"))
    report.rows = [
        result(0, "ok", 0.8, 0.8, algorithm="vqsl"),
        result(0, "high", 0.9, 0.8, algorithm="vqsl"),
        result(0, "vfe", 0.99, 0.5, algorithm="vfe"),
    ]
    violations = Fig4(report.spec).check(report)

    assert len(violations) == 1
    assert "(high)" in violations[0]


def test_fig2_check():
    report = Report(ExperimentSpec("fig2"))
    report.rows = [
        result(0, "p=0.1", 0.0935, 0.09375, p=0.1, expected=0.09375),
        result(1, "p=0.5", 0.25, 0.46875, p=0.5, expected=0.46875),
    ]
    violations = Fig2(report.spec).check(report)

    assert len(violations) == 1
    assert "(p=0.5)" in violations[0]


def figs2_row(trial, label, rel_error, stratum):
    return result(trial, label, 1 - rel_error, 1.0, stratum=stratum)


def test_figs2_check_passes():
    report = Report(ExperimentSpec("figS2"))
    report.rows = [
        figs2_row(0, "vtde", 0.01, 1),
        figs2_row(0, "nvtde", 0.0, 1),
        figs2_row(1, "vtde", 0.015, 4),
        figs2_row(1, "nvtde forced k", 0.3, 4),
    ]

    assert FigS2(report.spec).check(report) == []


def test_figs2_check_flags_vtde_error():
    report = Report(ExperimentSpec("figS2"))
    report.rows = [
        figs2_row(0, "vtde", 0.05, 3),
        figs2_row(0, "nvtde forced k", 0.2, 3),
    ]
    violations = FigS2(report.spec).check(report)

    assert len(violations) == 1
    assert "stratum 3" in violations[0]


def test_figs2_check_flags_accurate_forced_k():
    report = Report(ExperimentSpec("figS2"))
    report.rows = [
        figs2_row(0, "vtde", 0.0, 2),
        figs2_row(0, "nvtde forced k", 0.01, 2),
        figs2_row(1, "nvtde forced k", 0.02, 6),
    ]
    violations = FigS2(report.spec).check(report)

    assert len(violations) == 1
    assert "forced k" in violations[0]


def test_figs2_vtde_budget():
    preset = FigS2(ExperimentSpec("figS2"))
    opt = preset.vtde_optim(3)

    assert preset.vtde_depth == VTDE_DEPTH
    assert (opt.iterations, opt.learning_rate, opt.restarts) == (300, 0.05, 6)
    assert opt.seed == 3

    preset = FigS2(quick_spec("figS2"))
    assert preset.vtde_depth == 1
    assert preset.vtde_optim(3).iterations == 3


def test_table1_run():
    report = TableI(quick_spec("table1", trials=2, seed=3)).run()

    assert [x.trial for x in report.rows] == [0, 1]
    assert report.labels() == ["vtde"]
    assert report.rows[0].params == {"p": 0.7}
    assert report.rows[0].oracle == pytest.approx(0.7)
    assert all(x.estimate <= x.oracle + 1e-9 for x in report.rows)
    assert report.violations == []


def test_table1_run_is_reproducible():
    a = TableI(quick_spec("table1", seed=9)).run()
    b = TableI(quick_spec("table1", seed=9)).run()

    assert [x.as_dict() for x in a.rows] == [x.as_dict() for x in b.rows]


@pytest.mark.parametrize(
    "name,n,expected",
    [
        ("zero", 1, [1, 0]),
        ("one", 2, [0, 0, 0, 1]),
        ("plus", 1, [0.5, 0.5]),
        ("ghz", 2, [0.5, 0, 0, 0.5]),
        ("maximally_mixed", 1, [0.5, 0.5]),
    ],
)
def test_named_state(name, n, expected):
    assert np.allclose(np.diag(named_state(name, n).mat), expected)


def test_named_basis_state():
    rho = named_state("basis", 2, 2)

    assert rho.mat[2, 2] == pytest.approx(1)


def test_build_state_with_channel():
    spec = ExperimentSpec("x")
    rho = build_state(
        spec,
        {"named": "plus", "channel": {"kind": "dephasing", "p": 0.7}},
        None,
    )

    assert rho.mat[0, 1] == pytest.approx(-0.2)


def test_build_state_random():
    spec = ExperimentSpec("x")
    rho = build_state(
        spec, {"random": "mixed", "rank": 3, "n_qubits": 2}, trial_rng(1)
    )

    assert rho.rank() == 3


def test_build_state_from_file():
    spec = ExperimentSpec("x", base=data(""))
    rho = build_state(spec, {"file": "rho2.json"}, None)

    assert np.allclose(np.diag(rho.mat), [0.5, 0.25, 0.125, 0.125])


def test_custom_vtde_identical_states():
    spec = quick_spec(
        "same",
        algorithm="vtde",
        params={"rho": {"named": "plus"}, "sigma": {"named": "plus"}},
    )
    experiment = CustomExperiment(spec)
    report = experiment.run()

    assert experiment.NAME == "same"
    assert len(report.rows) == 1
    assert report.rows[0].estimate == 0


def test_custom_nvtde_forced_k():
    spec = quick_spec(
        "forced",
        algorithm="nvtde",
        params={
            "rho": {"named": "ghz", "n_qubits": 2},
            "sigma": {"named": "maximally_mixed", "n_qubits": 2},
            "k": 1,
        },
    )
    row = CustomExperiment(spec).run().rows[0]

    assert row.algorithm == "nvtde"
    assert row.oracle == pytest.approx(0.75)
    assert row.estimate <= 0.75 + 1e-9


def test_custom_qubit_mismatch():
    spec = quick_spec(
        "mismatch",
        algorithm="vtde",
        params={
            "rho": {"named": "plus"},
            "sigma": {"named": "plus", "n_qubits": 2},
        },
    )

    with pytest.raises(DimensionError):
        CustomExperiment(spec).run()


def test_custom_trace_norm():
    spec = quick_spec(
        "norm",
        algorithm="trace_norm",
        params={
            "terms": [
                {"coefficient": 1.0, "state": {"named": "zero"}},
                {"coefficient": -1.0, "state": {"named": "one"}},
            ]
        },
    )
    row = CustomExperiment(spec).run().rows[0]

    assert row.oracle == pytest.approx(2)
    assert row.estimate <= 2 + 1e-9


def test_custom_trace_norm_two_sided():
    spec = quick_spec(
        "two-sided",
        algorithm="trace_norm_two_sided",
        params={"operator": "operator_diag.json"},
        base=data(""),
    )
    row = CustomExperiment(spec).run().rows[0]

    assert row.algorithm == "trace_norm_two_sided"
    assert row.oracle == pytest.approx(10)


def test_custom_vqsl():
    spec = quick_spec(
        "learn",
        algorithm="vqsl",
        params={"rho": {"random": "full_rank"}},
    )
    row = CustomExperiment(spec).run().rows[0]

    assert row.algorithm == "vqsl"
    assert row.params["n_R"] == 1
    assert row.oracle == 1
    assert 0 <= row.estimate <= 1 + 1e-6


def test_custom_vfe_exact():
    spec = quick_spec(
        "fidelity",
        algorithm="vfe",
        params={
            "rho": {"named": "zero"},
            "sigma": {"named": "plus"},
            "purification": "exact",
        },
    )
    row = CustomExperiment(spec).run().rows[0]

    assert row.oracle == pytest.approx(np.sqrt(0.5))
    assert row.estimate <= row.oracle + 1e-6


@skip_unless_slow_tests()
def test_figs2_reproduction():
    report = FigS2(FigS2.make_spec()).run()
    strata = {}
    for x in report.rows:
        strata.setdefault(x.params["stratum"], []).append(x)

    for rows in strata.values():
        for x in rows:
            if x.label == "vtde":
                assert x.rel_error <= 0.02
    forced = [
        [x.rel_error for x in rows if x.label == "nvtde forced k"]
        for rows in strata.values()
    ]
    underestimates = [np.mean(x) for x in forced if x]
    assert max(underestimates) >= 0.05


@skip_unless_slow_tests()
def test_fig3_reproduction():
    report = Fig3(Fig3.make_spec(trials=5)).run()
    medians = Fig3(report.spec).median_accuracy(report)

    assert medians[4] >= medians[1]
