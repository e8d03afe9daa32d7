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

import numpy as np

from ..experiment import CSV, ExperimentResult, ExperimentSpec, Report
from ..experiment import MAIN_STAGE, run_trials
from ..optim import OptimConfig
from ..states import make_rng, matrix_digest

logger = logging.getLogger(__name__)


def child_seed(seed, *keys):
    """An independent seed for the sub-task `keys` of a trial."""

    sequence = np.random.SeedSequence([int(seed)] + [int(x) for x in keys])
    return int(sequence.generate_state(1)[0])


def trial_rng(seed):
    """The generator a trial draws its random states from."""

    return make_rng(child_seed(seed, 0))


class Preset:
    NAME = None
    DESCRIPTION = None
    DEFAULT_TRIALS = 1

    def __init__(self, spec):
        self.spec = spec

    @classmethod
    def make_spec(
        cls, seed=0, trials=None, out=".", output_format=CSV, shots=None
    ):
        return ExperimentSpec(
            cls.NAME,
            trials=cls.DEFAULT_TRIALS if trials is None else trials,
            seed=seed,
            out=out,
            output_format=output_format,
            shots=shots,
        )

    def optim(self, algorithm, seed, **overrides):
        settings = dict(self.spec.optim)
        settings.update(overrides)
        return OptimConfig.for_algorithm(algorithm, seed=seed, **settings)

    @property
    def depth(self):
        return self.spec.depth

    def trial(self, trial, seed):
        """The result rows of one trial."""

        raise NotImplementedError()

    def run(self):
        logger.debug("Running preset %s with %r", self.NAME, self.spec)

        report = Report(self.spec)
        report.rows = run_trials(self.trial, self.spec)
        report.collect_flag_violations()
        report.violations.extend(self.check(report))

        for label, summary in report.summaries():
            logger.debug(
                "%s %s: mean %.6g, variance %.3g, mean error %s",
                self.NAME,
                label,
                summary["mean"],
                summary["variance"],
                summary["mean_abs_error"],
            )
        for x in report.violations:
            logger.warning("%s: %s", self.NAME, x)
        return report

    def check(self, report):
        """Invariant violations beyond the per-row flags."""

        return []


def vqsl_row(trial, label, rho, result, **params):
    """A row for a learned purification: achieved against best fidelity."""

    row = ExperimentResult(
        trial,
        label,
        "vqsl",
        matrix_digest(rho.mat),
        result.fidelity,
        oracle=result.bound.ceiling,
        iterations=result.trace.iterations,
        params=dict(params, floor=result.bound.floor),
    )
    row.traces[MAIN_STAGE] = result.trace
    return row
