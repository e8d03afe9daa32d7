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

"""
The experiment harness shared by presets and custom specs: per-trial
seeding, concurrent execution, result rows and summaries.
"""

import concurrent.futures
import logging

import numpy as np

from . import VERSION
from .algorithms import ABOVE_ORACLE
from .config import Config
from .progress import Progress
from .states import RNG_ALGORITHM, matrix_digest
from .tools import library_versions

logger = logging.getLogger(__name__)

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)

# the trace of the optimization that produced a row's estimate
MAIN_STAGE = "main"


class ExperimentSpec:
    def __init__(
        self,
        name,
        algorithm=None,
        trials=1,
        seed=0,
        out=".",
        output_format=CSV,
        shots=None,
        depth=None,
        optim=None,
        params=None,
        base=".",
    ):
        if trials < 1:
            raise ValueError("trials must be positive")
        if output_format not in FORMATS:
            raise ValueError(
                "unknown output format {!r}".format(output_format)
            )
        self.name = name
        self.algorithm = algorithm
        self.trials = int(trials)
        self.seed = int(seed)
        self.out = out
        self.output_format = output_format
        self.shots = shots
        self.depth = depth
        # OptimConfig overrides, eg. {"learning_rate": 0.1}
        self.optim = dict(optim or {})
        # preset or estimator specific inputs
        self.params = dict(params or {})
        # directory that relative input paths are resolved against
        self.base = base

    def as_dict(self):
        return {
            "name": self.name,
            "algorithm": self.algorithm,
            "trials": self.trials,
            "seed": self.seed,
            "format": self.output_format,
            "shots": self.shots,
            "depth": self.depth,
            "optim": self.optim,
            "params": self.params,
        }

    def __repr__(self):
        return "<ExperimentSpec {} trials={} seed={}>".format(
            self.name, self.trials, self.seed
        )


class ExperimentResult:
    """One row of a results table."""

    def __init__(
        self,
        trial,
        label,
        algorithm,
        digest,
        estimate,
        oracle=None,
        iterations=0,
        wall_time=None,
        flags=(),
        params=None,
    ):
        self.trial = trial
        self.label = label
        self.algorithm = algorithm
        self.digest = digest
        self.estimate = float(estimate)
        self.oracle = None if oracle is None else float(oracle)
        self.iterations = iterations
        self.wall_time = wall_time
        self.flags = list(flags)
        self.params = dict(params or {})
        self.traces = {}

    @classmethod
    def from_estimate(cls, trial, label, inputs, result, **params):
        """
        Build a row from an EstimateResult.  `inputs` are the matrices the
        estimate was computed from; only their digest is kept.
        """

        row = cls(
            trial,
            label,
            result.algorithm,
            matrix_digest(*inputs),
            result.estimate,
            oracle=result.oracle,
            iterations=result.iterations,
            wall_time=result.wall_time,
            flags=result.flags,
            params=params,
        )
        row.traces[MAIN_STAGE] = result.trace
        row.traces.update(result.stage_traces)
        return row

    @property
    def abs_error(self):
        if self.oracle is None:
            return None
        return abs(self.estimate - self.oracle)

    @property
    def rel_error(self):
        if self.oracle is None or self.oracle == 0:
            return None
        return self.abs_error / abs(self.oracle)

    def as_dict(self):
        d = {
            "trial": self.trial,
            "label": self.label,
            "algorithm": self.algorithm,
            "digest": self.digest,
            "estimate": self.estimate,
            "oracle": self.oracle,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "iterations": self.iterations,
            "flags": self.flags,
            "params": self.params,
        }
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d

    def __repr__(self):
        return "<ExperimentResult trial={} {} estimate={:.6g}>".format(
            self.trial, self.label, self.estimate
        )


def derive_seed(seed, trial):
    return int(seed) ^ int(trial)


def summarize(rows):
    """Mean and sample variance of the estimates and error statistics."""

    estimates = np.array([x.estimate for x in rows], dtype=float)
    abs_errors = [x.abs_error for x in rows if x.abs_error is not None]
    rel_errors = [x.rel_error for x in rows if x.rel_error is not None]

    return {
        "count": len(rows),
        "mean": float(np.mean(estimates)) if len(rows) else None,
        "variance": float(np.var(estimates, ddof=1))
        if len(rows) > 1
        else 0.0,
        "mean_abs_error": float(np.mean(abs_errors)) if abs_errors else None,
        "max_abs_error": float(np.max(abs_errors)) if abs_errors else None,
        "mean_rel_error": float(np.mean(rel_errors)) if rel_errors else None,
    }


class Report:
    def __init__(self, spec):
        self.spec = spec
        self.rows = []
        self.violations = []

    @property
    def metadata(self):
        return {
            "preset": self.spec.name,
            "seed": self.spec.seed,
            "trials": self.spec.trials,
            "shots": self.spec.shots,
            "rng": RNG_ALGORITHM,
            "version": VERSION,
            "libraries": library_versions(),
            "spec": self.spec.as_dict(),
        }

    def labels(self):
        seen = []
        for x in self.rows:
            if x.label not in seen:
                seen.append(x.label)
        return seen

    def rows_for(self, label):
        return [x for x in self.rows if x.label == label]

    def summaries(self):
        """One summary per row label, in order of first appearance."""

        return [(x, summarize(self.rows_for(x))) for x in self.labels()]

    def collect_flag_violations(self):
        for x in self.rows:
            for flag in x.flags:
                if flag == ABOVE_ORACLE:
                    self.violations.append(
                        "trial {} ({}): estimate {!r} above exact value "
                        "{!r}".format(x.trial, x.label, x.estimate, x.oracle)
                    )

    def __repr__(self):
        return "<Report {} rows={} violations={}>".format(
            self.spec.name, len(self.rows), len(self.violations)
        )


def run_trials(fn, spec, threads=None):
    """
    Call fn(trial, seed) for every trial, each with its own derived seed,
    on up to `threads` worker threads.  Returns all rows ordered by trial
    index then by the order fn returned them.
    """

    threads = Config().threads if threads is None else threads
    results = {}

    with Progress(spec.trials) as progress:
        if threads == 1:
            for trial in range(spec.trials):
                results[trial] = fn(trial, derive_seed(spec.seed, trial))
                progress.step("trial {}".format(trial))
        else:
            with concurrent.futures.ThreadPoolExecutor(
                max_workers=threads
            ) as executor:
                futures = {
                    executor.submit(fn, x, derive_seed(spec.seed, x)): x
                    for x in range(spec.trials)
                }
                for future in concurrent.futures.as_completed(futures):
                    trial = futures[future]
                    results[trial] = future.result()
                    progress.step("trial {}".format(trial))

    rows = []
    for trial in sorted(results):
        rows.extend(results[trial])
    logger.debug(
        "%s: %d trial(s) produced %d row(s)", spec, len(results), len(rows)
    )
    return rows
