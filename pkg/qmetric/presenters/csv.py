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

from ..config import Config
from ..experiment import MAIN_STAGE
from .utils import Presenter, format_value, make_printer

CSV_FORMAT_VERSION = 1
CSV_FORMAT_MAGIC = "qmetric-csv-version"

RESULT_COLUMNS = (
    "trial",
    "label",
    "algorithm",
    "digest",
    "estimate",
    "oracle",
    "abs_error",
    "rel_error",
    "iterations",
    "flags",
)
SUMMARY_COLUMNS = ("count", "variance", "max_abs_error")
TRACE_COLUMNS = ("label", "stage", "iteration", "restart", "loss")


def ordered_stages(traces):
    rest = sorted(x for x in traces if x != MAIN_STAGE)
    return ([MAIN_STAGE] if MAIN_STAGE in traces else []) + rest


class CSVPresenter(Presenter):
    def start(self, report):
        self.write_results(report)
        for trial in sorted({x.trial for x in report.rows}):
            self.write_trace(report, trial)

    def results_filename(self, report):
        return "{}-results.csv".format(report.spec.name)

    def trace_filename(self, report, trial):
        return "{}-trace-{}.csv".format(report.spec.name, trial)

    def write_header(self, fn):
        fn("# {}: {}".format(CSV_FORMAT_MAGIC, CSV_FORMAT_VERSION))

    def result_columns(self, report):
        params = sorted({k for x in report.rows for k in x.params})
        columns = list(RESULT_COLUMNS) + params + list(SUMMARY_COLUMNS)
        if Config().record_timing:
            columns.append("wall_time")
        return columns

    def write_results(self, report):
        columns = self.result_columns(report)

        with make_printer(self.path(self.results_filename(report))) as fn:
            self.write_header(fn)
            writer = csv.DictWriter(
                fn.output,
                fieldnames=columns,
                restval="",
                extrasaction="ignore",
                lineterminator="\n",
            )
            writer.writeheader()

            for row in report.rows:
                d = row.as_dict()
                d.update(d.pop("params"))
                writer.writerow({k: format_value(v) for k, v in d.items()})

            for label, summary in report.summaries():
                writer.writerow(
                    {
                        "trial": "summary",
                        "label": label,
                        "estimate": format_value(summary["mean"]),
                        "abs_error": format_value(summary["mean_abs_error"]),
                        "rel_error": format_value(summary["mean_rel_error"]),
                        "count": summary["count"],
                        "variance": format_value(summary["variance"]),
                        "max_abs_error": format_value(
                            summary["max_abs_error"]
                        ),
                    }
                )

    def write_trace(self, report, trial):
        with make_printer(self.path(self.trace_filename(report, trial))) as fn:
            self.write_header(fn)
            writer = csv.writer(fn.output, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)

            for row in report.rows:
                if row.trial != trial:
                    continue
                for stage in ordered_stages(row.traces):
                    for iteration, restart, loss in row.traces[stage].rows():
                        writer.writerow(
                            (
                                row.label,
                                stage,
                                iteration,
                                restart,
                                format_value(loss),
                            )
                        )
