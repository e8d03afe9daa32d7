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
from collections import OrderedDict

from .csv import ordered_stages
from .utils import Presenter, make_printer

JSON_FORMAT_VERSION = 1
JSON_FORMAT_MAGIC = "qmetric-json-version"

_NUMBER_OR_NULL = {"type": ["number", "null"]}

JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "qmetric results",
    "type": "object",
    "required": [
        JSON_FORMAT_MAGIC,
        "metadata",
        "rows",
        "summary",
        "traces",
        "violations",
    ],
    "properties": {
        JSON_FORMAT_MAGIC: {"const": JSON_FORMAT_VERSION},
        "metadata": {
            "type": "object",
            "required": ["preset", "seed", "trials", "rng", "version"],
        },
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
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
                    "params",
                ],
                "properties": {
                    "trial": {"type": "integer"},
                    "label": {"type": "string"},
                    "estimate": {"type": "number"},
                    "oracle": _NUMBER_OR_NULL,
                    "abs_error": _NUMBER_OR_NULL,
                    "rel_error": _NUMBER_OR_NULL,
                    "iterations": {"type": "integer"},
                    "flags": {"type": "array", "items": {"type": "string"}},
                    "params": {"type": "object"},
                },
            },
        },
        "summary": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "label",
                    "count",
                    "mean",
                    "variance",
                    "mean_abs_error",
                    "max_abs_error",
                    "mean_rel_error",
                ],
            },
        },
        "traces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["trial", "label", "stage", "losses"],
                "properties": {
                    # restart index (as a string) -> loss per iteration
                    "losses": {
                        "type": "object",
                        "additionalProperties": {
                            "type": "array",
                            "items": {"type": "number"},
                        },
                    }
                },
            },
        },
        "violations": {"type": "array", "items": {"type": "string"}},
    },
}


class JSONPresenter(Presenter):
    def filename(self, report):
        return "{}.json".format(report.spec.name)

    def start(self, report):
        root = OrderedDict(
            [
                (JSON_FORMAT_MAGIC, JSON_FORMAT_VERSION),
                ("metadata", report.metadata),
                ("rows", [x.as_dict() for x in report.rows]),
                (
                    "summary",
                    [dict(label=x, **y) for x, y in report.summaries()],
                ),
                ("traces", list(self.traces(report))),
                ("violations", list(report.violations)),
            ]
        )

        with make_printer(self.path(self.filename(report))) as fn:
            # nested objects sorted; the magic stays first
            fn(
                "{{{}}}".format(
                    ", ".join(
                        "{}: {}".format(
                            json.dumps(k), json.dumps(v, sort_keys=True)
                        )
                        for k, v in root.items()
                    )
                )
            )

    def traces(self, report):
        for row in report.rows:
            for stage in ordered_stages(row.traces):
                yield {
                    "trial": row.trial,
                    "label": row.label,
                    "stage": stage,
                    "losses": {
                        str(k): v
                        for k, v in sorted(row.traces[stage].losses.items())
                    },
                }
