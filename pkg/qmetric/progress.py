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
import logging
import os
import sys
import threading

from .logging import line_eraser
from .tools import (
    get_comment_for_missing_python_module,
    python_module_missing,
)

logger = logging.getLogger(__name__)

try:
    import progressbar
except ImportError:
    python_module_missing("progressbar")
    progressbar = None


class ProgressLoggingHandler(logging.StreamHandler):
    """Redraw the bar after each log line so it stays at the bottom."""

    def __init__(self, bar):
        self.bar = bar
        super().__init__()

    def emit(self, record):
        try:
            super().emit(record)
            self.bar.redraw()
        except Exception:
            self.handleError(record)


class ProgressManager:
    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

        if not self._singleton:
            self.reset()

    def reset(self):
        self.observers = []
        self.current = 0
        self.total = 0
        self.lock = threading.Lock()

    def setup(self, parsed_args):
        def show_progressbar():
            if parsed_args.progress:
                return True

            # by default only on a terminal and never while debugging
            if parsed_args.progress is None:
                return sys.stdout.isatty() and not parsed_args.debug

            return False

        log_handler = None
        if show_progressbar():
            if progressbar is not None:
                bar = ProgressBar()
                self.register(bar)
                log_handler = ProgressLoggingHandler(bar)
            elif parsed_args.progress:
                logger.warning(
                    'Progress bar was requested but the "progressbar" '
                    "module is unavailable. %s",
                    get_comment_for_missing_python_module("progressbar"),
                )

        if parsed_args.status_fd:
            self.register(StatusFD(os.fdopen(parsed_args.status_fd, "w")))

        return log_handler

    def register(self, observer):
        logger.debug("Registering %s as a progress observer", observer)
        self.observers.append(observer)

    def begin(self, total):
        with self.lock:
            self.current = 0
            self.total = total

    def advance(self, msg=""):
        # trials finish on worker threads
        with self.lock:
            self.current += 1
            for x in self.observers:
                x.notify(self.current, self.total, msg)

    def finish(self):
        for x in self.observers:
            x.finish()


class Progress:
    """Progress over `total` trials; call step() once per finished trial."""

    def __init__(self, total):
        self.total = total

    def __enter__(self):
        ProgressManager().begin(self.total)
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        return False

    def step(self, msg=""):
        ProgressManager().advance(msg)


class ProgressBar:
    def __init__(self):
        self.msg = ""

        class Message(progressbar.widgets.WidgetBase):
            def __call__(self, progress, data, _observer=self):
                msg = _observer.msg
                width = 25
                if len(msg) <= width:
                    return msg.rjust(width)
                return "…{}".format(msg[-width + 1 :])

        class TrialBar(progressbar.ProgressBar):
            def __init__(self, *args, **kwargs):
                kwargs.setdefault("fd", sys.stderr)
                super().__init__(*args, **kwargs)
                self.erase_to_eol = line_eraser(self.fd)

            def finish(self):
                super().finish()
                if self.erase_to_eol:
                    self.fd.buffer.write(self.erase_to_eol)
                    self.fd.flush()

        self.bar = TrialBar(
            widgets=(
                " ",
                progressbar.Bar(),
                "  ",
                progressbar.Counter(),
                "  ",
                Message(),
                "  ",
                progressbar.ETA(),
                " ",
            )
        )

    def notify(self, current, total, msg):
        self.msg = msg
        self.bar.max_value = total
        self.bar.update(current)

    def redraw(self):
        if not getattr(self.bar, "finished", False):
            self.bar.update()

    def finish(self):
        self.bar.finish()


class StatusFD:
    def __init__(self, fileobj):
        self.fileobj = fileobj

    def notify(self, current, total, msg):
        print(
            json.dumps({"msg": msg, "total": total, "current": current}),
            file=self.fileobj,
            flush=True,
        )

    def finish(self):
        pass
