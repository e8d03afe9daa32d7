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

import sys
import logging
import importlib
import traceback

from ..exc import UnknownPresetError
from ..logging import line_eraser
from ..tools import python_module_missing

logger = logging.getLogger(__name__)


class PresetManager:
    PRESETS = (
        "fig2.Fig2",
        "fig3.Fig3",
        "table1.TableI",
        "table2.TableII",
        "table3.TableIII",
        "fig4.Fig4",
        "figs2.FigS2",
    )

    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

        if not self._singleton:
            self.reload()

    def reload(self):
        self.classes = {}

        for x in self.PRESETS:
            package, klass_name = x.rsplit(".", 1)

            try:
                mod = importlib.import_module(
                    "qmetric.presets.{}".format(package)
                )
            except ImportError as e:
                if isinstance(e, ModuleNotFoundError):
                    python_module_missing(e.name)
                logger.error("Could not import %s:", x)
                sys.stderr.buffer.write(line_eraser())
                traceback.print_exception(None, e, e.__traceback__)
                sys.exit(2)

            klass = getattr(mod, klass_name)
            self.classes[klass.NAME] = klass

        logger.debug("Loaded %d preset classes", len(self.classes))

    def names(self):
        return list(self.classes)

    def get(self, name):
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownPresetError(name)

    def format_descriptions(self):
        width = max(len(x) for x in self.classes)
        return "\n".join(
            "  {:<{}}  {}".format(x.NAME, width, x.DESCRIPTION)
            for x in self.classes.values()
        )
