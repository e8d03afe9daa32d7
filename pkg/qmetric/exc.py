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


class QMetricError(Exception):
    pass


class DimensionError(QMetricError, ValueError):
    pass


class NotHermitianError(QMetricError, ValueError):
    def __init__(self, deviation):
        super().__init__(
            "operator is not Hermitian (max |H - H^dagger| = {:.3g})".format(
                deviation
            )
        )
        self.deviation = deviation


class NotPositiveError(QMetricError, ValueError):
    def __init__(self, eigenvalue):
        super().__init__(
            "operator is not positive semidefinite (eigenvalue {:.3g})".format(
                eigenvalue
            )
        )
        self.eigenvalue = eigenvalue


class NonUnitaryError(QMetricError, ValueError):
    def __init__(self, deviation):
        super().__init__(
            "operator is not unitary (max |U U^dagger - I| = {:.3g})".format(
                deviation
            )
        )
        self.deviation = deviation


class RangeError(QMetricError, ValueError):
    pass


class InvalidStateError(QMetricError, ValueError):
    """
    A matrix or vector failed one of the state invariants. `kind` names the
    invariant ("trace violation", "hermiticity violation", "positivity
    violation" or "norm violation").
    """

    def __init__(self, kind, detail=""):
        super().__init__(" ".join(x for x in (kind, detail) if x))
        self.kind = kind
        self.detail = detail


class OptimizationError(QMetricError):
    pass


class SpecParseError(QMetricError):
    def __init__(self, path, detail, line=None, field=None):
        self.path = path
        self.detail = detail
        self.line = line
        self.field = field

        where = [str(path)]
        if line is not None:
            where.append("line {}".format(line))
        if field is not None:
            where.append("field {!r}".format(field))
        super().__init__("{}: {}".format(", ".join(where), detail))


class UnknownPresetError(QMetricError):
    def __init__(self, name):
        super().__init__("unknown preset {!r}".format(name))
        self.name = name
