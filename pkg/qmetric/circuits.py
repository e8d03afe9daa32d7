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
Parameterised circuits.

Qubit 0 is the most significant bit of a computational-basis index and
ancilla qubits come last. Rotations are generated as exp(-i theta P / 2)
for a Pauli P, so every parameter admits the two-term shift rule.

The ancilla-readout family runs hardware-efficient layers on every qubit
but the last and then rotates that last qubit, the ancilla, by an angle
chosen by the computational-basis state of the others.  The ancilla is
still in |0> when the readout acts, so each readout angle enters an
ancilla-0 expectation as cos^2(angle / 2) and keeps the shift rule exact.
"""

import math
import typing

import numpy as np
import scipy.linalg

from . import linalg
from .config import Config
from .exc import DimensionError, NonUnitaryError
from .states import DensityMatrix, StateVector

HARDWARE_EFFICIENT = "hardware_efficient"
PURIFICATION_U3 = "purification_u3"
ANCILLA_READOUT = "ancilla_readout"

FAMILIES = {
    # family -> parameters per qubit per layer
    HARDWARE_EFFICIENT: 2,
    PURIFICATION_U3: 3,
    ANCILLA_READOUT: 2,
}

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CZ = np.diag([1, 1, 1, -1]).astype(complex)

# how far below full weight the even-restart readout starts
READOUT_SPREAD = 0.6


def ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta):
    return np.diag(
        [np.exp(-0.5j * theta), np.exp(0.5j * theta)]
    ).astype(complex)


def u3(theta, phi, lam):
    """U3(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda)."""

    return rz(phi) @ ry(theta) @ rz(lam)


class AnsatzSpec:
    def __init__(self, family, n_qubits, depth):
        if family not in FAMILIES:
            raise ValueError("unknown ansatz family {!r}".format(family))
        if n_qubits < 1:
            raise ValueError("an ansatz needs at least one qubit")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        if family == ANCILLA_READOUT and n_qubits < 2:
            raise ValueError("an ancilla readout needs a system qubit")
        self.family = family
        self.n_qubits = int(n_qubits)
        self.depth = int(depth)

    @property
    def layer_qubits(self):
        """The qubits the rotation layers act on."""

        if self.family == ANCILLA_READOUT:
            return self.n_qubits - 1
        return self.n_qubits

    @property
    def readout_count(self):
        if self.family == ANCILLA_READOUT:
            return 2**self.layer_qubits
        return 0

    @property
    def param_count(self):
        return (
            FAMILIES[self.family] * self.layer_qubits * self.depth
            + self.readout_count
        )

    @property
    def dim(self):
        return 2**self.n_qubits

    def __eq__(self, other):
        return (
            isinstance(other, AnsatzSpec)
            and self.as_dict() == other.as_dict()
        )

    def __hash__(self):
        return hash((self.family, self.n_qubits, self.depth))

    def __repr__(self):
        return "<AnsatzSpec {} n_qubits={} depth={}>".format(
            self.family, self.n_qubits, self.depth
        )

    def as_dict(self):
        return {
            "family": self.family,
            "n_qubits": self.n_qubits,
            "depth": self.depth,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["family"], data["n_qubits"], data["depth"])


def param_count(a):
    return a.param_count


class GateSpec(typing.NamedTuple):
    kind: str
    targets: typing.Tuple[int, ...]
    # indices into the parameter vector, in the order the gate takes them
    params: typing.Tuple[int, ...] = ()

    def matrix(self, theta):
        angles = [theta[i] for i in self.params]
        if self.kind == "Ry":
            return ry(*angles)
        if self.kind == "Rz":
            return rz(*angles)
        if self.kind == "U3":
            return u3(*angles)
        if self.kind == "CNOT":
            return CNOT
        if self.kind == "CZ":
            return CZ
        if self.kind == "MuxRy":
            # one Ry block on the last target per state of the others
            return scipy.linalg.block_diag(*[ry(x) for x in angles])
        raise ValueError("unknown gate kind {!r}".format(self.kind))


def entangling_pairs(a):
    n = a.layer_qubits
    if n == 1:
        return []
    if a.family in (HARDWARE_EFFICIENT, ANCILLA_READOUT):
        return [(i, i + 1) for i in range(n - 1)]
    if n == 2:
        return [(0, 1), (1, 0)]
    return [(i, (i + 1) % n) for i in range(n)]


def ansatz_gates(a):
    """
    Flatten `a` into gates. Each layer puts rotations on every layer qubit
    (Ry then Rz for the hardware-efficient and ancilla-readout families,
    one U3 for the purification family) and then the CNOT pattern of the
    family.  The ancilla-readout family ends with its multiplexed Ry.
    """

    gates = []
    k = 0
    for _ in range(a.depth):
        for q in range(a.layer_qubits):
            if a.family != PURIFICATION_U3:
                gates.append(GateSpec("Ry", (q,), (k,)))
                gates.append(GateSpec("Rz", (q,), (k + 1,)))
                k += 2
            else:
                gates.append(GateSpec("U3", (q,), (k, k + 1, k + 2)))
                k += 3
        for control, target in entangling_pairs(a):
            gates.append(GateSpec("CNOT", (control, target)))
    if a.readout_count:
        gates.append(
            GateSpec(
                "MuxRy",
                tuple(range(a.n_qubits)),
                tuple(range(k, k + a.readout_count)),
            )
        )
    return gates


def check_params(a, theta):
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if len(theta) != a.param_count:
        raise DimensionError(
            "{} expects {} parameters, got {}".format(
                a, a.param_count, len(theta)
            )
        )
    return theta


def apply_gate(m, gate_matrix, targets, n_qubits):
    """
    Apply a gate on `targets` to every column of `m`, a (2**n, k) array or
    a length-2**n vector.
    """

    vector = m.ndim == 1
    cols = 1 if vector else m.shape[1]
    t = m.reshape((2,) * n_qubits + (cols,))

    width = len(targets)
    g = gate_matrix.reshape((2,) * (2 * width))
    t = np.tensordot(g, t, axes=(list(range(width, 2 * width)), list(targets)))
    t = np.moveaxis(t, list(range(width)), list(targets))

    if vector:
        return t.reshape(-1)
    return t.reshape(2**n_qubits, cols)


def conjugate_gate(m, gate_matrix, targets, n_qubits):
    """G m G^dag for a gate G on `targets` and a square `m`."""

    left = apply_gate(m, gate_matrix, targets, n_qubits)
    return apply_gate(left.conj().T, gate_matrix, targets, n_qubits).conj().T


def apply_circuit(a, theta, m):
    """Apply the circuit of `a` at angles `theta` gate by gate to `m`."""

    theta = check_params(a, theta)
    m = np.asarray(m, dtype=complex)
    if m.shape[0] != a.dim:
        raise DimensionError(
            "{} acts on dimension {}, got {}".format(a, a.dim, m.shape[0])
        )
    for gate in ansatz_gates(a):
        m = apply_gate(m, gate.matrix(theta), gate.targets, a.n_qubits)
    return m


def circuit_unitary(a, theta):
    return apply_circuit(a, theta, np.eye(a.dim, dtype=complex))


def circuit_state(a, theta):
    """U(theta)|0...0>."""

    zero = np.zeros(a.dim, dtype=complex)
    zero[0] = 1
    return apply_circuit(a, theta, zero)


def _check_unitary(u):
    u = linalg.as_square(u)
    deviation = linalg.unitarity_error(u)
    if deviation > Config().unitary_atol:
        raise NonUnitaryError(deviation)
    return u


def apply_to_density(u, rho):
    u = _check_unitary(u)
    if u.shape[0] != rho.dim:
        raise DimensionError(
            "unitary of dimension {} on a {}-dimensional state".format(
                u.shape[0], rho.dim
            )
        )
    return DensityMatrix(u @ rho.mat @ linalg.dagger(u))


def apply_to_vector(u, psi):
    u = _check_unitary(u)
    if u.shape[0] != psi.dim:
        raise DimensionError(
            "unitary of dimension {} on a {}-dimensional vector".format(
                u.shape[0], psi.dim
            )
        )
    amp = u @ psi.amp
    return StateVector(amp / np.linalg.norm(amp))


def embed_on_subsystem(u, total_qubits, target_qubits):
    """The unitary acting as `u` on `target_qubits` and trivially elsewhere."""

    targets = tuple(int(q) for q in target_qubits)
    if len(set(targets)) != len(targets):
        raise DimensionError("overlapping targets {}".format(targets))
    if any(q < 0 or q >= total_qubits for q in targets):
        raise DimensionError(
            "targets {} out of range for {} qubits".format(
                targets, total_qubits
            )
        )
    u = linalg.as_square(u)
    if u.shape[0] != 2 ** len(targets):
        raise DimensionError(
            "a {}x{} unitary cannot act on {} qubit(s)".format(
                *u.shape, len(targets)
            )
        )
    return apply_gate(
        np.eye(2**total_qubits, dtype=complex), u, targets, total_qubits
    )


def random_params(a, rng):
    return rng.uniform(0, 2 * np.pi, size=a.param_count)


def readout_angles(count, restart=0):
    """
    Starting readout angles.  Even restarts weight the first basis state
    fully and the rest barely, in slightly decreasing amounts; odd restarts
    start from a ladder descending evenly from near 1 to near 0.
    """

    x = np.arange(count)
    if restart % 2:
        return np.pi * (x + 0.5) / count
    angles = np.pi - READOUT_SPREAD * (count - x) / count
    angles[0] = 0.0
    return angles


def initial_params(a, rng, restart=0):
    """random_params(), with the readout angles of `a` (if any) replaced."""

    theta = random_params(a, rng)
    if a.readout_count:
        theta[-a.readout_count :] = readout_angles(a.readout_count, restart)
    return theta
