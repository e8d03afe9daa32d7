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
Quantum states: density matrices, state vectors, named states, the two
noise channels and seeded random states.
"""

import hashlib
import logging

import numpy as np

from . import linalg
from .config import Config
from .exc import DimensionError, InvalidStateError, RangeError

logger = logging.getLogger(__name__)

# Recorded in every result so a run can be reproduced bit-for-bit.
RNG_ALGORITHM = "numpy.random.PCG64"

DEPOLARIZING = "depolarizing"
DEPHASING = "dephasing"

PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def make_rng(seed=None):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def qubit_count(dim):
    n = int(dim).bit_length() - 1
    if n < 0 or 2**n != dim:
        raise DimensionError("dimension {} is not a power of two".format(dim))
    return n


class StateVector:
    def __init__(self, amp, validate=True):
        amp = np.asarray(amp, dtype=complex).reshape(-1)
        self.n_qubits = qubit_count(len(amp))
        self.amp = amp
        if validate:
            self.check()

    def check(self, atol=None):
        atol = Config().normalization_atol if atol is None else atol
        norm = float(np.linalg.norm(self.amp))
        if abs(norm - 1) > atol:
            raise InvalidStateError(
                "norm violation", "(norm {:.12g})".format(norm)
            )

    @property
    def dim(self):
        return len(self.amp)

    def __repr__(self):
        return "<StateVector n_qubits={}>".format(self.n_qubits)

    def as_dict(self):
        return {
            "n_qubits": self.n_qubits,
            "amplitudes": [[float(x.real), float(x.imag)] for x in self.amp],
        }


class DensityMatrix:
    def __init__(self, mat, validate=True):
        mat = linalg.as_square(mat)
        self.n_qubits = qubit_count(mat.shape[0])
        self.mat = mat
        if validate:
            self.check()

    def check(self):
        config = Config()

        deviation = linalg.hermiticity_error(self.mat)
        if deviation > config.hermitian_atol:
            raise InvalidStateError(
                "hermiticity violation", "(deviation {:.3g})".format(deviation)
            )
        # absorb round-off from channel and circuit composition
        self.mat = (self.mat + linalg.dagger(self.mat)) / 2

        trace = complex(np.trace(self.mat))
        if abs(trace - 1) > config.hermitian_atol:
            raise InvalidStateError(
                "trace violation", "(trace {:.12g})".format(trace.real)
            )

        lowest = self.eigenvalues()[-1]
        if lowest < -config.hermitian_atol:
            raise InvalidStateError(
                "positivity violation", "(eigenvalue {:.3g})".format(lowest)
            )

    @property
    def dim(self):
        return self.mat.shape[0]

    def eigenvalues(self):
        return linalg.eigvalsh_desc(self.mat)

    def rank(self, threshold=None):
        threshold = Config().rank_threshold if threshold is None else threshold
        return int(np.sum(self.eigenvalues() > threshold))

    def purity(self):
        return float(np.real(np.trace(self.mat @ self.mat)))

    def __repr__(self):
        return "<DensityMatrix n_qubits={}>".format(self.n_qubits)

    def as_dict(self):
        return {
            "n_qubits": self.n_qubits,
            "entries": [
                [float(x.real), float(x.imag)] for x in self.mat.reshape(-1)
            ],
        }

    @classmethod
    def from_dict(cls, data, validate=True):
        return cls(entries_to_matrix(data), validate=validate)


def entries_to_matrix(data):
    n = int(data["n_qubits"])
    entries = np.asarray(data["entries"], dtype=float)
    dim = 2**n
    if entries.shape != (dim * dim, 2):
        raise DimensionError(
            "expected {} [re, im] entries for {} qubits, got shape {}".format(
                dim * dim, n, entries.shape
            )
        )
    return (entries[:, 0] + 1j * entries[:, 1]).reshape(dim, dim)


class ChannelSpec:
    def __init__(self, kind, p):
        if kind not in (DEPOLARIZING, DEPHASING):
            raise ValueError("unknown channel kind {!r}".format(kind))
        if not 0 <= p <= 1:
            raise RangeError("channel parameter p={} not in [0, 1]".format(p))
        self.kind = kind
        self.p = float(p)

    def __repr__(self):
        return "<ChannelSpec {} p={}>".format(self.kind, self.p)

    def as_dict(self):
        return {"kind": self.kind, "p": self.p}


def density_from_vector(v):
    if not isinstance(v, StateVector):
        v = StateVector(v)
    v.check()
    return DensityMatrix(np.outer(v.amp, v.amp.conj()))


def basis_state(n, index=0):
    amp = np.zeros(2**n, dtype=complex)
    amp[index] = 1
    return StateVector(amp)


def plus_state():
    return StateVector(np.array([1, 1]) / np.sqrt(2))


def ghz(n):
    if n < 1:
        raise RangeError("GHZ state needs at least one qubit")
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = amp[-1] = 1 / np.sqrt(2)
    return StateVector(amp)


def maximally_mixed(n):
    return DensityMatrix(np.eye(2**n, dtype=complex) / 2**n)


def apply_channel(rho, ch):
    if ch.kind == DEPOLARIZING:
        mixed = np.trace(rho.mat) * np.eye(rho.dim) / rho.dim
        return DensityMatrix(ch.p * mixed + (1 - ch.p) * rho.mat)

    if rho.n_qubits != 1:
        raise DimensionError(
            "dephasing is only defined for single-qubit states, got {} "
            "qubits".format(rho.n_qubits)
        )
    return DensityMatrix(
        ch.p * PAULI_Z @ rho.mat @ PAULI_Z + (1 - ch.p) * rho.mat
    )


def depolarize(rho, p):
    return apply_channel(rho, ChannelSpec(DEPOLARIZING, p))


def dephase(rho, p):
    return apply_channel(rho, ChannelSpec(DEPHASING, p))


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / (
        np.sqrt(2)
    )


def random_pure(n, seed=None):
    """A Haar-distributed pure state on `n` qubits."""

    rng = make_rng(seed)
    amp = _complex_gaussian(rng, 2**n)
    return StateVector(amp / np.linalg.norm(amp))


def random_isometry(dim, k, rng):
    # QR of a Gaussian matrix, phases fixed so the columns are Haar
    q, r = np.linalg.qr(_complex_gaussian(rng, (dim, k)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_mixed(n, k, seed=None):
    """
    A random `n`-qubit density matrix of rank exactly `k`.

    Equivalent to tracing out the ancilla of a pure state of Schmidt rank
    `k`: a Haar isometry carries Dirichlet(1, ..., 1) weights (normalised
    exponentials) onto `k` orthonormal vectors.
    """

    dim = 2**n
    if not 1 <= k <= dim:
        raise RangeError("rank {} out of range 1..{}".format(k, dim))

    rng = make_rng(seed)
    v = random_isometry(dim, k, rng)
    weights = rng.exponential(size=k)
    weights /= weights.sum()
    rho = DensityMatrix((v * weights) @ linalg.dagger(v))

    if rho.rank() != k:
        # a weight fell under the rank threshold; astronomically unlikely
        logger.debug("Redrawing rank-%d state after numerical rank loss", k)
        return random_mixed(n, k, rng)
    return rho


def random_full_rank(n, seed=None):
    return random_mixed(n, 2**n, seed)


def purify_exact(rho, n_R):
    """
    Return sum_j sqrt(lambda_j) |psi_j>_A |j>_R with the ancilla qubits last.
    """

    eig = linalg.herm_eig(rho.mat)
    values = np.clip(eig.eigenvalues, 0, None)
    rank = int(np.sum(values > Config().rank_threshold))
    d_R = 2**n_R
    if rank > d_R:
        raise RangeError(
            "{} ancilla qubit(s) cannot purify a rank-{} state".format(
                n_R, rank
            )
        )

    psi = np.zeros((rho.dim, d_R), dtype=complex)
    for j in range(min(d_R, rho.dim)):
        psi[:, j] = np.sqrt(values[j]) * eig.eigenvectors[:, j]

    amp = psi.reshape(-1)
    return StateVector(amp / np.linalg.norm(amp))


def reduced_state(psi, n_A):
    """The marginal on the first `n_A` qubits of a pure state."""

    m = psi.amp.reshape(2**n_A, -1)
    return DensityMatrix(m @ linalg.dagger(m))


def matrix_digest(*ms):
    h = hashlib.sha256()
    for m in ms:
        h.update(np.ascontiguousarray(np.asarray(m, dtype=complex)).tobytes())
    return h.hexdigest()[:16]
