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
Measurable quantities and the loss functions the estimators optimize.

The ancilla starts in |0> and sits after the system qubits, so a system
matrix X is embedded as X (x) |0><0| by placing it on the even basis
indices.  Every ancilla-projector expectation therefore only needs the
columns of U(theta) with an even index and the rows with an even index.
"""

import logging

import numpy as np

from . import linalg
from .circuits import apply_circuit, circuit_state
from .config import Config
from .exc import DimensionError, RangeError
from .states import DensityMatrix, make_rng, qubit_count

logger = logging.getLogger(__name__)


class HermitianDecomposition:
    """A Hermitian operator written as sum_j c_j rho_j with real c_j."""

    def __init__(self, terms):
        terms = [(float(c), rho) for c, rho in terms]
        if not terms:
            raise ValueError("a decomposition needs at least one term")
        n_qubits = {rho.n_qubits for _, rho in terms}
        if len(n_qubits) != 1:
            raise DimensionError(
                "decomposition mixes qubit counts {}".format(sorted(n_qubits))
            )
        self.terms = terms
        self.n_qubits = n_qubits.pop()

    @classmethod
    def from_hermitian(cls, h):
        """Spectral decomposition: one rank-1 term per non-zero eigenvalue."""

        eig = linalg.herm_eig(h)
        terms = []
        for value, vector in zip(eig.eigenvalues, eig.eigenvectors.T):
            if abs(value) < Config().rank_threshold:
                continue
            terms.append(
                (value, DensityMatrix(np.outer(vector, vector.conj())))
            )
        if not terms:
            # the zero operator
            dim = eig.eigenvectors.shape[0]
            terms.append((0.0, DensityMatrix(np.eye(dim) / dim)))
        return cls(terms)

    @property
    def total(self):
        """tr H"""

        return float(sum(c for c, _ in self.terms))

    def reconstruct(self):
        return sum(c * rho.mat for c, rho in self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "<HermitianDecomposition n_qubits={} terms={}>".format(
            self.n_qubits, len(self.terms)
        )


class LossContext:
    """
    Everything a loss needs besides the angles.  Only the inputs relevant
    to the loss in use are set; `shots` switches from exact expectations
    to sampled ones drawn from `rng`.
    """

    def __init__(
        self,
        ansatz,
        rho=None,
        sigma=None,
        decomp=None,
        operator=None,
        psi=None,
        phi=None,
        target=None,
        k=None,
        shots=None,
        rng=None,
    ):
        self.ansatz = ansatz
        self.rho = rho
        self.sigma = sigma
        self.decomp = decomp
        self.operator = operator
        self.psi = psi
        self.phi = phi
        self.target = target
        self.k = k
        self.shots = shots
        self.rng = make_rng(rng) if shots else rng

    def __repr__(self):
        return "<LossContext {} shots={}>".format(self.ansatz, self.shots)

    def expect_system_qubits(self, n_system, n_ancilla):
        if self.ansatz.n_qubits != n_system + n_ancilla:
            raise DimensionError(
                "ansatz on {} qubits cannot cover {} system and {} ancilla "
                "qubit(s)".format(self.ansatz.n_qubits, n_system, n_ancilla)
            )

    def sample_probability(self, p):
        """Empirical frequency of an outcome with probability `p`."""

        p = min(max(p, 0.0), 1.0)
        return self.rng.binomial(self.shots, p) / self.shots


def expect_proj0_ancilla(rho_AR, ancilla_index):
    """tr[(|0><0| on qubit `ancilla_index`) rho_AR]"""

    n = rho_AR.n_qubits
    if not 0 <= ancilla_index < n:
        raise RangeError(
            "ancilla index {} out of range for {} qubits".format(
                ancilla_index, n
            )
        )
    diag = np.real(np.diag(rho_AR.mat)).reshape((2,) * n)
    value = float(np.take(diag, 0, axis=ancilla_index).sum())
    return min(max(value, 0.0), 1.0)


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionError(
            "dimension mismatch: {} vs {}".format(a.dim, b.dim)
        )


def overlap_hs(a, b, shots=None, rng=None):
    """
    tr(ab).  With `shots`, simulate a destructive swap test: outcome 0
    occurs with probability (1 + tr ab) / 2 and 2 f - 1 estimates tr ab.
    """

    _check_dims(a, b)
    exact = float(np.real(np.sum(a.mat * b.mat.T)))
    if not shots:
        return exact
    rng = make_rng(rng)
    p = min(max((1 + exact) / 2, 0.0), 1.0)
    return 2 * rng.binomial(shots, p) / shots - 1


def overlap_pure(psi, phi):
    _check_dims(psi, phi)
    return complex(np.vdot(psi.amp, phi.amp))


def ancilla_block(ansatz, theta, dim):
    """
    The dim x dim block <0|_R U(theta) |0>_R, so that the ancilla-0
    expectation of U(X (x) |0><0|)U^dag is tr(W X W^dag).
    """

    embed = np.zeros((2 * dim, dim), dtype=complex)
    embed[2 * np.arange(dim), np.arange(dim)] = 1
    return apply_circuit(ansatz, theta, embed)[0::2, :]


def ancilla_embedded(x):
    """X (x) |0><0| with the ancilla last."""

    x = np.asarray(x, dtype=complex)
    dim = x.shape[0]
    out = np.zeros((2 * dim, 2 * dim), dtype=complex)
    out[0::2, 0::2] = x
    return out


def ancilla_projector(dim):
    """I (x) |0><0| on a `dim`-dimensional system and one ancilla."""

    return np.diag(np.tile([1.0, 0.0], dim)).astype(complex)


def conjugated_expectation(w, x):
    """tr(W X W^dag) for Hermitian X."""

    return float(np.real(np.sum(w.conj() * (w @ x))))


def _projector_expectation(ctx, w, rho):
    value = conjugated_expectation(w, rho.mat)
    if ctx.shots:
        return ctx.sample_probability(value)
    return value


def loss_vtde(theta, ctx):
    """O_rho - O_sigma with the ancilla appended in |0>."""

    _check_dims(ctx.rho, ctx.sigma)
    ctx.expect_system_qubits(ctx.rho.n_qubits, 1)
    w = ancilla_block(ctx.ansatz, theta, ctx.rho.dim)
    return _projector_expectation(ctx, w, ctx.rho) - _projector_expectation(
        ctx, w, ctx.sigma
    )


def loss_trace_norm(theta, ctx):
    """2 sum_j c_j O_j - sum_j c_j, a lower bound on ||H||_1 at any theta."""

    decomp = ctx.decomp
    ctx.expect_system_qubits(decomp.n_qubits, 1)
    w = ancilla_block(ctx.ansatz, theta, 2**decomp.n_qubits)
    weighted = sum(
        c * _projector_expectation(ctx, w, rho) for c, rho in decomp.terms
    )
    return 2 * weighted - decomp.total


def loss_operator_projection(theta, ctx):
    """
    tr[|0><0|_R U (H (x) |0><0|_R) U^dag] for the Hermitian `ctx.operator`.
    Shot mode measures the spectral terms of H one by one.
    """

    h = ctx.operator
    n = qubit_count(h.shape[0])
    ctx.expect_system_qubits(n, 1)
    w = ancilla_block(ctx.ansatz, theta, h.shape[0])
    if not ctx.shots:
        return conjugated_expectation(w, h)
    if ctx.decomp is None:
        ctx.decomp = HermitianDecomposition.from_hermitian(h)
    return sum(
        c * _projector_expectation(ctx, w, rho) for c, rho in ctx.decomp.terms
    )


def _split(amp, n_R):
    d_R = 2**n_R
    return amp.reshape(-1, d_R)


def vfe_amplitude(theta, ctx):
    """<psi| (I_A (x) U_R(theta)) |phi>"""

    _check_dims(ctx.psi, ctx.phi)
    n_R = ctx.ansatz.n_qubits
    if n_R >= ctx.psi.n_qubits:
        raise DimensionError(
            "ancilla ansatz on {} qubits leaves no system in a {}-qubit "
            "purification".format(n_R, ctx.psi.n_qubits)
        )
    phi = _split(ctx.phi.amp, n_R)
    # (I (x) U) vec(Phi) = vec(Phi U^T)
    rotated = apply_circuit(ctx.ansatz, theta, phi.T).T
    return complex(np.vdot(ctx.psi.amp, rotated.reshape(-1)))


def loss_vfe(theta, ctx):
    amplitude = vfe_amplitude(theta, ctx)
    if not ctx.shots:
        return abs(amplitude)
    # swap test on the two pure states estimates |amplitude|^2
    estimate = 2 * ctx.sample_probability((1 + abs(amplitude) ** 2) / 2) - 1
    return float(np.sqrt(max(estimate, 0.0)))


def learned_state(theta, ctx):
    """chi = tr_R U(theta)|0...0><0...0|U(theta)^dag, as a matrix."""

    n_A = ctx.target.n_qubits
    m = _split(circuit_state(ctx.ansatz, theta), ctx.ansatz.n_qubits - n_A)
    return m @ m.conj().T


def loss_vqsl(theta, ctx):
    """tr chi^2 - 2 tr(rho chi); equals ||rho - chi||_2^2 - tr rho^2."""

    n_A = ctx.target.n_qubits
    if ctx.ansatz.n_qubits <= n_A:
        raise DimensionError(
            "purification ansatz on {} qubits needs ancillas beyond the "
            "{} system qubit(s)".format(ctx.ansatz.n_qubits, n_A)
        )
    chi = learned_state(theta, ctx)
    rho = ctx.target.mat
    if not ctx.shots:
        purity = float(np.real(np.sum(chi * chi.T)))
        overlap = float(np.real(np.sum(rho * chi.T)))
        return purity - 2 * overlap

    chi = DensityMatrix(chi, validate=False)
    # two independently prepared copies for the purity term
    purity = overlap_hs(chi, chi, ctx.shots, ctx.rng)
    overlap = overlap_hs(ctx.target, chi, ctx.shots, ctx.rng)
    return purity - 2 * overlap


def check_k(k, dim):
    if not 1 <= k <= dim - 1:
        raise RangeError(
            "k = {} outside 1..{} for dimension {}".format(k, dim - 1, dim)
        )


def loss_nvtde(theta, ctx):
    """
    sum_{j<k} <j|U(rho - sigma)U^dag|j>, the weight of the difference on
    the first k computational basis states after the circuit.
    """

    _check_dims(ctx.rho, ctx.sigma)
    ctx.expect_system_qubits(ctx.rho.n_qubits, 0)
    check_k(ctx.k, ctx.rho.dim)
    rows = apply_circuit(
        ctx.ansatz, theta, np.eye(ctx.rho.dim, dtype=complex)
    )[: ctx.k, :]
    return _projector_expectation(ctx, rows, ctx.rho) - _projector_expectation(
        ctx, rows, ctx.sigma
    )
