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
Exact reference values computed from the full spectrum.  Every estimator
result is certified against one of these.
"""

import numpy as np

from . import linalg
from .config import Config
from .exc import DimensionError


def _check_dims(rho, sigma):
    if rho.dim != sigma.dim:
        raise DimensionError(
            "cannot compare states of dimension {} and {}".format(
                rho.dim, sigma.dim
            )
        )


def exact_trace_distance(rho, sigma):
    _check_dims(rho, sigma)
    value = 0.5 * linalg.trace_norm(rho.mat - sigma.mat)
    return min(max(value, 0.0), 1.0)


def exact_fidelity(rho, sigma):
    """tr sqrt(sqrt(rho) sigma sqrt(rho))"""

    _check_dims(rho, sigma)
    root = linalg.mat_sqrt_psd(rho.mat)
    inner = linalg.check_hermitian(root @ sigma.mat @ root)
    # PSD in theory; clamp the round-off
    eigenvalues = np.clip(linalg.eigvalsh_desc(inner), 0, None)
    return min(float(np.sum(np.sqrt(eigenvalues))), 1.0)


def count_positive_eigs(h, threshold=None):
    threshold = Config().positive_threshold if threshold is None else threshold
    return int(np.sum(linalg.eigvalsh_desc(h) > threshold))


def partial_spectrum_witness(h, d_A, d_B):
    """
    A unitary V for which the |0>_A block of V H V^dag carries the d_B
    largest eigenvalues of H.  With qubit 0 most significant, the |0>_A
    block is the first d_B basis states, so V is the adjoint of the
    (descending) eigenvector matrix.
    """

    h = _check_factorization(h, d_A, d_B)
    return linalg.dagger(linalg.herm_eig(h).eigenvectors)


def _check_factorization(h, d_A, d_B):
    h = linalg.as_square(h)
    if d_A * d_B != h.shape[0]:
        raise DimensionError(
            "{} x {} does not factor a {}-dimensional operator".format(
                d_A, d_B, h.shape[0]
            )
        )
    return h


def block_zero_expectation(h, v, d_A, d_B):
    """tr[(|0><0|_A (x) I_B) V H V^dag]"""

    conjugated = v @ h @ linalg.dagger(v)
    return float(np.real(np.trace(conjugated[:d_B, :d_B])))


def partial_spectrum_optimum(h, d_A, d_B, check_witness=True):
    """
    max over unitaries V of tr[(|0><0|_A (x) I_B) V H V^dag], which is the
    sum of the d_B largest eigenvalues of H.  The closed form is checked
    against the witness unitary from partial_spectrum_witness().
    """

    h = _check_factorization(h, d_A, d_B)
    value = linalg.top_k_eig_sum(h, d_B)
    if check_witness:
        achieved = block_zero_expectation(
            h, partial_spectrum_witness(h, d_A, d_B), d_A, d_B
        )
        scale = max(1.0, float(np.max(np.abs(h))))
        if abs(achieved - value) > 1e-10 * scale * h.shape[0]:
            raise ArithmeticError(
                "witness reaches {!r}, closed form {!r}".format(
                    achieved, value
                )
            )
    return value


def fuchs_van_de_graaf_bounds(fidelity):
    """(1 - F, sqrt(1 - F^2)), the interval containing the trace distance."""

    fidelity = min(max(float(fidelity), 0.0), 1.0)
    return 1 - fidelity, float(np.sqrt(1 - fidelity**2))


def exact_trace_norm(h):
    return linalg.trace_norm(h)
