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
Dense complex linear algebra for exact simulation and the oracles.

Matrices are plain ``numpy`` arrays of dtype complex128. Subsystems are
ordered most-significant first, so ``kron(a, b)`` puts ``a`` on subsystem 0.
"""

import typing

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from .config import Config
from .exc import (
    DimensionError,
    NotHermitianError,
    NotPositiveError,
    RangeError,
)


class HermitianEig(typing.NamedTuple):
    # non-increasing
    eigenvalues: np.ndarray
    # columns follow the order of `eigenvalues`
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError("expected a matrix, got shape {}".format(m.shape))
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def as_square(m):
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(
            "expected a square matrix, got {}".format(m.shape)
        )
    return m


def dagger(m):
    return np.conj(m).T


def hermiticity_error(h):
    h = as_square(h)
    if h.size == 0:
        return 0.0
    return float(np.max(np.abs(h - dagger(h))))


def check_hermitian(h, atol=None):
    """Return the symmetrised (H + H^dagger)/2 or raise NotHermitianError."""

    h = as_square(h)
    atol = Config().hermitian_atol if atol is None else atol
    deviation = hermiticity_error(h)
    if deviation > atol:
        raise NotHermitianError(deviation)
    return (h + dagger(h)) / 2


def is_unitary(u, atol=None):
    u = as_square(u)
    atol = Config().unitary_atol if atol is None else atol
    return unitarity_error(u) <= atol


def unitarity_error(u):
    u = as_square(u)
    return float(np.max(np.abs(u @ dagger(u) - np.eye(len(u)))))


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*ms):
    result = np.ones((1, 1), dtype=complex)
    for m in ms:
        result = np.kron(result, as_matrix(m))
    return result


def partial_trace(m, dims, keep):
    """
    Trace out every subsystem of `m` whose index is not in `keep`.

    `dims` lists the subsystem dimensions in order; the result acts on the
    kept subsystems in their original order.
    """

    m = as_square(m)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
        raise DimensionError(
            "subsystem dims {} do not factor a {}x{} matrix".format(
                dims, *m.shape
            )
        )
    keep = sorted(set(int(x) for x in keep))
    if any(x < 0 or x >= len(dims) for x in keep):
        raise DimensionError(
            "kept subsystems {} out of range for {} subsystems".format(
                keep, len(dims)
            )
        )

    n = len(dims)
    t = m.reshape(dims + dims)
    # Trace from the highest index down so lower axis numbers stay valid.
    for x in reversed(range(n)):
        if x in keep:
            continue
        t = np.trace(t, axis1=x, axis2=x + t.ndim // 2)

    d = int(np.prod([dims[x] for x in keep]))
    return t.reshape(d, d)


def herm_eig(h):
    h = check_hermitian(h)
    values, vectors = scipy.linalg.eigh(h)
    # LAPACK returns ascending order
    return HermitianEig(values[::-1].copy(), vectors[:, ::-1].copy())


def eigvalsh_desc(h):
    h = check_hermitian(h)
    return scipy.linalg.eigh(h, eigvals_only=True)[::-1]


def mat_sqrt_psd(m, tol=None):
    tol = Config().hermitian_atol if tol is None else tol
    eig = herm_eig(m)
    if len(eig.eigenvalues) and eig.eigenvalues[-1] < -tol:
        raise NotPositiveError(eig.eigenvalues[-1])
    roots = np.sqrt(np.clip(eig.eigenvalues, 0, None))
    v = eig.eigenvectors
    root = (v * roots) @ dagger(v)

    # clipping may only discard round-off
    residual = float(np.max(np.abs(root @ root - m), initial=0.0))
    if residual > Config().sqrt_atol:
        raise NotPositiveError(eig.eigenvalues[-1])
    return root


def trace_norm(h):
    return float(np.sum(np.abs(eigvalsh_desc(h))))


def top_k_eig_sum(h, k):
    values = eigvalsh_desc(h)
    if not 1 <= k <= len(values):
        raise RangeError(
            "k={} out of range for dimension {}".format(k, len(values))
        )
    return float(np.sum(values[:k]))


def random_hermitian(dim, rng, scale=1.0):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + dagger(g)) / 2


def random_unitary(dim, rng):
    return unitary_group.rvs(dim, random_state=rng)
