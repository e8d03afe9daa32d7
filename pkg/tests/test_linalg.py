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

import numpy as np
import pytest

from qmetric import linalg
from qmetric.exc import DimensionError, NotHermitianError, NotPositiveError
from qmetric.exc import RangeError
from qmetric.states import make_rng

PAULI_Z = np.diag([1, -1]).astype(complex)


@pytest.fixture
def rng():
    return make_rng(1234)


def test_kron_orders_subsystems():
    zero = np.diag([1, 0])
    one = np.diag([0, 1])

    assert np.allclose(np.diag(linalg.kron(zero, one)), [0, 1, 0, 0])


def test_kron_all_empty_is_scalar_one():
    assert linalg.kron_all().shape == (1, 1)
    assert linalg.kron_all()[0, 0] == 1


def test_partial_trace_of_product(rng):
    a = linalg.random_hermitian(2, rng)
    b = np.diag([0.25, 0.75]).astype(complex)

    assert np.allclose(linalg.partial_trace(linalg.kron(a, b), [2, 2], [0]), a)
    assert np.allclose(
        linalg.partial_trace(linalg.kron(a, b), [2, 2], [1]), np.trace(a) * b
    )


def test_partial_trace_keeps_order(rng):
    a, b, c = (linalg.random_hermitian(2, rng) for _ in range(3))
    m = linalg.kron_all(a, b, c)

    expected = np.trace(b) * linalg.kron(a, c)
    assert np.allclose(linalg.partial_trace(m, [2, 2, 2], [0, 2]), expected)


def test_partial_trace_bell_is_maximally_mixed():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(bell, bell)

    assert np.allclose(linalg.partial_trace(rho, [2, 2], [0]), np.eye(2) / 2)


def test_partial_trace_bad_dims():
    with pytest.raises(DimensionError):
        linalg.partial_trace(np.eye(4), [2, 3], [0])
    with pytest.raises(DimensionError):
        linalg.partial_trace(np.eye(4), [2, 2], [2])


def test_herm_eig_descending_and_reconstructs(rng):
    h = linalg.random_hermitian(8, rng)
    eig = linalg.herm_eig(h)

    assert np.all(np.diff(eig.eigenvalues) <= 0)
    assert np.allclose(eig.reconstruct(), h, atol=1e-10)
    assert np.allclose(
        eig.eigenvectors.conj().T @ eig.eigenvectors, np.eye(8), atol=1e-10
    )


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.herm_eig(np.array([[0, 1], [0, 0]]))


def test_herm_eig_rejects_non_square():
    with pytest.raises(DimensionError):
        linalg.herm_eig(np.zeros((2, 3)))


def test_mat_sqrt_psd_squares_back(rng):
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    root = linalg.mat_sqrt_psd(m)

    assert np.allclose(root @ root, m, atol=1e-8)
    assert np.allclose(root, root.conj().T)


def test_mat_sqrt_psd_rejects_negative():
    with pytest.raises(NotPositiveError):
        linalg.mat_sqrt_psd(np.diag([1.0, -0.5]))


def test_mat_sqrt_psd_absorbs_round_off():
    root = linalg.mat_sqrt_psd(np.diag([1.0, -1e-13]))

    assert np.allclose(root, np.diag([1.0, 0.0]))


def test_mat_sqrt_psd_residual_bound():
    # within the eigenvalue tolerance, but squaring back misses by 1e-7
    with pytest.raises(NotPositiveError):
        linalg.mat_sqrt_psd(np.diag([1.0, -1e-7]), tol=1e-6)


def test_trace_norm():
    assert linalg.trace_norm(np.diag([3, 1, -2, -4])) == pytest.approx(10)
    assert linalg.trace_norm(PAULI_Z) == pytest.approx(2)


def test_top_k_eig_sum():
    h = np.diag([3, 1, -2, -4])

    assert linalg.top_k_eig_sum(h, 1) == pytest.approx(3)
    assert linalg.top_k_eig_sum(h, 2) == pytest.approx(4)
    assert linalg.top_k_eig_sum(h, 4) == pytest.approx(-2)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_trace_norm_splits_by_sign(rng, dim):
    for _ in range(20):
        h = linalg.random_hermitian(dim, rng)
        values = linalg.eigvalsh_desc(h)
        positive = int(np.sum(values > 0))
        negative = dim - positive
        if not 0 < positive < dim:
            continue

        assert linalg.trace_norm(h) == pytest.approx(
            linalg.top_k_eig_sum(h, positive)
            + linalg.top_k_eig_sum(-h, negative)
        )


@pytest.mark.parametrize("k", [0, 5])
def test_top_k_eig_sum_range(k):
    with pytest.raises(RangeError):
        linalg.top_k_eig_sum(np.diag([3, 1, -2, -4]), k)


def test_random_unitary_is_unitary(rng):
    u = linalg.random_unitary(8, rng)

    assert linalg.is_unitary(u)
    assert linalg.unitarity_error(u) < 1e-10


def test_check_hermitian_symmetrises():
    h = linalg.check_hermitian(np.array([[1, 1e-12], [0, 1]]))

    assert np.array_equal(h, linalg.dagger(h))


def test_as_matrix_rejects_nan():
    with pytest.raises(ValueError):
        linalg.as_matrix([[np.nan, 0], [0, 1]])
