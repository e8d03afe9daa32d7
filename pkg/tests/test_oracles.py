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

from qmetric.exc import DimensionError
from qmetric.linalg import random_hermitian, random_unitary
from qmetric.oracles import (
    block_zero_expectation,
    count_positive_eigs,
    exact_fidelity,
    exact_trace_distance,
    exact_trace_norm,
    fuchs_van_de_graaf_bounds,
    partial_spectrum_optimum,
    partial_spectrum_witness,
)
from qmetric.states import (
    DensityMatrix,
    basis_state,
    dephase,
    density_from_vector,
    make_rng,
    maximally_mixed,
    plus_state,
    random_mixed,
    random_pure,
)


@pytest.fixture
def rng():
    return make_rng(2718)


@pytest.fixture
def plus():
    return density_from_vector(plus_state())


def test_plus_against_dephased_plus(plus):
    assert exact_trace_distance(plus, dephase(plus, 0.7)) == pytest.approx(
        0.7
    )


def test_diagonal_fidelity():
    rho = DensityMatrix(np.diag([0.8, 0.2]))
    sigma = DensityMatrix(np.diag([0.1, 0.9]))

    assert exact_fidelity(rho, sigma) == pytest.approx(0.70711, abs=1e-5)
    assert exact_trace_distance(rho, sigma) == pytest.approx(0.7)


def test_zero_against_plus(plus):
    zero = density_from_vector(basis_state(1, 0))

    assert exact_trace_distance(zero, plus) == pytest.approx(
        np.sqrt(0.5), abs=1e-12
    )
    assert exact_fidelity(zero, plus) == pytest.approx(np.sqrt(0.5))


def test_identical_states(rng):
    rho = random_mixed(2, 3, rng)

    assert exact_trace_distance(rho, rho) == pytest.approx(0, abs=1e-12)
    assert exact_fidelity(rho, rho) == pytest.approx(1, abs=1e-6)


def test_orthogonal_states():
    zero = density_from_vector(basis_state(2, 0))
    three = density_from_vector(basis_state(2, 3))

    assert exact_trace_distance(zero, three) == pytest.approx(1)
    assert exact_fidelity(zero, three) == pytest.approx(0, abs=1e-6)


def test_symmetry(rng):
    for _ in range(10):
        rho, sigma = random_mixed(2, 2, rng), random_mixed(2, 4, rng)
        assert exact_trace_distance(rho, sigma) == pytest.approx(
            exact_trace_distance(sigma, rho)
        )
        assert exact_fidelity(rho, sigma) == pytest.approx(
            exact_fidelity(sigma, rho), abs=1e-6
        )


def test_fidelity_with_pure_state(rng, plus):
    sigma = dephase(plus, 0.7)

    assert exact_fidelity(plus, sigma) == pytest.approx(np.sqrt(0.3))
    for _ in range(10):
        psi = random_pure(2, rng)
        rho = random_mixed(2, 3, rng)
        expected = np.sqrt(np.real(np.vdot(psi.amp, rho.mat @ psi.amp)))
        assert exact_fidelity(rho, density_from_vector(psi)) == (
            pytest.approx(expected, abs=1e-6)
        )


def test_fuchs_van_de_graaf(rng):
    for _ in range(200):
        rho = density_from_vector(random_pure(2, rng))
        sigma = random_mixed(2, 1 + int(rng.integers(4)), rng)
        lower, upper = fuchs_van_de_graaf_bounds(exact_fidelity(rho, sigma))
        distance = exact_trace_distance(rho, sigma)
        assert lower - 1e-6 <= distance <= upper + 1e-6


def test_fuchs_van_de_graaf_pure_states_saturate(rng):
    for _ in range(10):
        rho = density_from_vector(random_pure(2, rng))
        sigma = density_from_vector(random_pure(2, rng))
        _, upper = fuchs_van_de_graaf_bounds(exact_fidelity(rho, sigma))
        assert exact_trace_distance(rho, sigma) == pytest.approx(
            upper, abs=1e-6
        )


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        exact_trace_distance(maximally_mixed(1), maximally_mixed(2))


def test_count_positive_eigs():
    assert count_positive_eigs(np.diag([3.0, 1.0, -2.0, -4.0])) == 2
    assert count_positive_eigs(np.zeros((4, 4))) == 0


def test_pure_state_difference_has_one_positive_eigenvalue(rng):
    for _ in range(500):
        rho = density_from_vector(random_pure(2, rng))
        sigma = random_mixed(2, 1 + int(rng.integers(4)), rng)
        assert count_positive_eigs(rho.mat - sigma.mat) <= 1


def test_partial_spectrum_optimum():
    z = np.diag([1.0, -1.0])
    h = np.diag([3.0, 1.0, -2.0, -4.0])

    assert partial_spectrum_optimum(np.kron(z, np.eye(2)), 2, 2) == (
        pytest.approx(2)
    )
    assert partial_spectrum_optimum(h, 2, 2) == pytest.approx(4)
    assert partial_spectrum_optimum(h, 4, 1) == pytest.approx(3)


def test_partial_spectrum_bad_factorization():
    with pytest.raises(DimensionError):
        partial_spectrum_optimum(np.eye(4), 2, 3)


def test_partial_spectrum_witness_on_random_hermitians(rng):
    for _ in range(100):
        h = random_hermitian(8, rng)
        value = partial_spectrum_optimum(h, 2, 4)
        v = partial_spectrum_witness(h, 2, 4)
        top = np.sort(np.linalg.eigvalsh(h))[-4:]
        assert block_zero_expectation(h, v, 2, 4) == pytest.approx(
            value, abs=1e-10
        )
        assert value == pytest.approx(np.sum(top), abs=1e-10)


def test_no_unitary_beats_partial_spectrum_optimum(rng):
    for _ in range(1000):
        h = random_hermitian(8, rng)
        u = random_unitary(8, rng)
        assert block_zero_expectation(h, u, 2, 4) <= (
            partial_spectrum_optimum(h, 2, 4, check_witness=False) + 1e-10
        )


def test_exact_trace_norm():
    assert exact_trace_norm(np.diag([3.0, 1.0, -2.0, -4.0])) == (
        pytest.approx(10)
    )
