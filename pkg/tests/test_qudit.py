"""Tests for density matrices, eigenbasis observables and MUB constructions."""
from __future__ import annotations

import numpy as np
import numpy.testing as npt
import pytest

from tests.helpers import rotated_basis
from tsb.entropy import quantum_tsallis, quantum_tsallis_matrix
from tsb.qubit import BlochVector, QubitObservable, QubitState, measurement_probabilities
from tsb.qudit import (
    PAULI,
    QuditObservable,
    QuditState,
    bloch_from_matrix,
    conditional_probabilities_d,
    dephase_channel_d,
    fourier_mub_pair,
    is_mub_pair,
    outcome_probabilities,
    perturb_basis,
    post_measurement_state,
    purity_d,
    random_observable,
    random_state,
    strictly_positive,
)
from tsb.utils import DimensionMismatchError, DomainError


class TestQuditState:
    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            QuditState(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(DomainError):
            QuditState(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(DomainError):
            QuditState(np.diag([1.2, -0.2]))

    def test_rejects_non_square(self):
        with pytest.raises(DomainError):
            QuditState(np.ones((2, 3)) / 2)

    def test_matrix_is_read_only(self):
        state = QuditState.maximally_mixed(3)
        with pytest.raises(ValueError):
            state.matrix[0, 0] = 1.0

    def test_pure_state(self):
        state = QuditState.pure([1.0, 1.0j])
        assert purity_d(state) == pytest.approx(1.0)
        npt.assert_allclose(state.spectrum().probs, (1.0, 0.0), atol=1e-12)

    @pytest.mark.parametrize('alpha', [0.3, 0.5])
    def test_pure_state_has_zero_entropy(self, alpha):
        state = QuditState.pure(np.array([1.0, 1.0j, 1.0]) / np.sqrt(3.0))
        assert quantum_tsallis(state.spectrum(), alpha) == pytest.approx(0.0, abs=1e-14)
        assert quantum_tsallis_matrix(state.matrix, alpha) == pytest.approx(0.0, abs=1e-14)

    def test_diagonal_in_basis(self):
        _, fourier = fourier_mub_pair(3)
        state = QuditState.diagonal([0.5, 0.3, 0.2], fourier)
        probs = outcome_probabilities(state, fourier).probs
        npt.assert_allclose(probs, (0.5, 0.3, 0.2), atol=1e-12)


class TestBlochBridge:
    def test_from_qubit(self):
        r = BlochVector(0.1, -0.2, 0.3)
        rho = QuditState.from_qubit(QubitState(r))
        expected = (np.eye(2) + 0.1 * PAULI[0] - 0.2 * PAULI[1] + 0.3 * PAULI[2]) / 2
        npt.assert_allclose(rho.matrix, expected, atol=1e-15)
        back = bloch_from_matrix(rho.matrix)
        npt.assert_allclose(back.as_array(), r.as_array(), atol=1e-15)

    def test_bloch_needs_two_by_two(self):
        with pytest.raises(DimensionMismatchError):
            bloch_from_matrix(np.eye(3) / 3)

    def test_observable_order_matches_labels(self):
        obs = QubitObservable.from_axis((0.3, 0.4, 0.5))
        state = QubitState.from_components(0.2, 0.1, -0.6)
        lifted = outcome_probabilities(
            QuditState.from_qubit(state), QuditObservable.from_qubit(obs)
        )
        npt.assert_allclose(lifted.probs, measurement_probabilities(state, obs).probs, atol=1e-12)
        assert lifted.labels == (1.0, -1.0)


class TestQuditObservable:
    def test_default_eigenvalues(self):
        assert QuditObservable.computational(3).eigenvalues == (0.0, 1.0, 2.0)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(DomainError):
            QuditObservable(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_degenerate(self):
        with pytest.raises(DomainError):
            QuditObservable.computational(2, (1.0, 1.0))

    def test_from_hermitian(self):
        m = np.diag([3.0, -1.0, 0.5])
        obs = QuditObservable.from_hermitian(m)
        assert sorted(obs.eigenvalues) == [-1.0, 0.5, 3.0]
        npt.assert_allclose(obs.matrix(), m, atol=1e-12)

    def test_from_hermitian_rejects_degenerate(self):
        with pytest.raises(DomainError):
            QuditObservable.from_hermitian(np.diag([1.0, 1.0, 2.0]))

    def test_projectors_resolve_identity(self):
        _, fourier = fourier_mub_pair(4)
        total = sum(fourier.projector(k) for k in range(4))
        npt.assert_allclose(total, np.eye(4), atol=1e-12)


class TestChannel:
    def test_erases_coherences(self, rng):
        z = QuditObservable.computational(3)
        rho = random_state(3, rng)
        out = dephase_channel_d(rho, z)
        npt.assert_allclose(out.matrix, np.diag(np.diag(rho.matrix)), atol=1e-12)

    def test_idempotent(self, rng):
        obs = random_observable(4, rng)
        once = dephase_channel_d(random_state(4, rng), obs)
        twice = dephase_channel_d(once, obs)
        npt.assert_allclose(twice.matrix, once.matrix, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            dephase_channel_d(QuditState.maximally_mixed(2), QuditObservable.computational(3))

    def test_conditional_rows_are_distributions(self, rng):
        first, second = random_observable(3, rng), random_observable(3, rng)
        rows = conditional_probabilities_d(first, second)
        assert len(rows) == 3
        for row in rows:
            assert sum(row.probs) == pytest.approx(1.0, abs=1e-12)

    def test_post_measurement_state(self):
        first, _ = fourier_mub_pair(3)
        state = post_measurement_state(first, 1)
        npt.assert_allclose(state.matrix, np.diag([0.0, 1.0, 0.0]), atol=1e-15)


class TestMub:
    @pytest.mark.parametrize('d', [2, 3, 4, 5, 7])
    def test_fourier_pair_is_unbiased(self, d):
        assert is_mub_pair(*fourier_mub_pair(d))

    def test_identical_bases_are_not_unbiased(self):
        z = QuditObservable.computational(3)
        assert not is_mub_pair(z, z)

    def test_rotated_basis_is_not_unbiased(self):
        z = QuditObservable.computational(3)
        assert not is_mub_pair(z, QuditObservable(rotated_basis(np.pi / 8)))

    def test_dimension_one_rejected(self):
        with pytest.raises(DomainError):
            fourier_mub_pair(1)

    def test_perturbation_breaks_unbiasedness(self, rng):
        first, second = fourier_mub_pair(3)
        assert is_mub_pair(first, perturb_basis(second, 0.0, rng))
        assert not is_mub_pair(first, perturb_basis(second, 0.3, rng))


class TestRandomInstances:
    @pytest.mark.parametrize('d', [2, 3, 5])
    def test_random_state_is_density_matrix(self, rng, d):
        rho = random_state(d, rng)
        assert np.trace(rho.matrix).real == pytest.approx(1.0)
        assert rho.eigenvalues().min() >= 0.0
        assert strictly_positive(rho)

    def test_rank_one_is_pure(self, rng):
        rho = random_state(4, rng, rank=1)
        assert purity_d(rho) == pytest.approx(1.0, abs=1e-10)
        assert not strictly_positive(rho)

    def test_invalid_rank(self, rng):
        with pytest.raises(DomainError):
            random_state(3, rng, rank=4)

    def test_random_observable_is_unitary(self, rng):
        b = random_observable(5, rng).basis
        npt.assert_allclose(b.conj().T @ b, np.eye(5), atol=1e-12)

    def test_seeded_draws_repeat(self):
        a = random_state(3, np.random.Generator(np.random.PCG64(7)))
        b = random_state(3, np.random.Generator(np.random.PCG64(7)))
        npt.assert_array_equal(a.matrix, b.matrix)
