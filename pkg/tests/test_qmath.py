"""Tests for the linear algebra and entropy primitives."""

import math

import numpy as np
import pytest

from alphasqkd import qmath
from alphasqkd.attack import haar_unitary
from alphasqkd.errors import (
    ArgumentError,
    ValidityError,
)
from alphasqkd.protocol import signal_state


def _random_state(dim, rng):
    amplitudes = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return qmath.StateVector(amplitudes / np.linalg.norm(amplitudes), normalized=True)


def _density(matrix, dims=None):
    return qmath.Operator(matrix, dims, density=True)


def _random_density(dim, rng):
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    matrix = ginibre @ ginibre.conj().T
    matrix = (matrix + matrix.conj().T) / 2
    return matrix / np.trace(matrix).real


def _entropy_bits(matrix):
    values = np.linalg.eigvalsh(matrix)
    values = values[values > 1e-14]
    return float(-np.sum(values * np.log2(values)))


class TestStateVector:
    def test_amplitudes_are_read_only(self):
        vector = qmath.ket(0, 2)
        with pytest.raises(ValueError):
            vector.amplitudes[0] = 0

    def test_normalized_flag_is_checked(self):
        with pytest.raises(ValidityError):
            qmath.StateVector([0.5, 0.5], normalized=True)

    def test_norm_above_one_rejected(self):
        with pytest.raises(ValidityError):
            qmath.StateVector([1.0, 0.1])

    def test_dims_must_match(self):
        with pytest.raises(ArgumentError):
            qmath.StateVector([1, 0, 0], dims=(2, 2))


class TestInner:
    def test_orthonormal_basis(self):
        assert qmath.inner(qmath.ket(0, 2), qmath.ket(1, 2)) == 0

    def test_overlap_with_signal_state(self):
        assert qmath.inner(signal_state(0.3), qmath.ket(0, 2)) == pytest.approx(0.3)

    def test_matches_explicit_sum(self):
        rng = np.random.default_rng(7)
        x = _random_state(4, rng)
        y = _random_state(4, rng)
        expected = sum(np.conj(a) * b for a, b in zip(x.amplitudes, y.amplitudes))
        assert qmath.inner(x, y) == pytest.approx(expected, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ArgumentError):
            qmath.inner(qmath.ket(0, 2), qmath.ket(0, 3))


class TestTensor:
    def test_basis_vectors(self):
        product = qmath.tensor(qmath.ket(0, 2), qmath.ket(0, 2))
        np.testing.assert_allclose(product.amplitudes, [1, 0, 0, 0])
        assert product.dims == (2, 2)
        assert product.normalized

    def test_identities(self):
        product = qmath.tensor(qmath.identity((2,)), qmath.identity((2,)))
        np.testing.assert_allclose(product.entries, np.eye(4))
        assert product.hermitian

    def test_mixed_kinds_rejected(self):
        with pytest.raises(ArgumentError):
            qmath.tensor(qmath.ket(0, 2), qmath.identity((2,)))


class TestPartialTrace:
    @pytest.mark.parametrize("keep", [[0], [1]])
    def test_bell_state(self, keep):
        bell = qmath.StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2), dims=(2, 2), normalized=True)
        rho = _density(qmath.projector(bell).entries, (2, 2))
        reduced = qmath.partial_trace(rho, keep)
        np.testing.assert_allclose(reduced.entries, np.eye(2) / 2, atol=1e-12)
        assert reduced.density

    def test_product_state(self):
        rho_a = np.array([[0.7, 0.2], [0.2, 0.3]])
        rho_b = np.diag([0.1, 0.5, 0.4])
        rho = _density(np.kron(rho_a, rho_b), (2, 3))
        np.testing.assert_allclose(qmath.partial_trace(rho, [0]).entries, rho_a, atol=1e-12)
        np.testing.assert_allclose(qmath.partial_trace(rho, [1]).entries, rho_b, atol=1e-12)

    def test_three_factors(self):
        rng = np.random.default_rng(3)
        blocks = [np.diag(rng.uniform(size=2)) for _ in range(3)]
        blocks = [block / np.trace(block) for block in blocks]
        rho = _density(np.kron(np.kron(blocks[0], blocks[1]), blocks[2]), (2, 2, 2))
        np.testing.assert_allclose(
            qmath.partial_trace(rho, [0, 2]).entries, np.kron(blocks[0], blocks[2]), atol=1e-12
        )

    @pytest.mark.parametrize("keep", [[], [2], [-1]])
    def test_invalid_factors(self, keep):
        rho = _density(np.eye(4) / 4, (2, 2))
        with pytest.raises(ArgumentError):
            qmath.partial_trace(rho, keep)


class TestEigHermitian:
    def test_diagonal(self):
        values, _ = qmath.eig_hermitian(qmath.Operator(np.diag([0.7, 0.3])))
        np.testing.assert_allclose(values, [0.3, 0.7])

    def test_rank_one_projector(self):
        values, _ = qmath.eig_hermitian(qmath.projector(signal_state(0.5)))
        np.testing.assert_allclose(values, [0, 1], atol=1e-12)

    def test_reconstruction(self):
        rng = np.random.default_rng(11)
        matrix = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        matrix = matrix + matrix.conj().T
        values, vectors = qmath.eig_hermitian(qmath.Operator(matrix))
        assert np.all(np.diff(values) >= 0)
        basis = np.column_stack([v.amplitudes for v in vectors])
        np.testing.assert_allclose(basis @ np.diag(values) @ basis.conj().T, matrix, atol=1e-9)
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(8), atol=1e-9)

    def test_non_hermitian(self):
        with pytest.raises(ArgumentError):
            qmath.eig_hermitian(qmath.Operator([[0, 1], [0, 0]]))


class TestEntropy:
    def test_pure_state(self):
        rng = np.random.default_rng(5)
        rho = _density(qmath.projector(_random_state(3, rng)).entries)
        assert qmath.von_neumann_entropy(rho) == pytest.approx(0, abs=1e-9)

    def test_maximally_mixed_qubit(self):
        assert qmath.von_neumann_entropy(_density(np.eye(2) / 2)) == pytest.approx(1)

    @pytest.mark.parametrize("p", [0.1, 0.25, 0.5])
    def test_diagonal_is_binary_entropy(self, p):
        rho = _density(np.diag([p, 1 - p]))
        assert qmath.von_neumann_entropy(rho) == pytest.approx(qmath.binary_entropy(p))

    def test_non_density_rejected(self):
        with pytest.raises(ArgumentError):
            qmath.von_neumann_entropy(qmath.Operator(np.eye(2)))

    def test_uniform_a_product(self):
        sigma = np.diag([0.6, 0.3, 0.1])
        rho = _density(np.kron(np.eye(2) / 2, sigma), (2, 3))
        assert qmath.conditional_entropy(rho, [0], [1]) == pytest.approx(1)

    def test_classical_correlation(self):
        rho = _density(np.diag([0.5, 0, 0, 0.5]), (2, 2))
        assert qmath.conditional_entropy(rho, [0], [1]) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("a_factors, e_factors", [([0], [0, 1]), ([0], []), ([], [0, 1])])
    def test_conditional_factor_errors(self, a_factors, e_factors):
        rho = _density(np.eye(4) / 4, (2, 2))
        with pytest.raises(ArgumentError):
            qmath.conditional_entropy(rho, a_factors, e_factors)


class TestShannon:
    def test_values(self):
        assert qmath.shannon_entropy([0.5, 0.5]) == pytest.approx(1)
        assert qmath.shannon_entropy([0.25] * 4) == pytest.approx(2)
        assert qmath.shannon_entropy([1.0, 0.0]) == 0

    def test_binary(self):
        assert qmath.binary_entropy(0.5) == pytest.approx(1)
        assert qmath.binary_entropy(0.0) == 0
        assert qmath.binary_entropy(1.0) == 0

    def test_binary_vectorized(self):
        values = qmath.binary_entropy(np.array([0.0, 0.11, 0.5]))
        np.testing.assert_allclose(values, [0, qmath.binary_entropy(0.11), 1])

    def test_probability_above_one(self):
        with pytest.raises(ArgumentError):
            qmath.shannon_entropy([1.1])


class TestInvariants:
    def test_inner_conjugate_symmetry(self):
        rng = np.random.default_rng(101)
        for _ in range(5):
            x = _random_state(6, rng)
            y = _random_state(6, rng)
            assert qmath.inner(x, y) == pytest.approx(np.conj(qmath.inner(y, x)), abs=1e-12)

    def test_eigenvalues_sum_to_trace(self):
        rng = np.random.default_rng(102)
        matrix = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        matrix = matrix + matrix.conj().T
        values, _ = qmath.eig_hermitian(qmath.Operator(matrix))
        assert np.sum(values) == pytest.approx(np.trace(matrix).real, abs=1e-9)

    def test_entropy_unitarily_invariant(self):
        rng = np.random.default_rng(103)
        rho = _random_density(6, rng)
        unitary = haar_unitary(6, rng)
        rotated = unitary @ rho @ unitary.conj().T
        rotated = (rotated + rotated.conj().T) / 2
        assert qmath.von_neumann_entropy(_density(rotated)) == pytest.approx(
            qmath.von_neumann_entropy(_density(rho)), abs=1e-9
        )

    def test_partial_trace_commutes_with_local_operator(self):
        rng = np.random.default_rng(104)
        rho = _random_density(6, rng)
        local = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        acted = qmath.Operator(np.kron(local, np.eye(3)) @ rho, (2, 3))
        reduced = qmath.partial_trace(_density(rho, (2, 3)), [0]).entries
        np.testing.assert_allclose(qmath.partial_trace(acted, [0]).entries, local @ reduced, atol=1e-12)

    @pytest.mark.parametrize("seed", [105, 106, 107])
    def test_conditional_entropy_of_cq_state_non_negative(self, seed):
        rng = np.random.default_rng(seed)
        weight = rng.uniform(0.05, 0.95)
        blocks = [_random_density(3, rng), _random_density(3, rng)]
        rho = np.zeros((6, 6), dtype=complex)
        rho[:3, :3] = weight * blocks[0]
        rho[3:, 3:] = (1 - weight) * blocks[1]
        assert qmath.conditional_entropy(_density(rho, (2, 3)), [0], [1]) >= -1e-12

    def test_partial_trace_matches_index_sum(self):
        rng = np.random.default_rng(108)
        state = _random_state(6, rng)
        matrix = np.outer(state.amplitudes, state.amplitudes.conj())
        rho = _density(matrix, (2, 3))
        expected_a = np.zeros((2, 2), dtype=complex)
        expected_b = np.zeros((3, 3), dtype=complex)
        for i in range(2):
            for j in range(2):
                expected_a[i, j] = sum(matrix[3 * i + k, 3 * j + k] for k in range(3))
        for k in range(3):
            for m in range(3):
                expected_b[k, m] = sum(matrix[3 * i + k, 3 * i + m] for i in range(2))
        np.testing.assert_allclose(qmath.partial_trace(rho, [0]).entries, expected_a, atol=1e-12)
        np.testing.assert_allclose(qmath.partial_trace(rho, [1]).entries, expected_b, atol=1e-12)

    def test_tensor_matches_nested_loops(self):
        rng = np.random.default_rng(109)
        x = _random_state(2, rng)
        y = _random_state(3, rng)
        expected = [x.amplitudes[i] * y.amplitudes[k] for i in range(2) for k in range(3)]
        np.testing.assert_allclose(qmath.tensor(x, y).amplitudes, expected, atol=1e-12)

        left = rng.standard_normal((2, 2))
        right = rng.standard_normal((3, 3))
        product = np.zeros((6, 6))
        for i in range(2):
            for j in range(2):
                for k in range(3):
                    for m in range(3):
                        product[3 * i + k, 3 * j + m] = left[i, j] * right[k, m]
        computed = qmath.tensor(qmath.Operator(left), qmath.Operator(right))
        np.testing.assert_allclose(computed.entries, product, atol=1e-12)
        assert computed.dims == (2, 3)

    def test_conditional_entropy_matches_eigendecomposition(self):
        rng = np.random.default_rng(110)
        matrix = _random_density(6, rng)
        reduced = np.einsum("ikjk->ij", matrix.reshape(2, 3, 2, 3))
        expected = _entropy_bits(matrix) - _entropy_bits(reduced)
        reduced_e = np.einsum("kikj->ij", matrix.reshape(2, 3, 2, 3))
        expected_e = _entropy_bits(matrix) - _entropy_bits(reduced_e)
        rho = _density(matrix, (2, 3))
        assert qmath.conditional_entropy(rho, [1], [0]) == pytest.approx(expected, abs=1e-9)
        assert qmath.conditional_entropy(rho, [0], [1]) == pytest.approx(expected_e, abs=1e-9)
