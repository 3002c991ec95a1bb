"""Tests for restricted attacks and their random generators."""

import math

import numpy as np
import pytest

from alphasqkd import qmath
from alphasqkd.attack import (
    RestrictedAttack,
    haar_unitary,
    identity_attack,
    random_attack,
    symmetric_attack,
    unitarity_deviation,
)
from alphasqkd.errors import (
    ArgumentError,
    ValidityError,
)


def _check_invariants(attack):
    q0, q1, q2, q3 = attack.q0, attack.q1, attack.q2, attack.q3
    assert min(q0, q1, q2, q3) >= 0
    assert q0**2 + q1**2 == pytest.approx(1, abs=1e-10)
    assert q2**2 + q3**2 == pytest.approx(1, abs=1e-10)
    image0, image1 = attack.forward_images()
    assert abs(np.vdot(image0, image1)) < 1e-10
    assert unitarity_deviation(attack.u_reverse.entries) < 1e-10


class TestRestrictedAttack:
    def test_identity(self):
        attack = identity_attack(3)
        _check_invariants(attack)
        image0, image1 = attack.forward_images()
        np.testing.assert_allclose(image0, np.eye(6)[0])
        np.testing.assert_allclose(image1, np.eye(6)[3])

    def test_forward_of_signal(self):
        attack = identity_attack()
        state = qmath.StateVector([0.6, 0.8], normalized=True)
        np.testing.assert_allclose(attack.forward(state), [0.6, 0, 0.8, 0])

    def test_not_an_isometry(self):
        origin = qmath.ket(0, 2)
        half = 1 / math.sqrt(2)
        with pytest.raises(ValidityError):
            RestrictedAttack(half, half, half, half, origin, origin, qmath.identity((2, 2)))

    def test_not_unitary(self):
        origin = qmath.ket(0, 2)
        with pytest.raises(ValidityError):
            RestrictedAttack(1.0, 0.0, 0.0, 1.0, origin, origin, qmath.Operator(2 * np.eye(4), (2, 2)))

    def test_amplitudes_not_normalized(self):
        origin = qmath.ket(0, 2)
        with pytest.raises(ValidityError):
            RestrictedAttack(0.9, 0.0, 0.0, 1.0, origin, origin, qmath.identity((2, 2)))

    def test_dimension_mismatch(self):
        with pytest.raises(ArgumentError):
            RestrictedAttack(1.0, 0.0, 0.0, 1.0, qmath.ket(0, 2), qmath.ket(0, 3), qmath.identity((2, 2)))


class TestHaarUnitary:
    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_unitary(self, dim):
        unitary = haar_unitary(dim, np.random.default_rng(dim))
        assert unitarity_deviation(unitary) < 1e-12


class TestRandomAttack:
    def test_deterministic(self):
        first = random_attack(4, 1234)
        second = random_attack(4, 1234)
        assert (first.q0, first.q1, first.q2, first.q3) == (second.q0, second.q1, second.q2, second.q3)
        np.testing.assert_array_equal(first.e_vec.amplitudes, second.e_vec.amplitudes)
        np.testing.assert_array_equal(first.u_reverse.entries, second.u_reverse.entries)

    def test_seeds_differ(self):
        assert random_attack(4, 1).q0 != random_attack(4, 2).q0

    def test_many_draws_are_valid(self):
        for seed in range(1000):
            attack = random_attack(2 + 2 * (seed % 2), seed)
            _check_invariants(attack)

    def test_forced_corner(self):
        attack = random_attack(4, 99, q0=1.0, q3=1.0)
        assert attack.q1 == 0 and attack.q2 == 0
        _check_invariants(attack)

    def test_forced_amplitudes(self):
        attack = random_attack(4, 5, q0=0.8, q3=0.7)
        assert attack.q0 == pytest.approx(0.8)
        assert attack.q3 == pytest.approx(0.7)
        _check_invariants(attack)

    def test_ancilla_too_small(self):
        with pytest.raises(ArgumentError):
            random_attack(1, 0)


class TestSymmetricAttack:
    @pytest.mark.parametrize("d_e", [2, 4, 6])
    def test_valid(self, d_e):
        for seed in range(20):
            _check_invariants(symmetric_attack(d_e, seed))

    def test_odd_dimension(self):
        with pytest.raises(ArgumentError):
            symmetric_attack(3, 0)

    def test_reverse_noise_range(self):
        with pytest.raises(ArgumentError):
            symmetric_attack(4, 0, q_r=0.7)
