import pytest

from alphasqkd.attack import identity_attack
from alphasqkd.bound import check_symmetry
from alphasqkd.channel import (
    NoisePoint,
    depolarize_statistics,
)
from alphasqkd.errors import ArgumentError
from alphasqkd.observed import STATISTIC_FIELDS
from alphasqkd.protocol import ProtocolParams
from alphasqkd.simulator import simulate_statistics


class TestNoisePoint:
    def test_loop_noise_default(self):
        noise = NoisePoint(0.01, 0.02, 0.03)
        assert noise.q_z == 0.03

    @pytest.mark.parametrize("values", [(-0.01, 0, 0), (0, 0.51, 0), (0, 0, 0.6), (0, 0, 0, 0.7)])
    def test_out_of_range(self, values):
        with pytest.raises(ArgumentError):
            NoisePoint(*values)


class TestDepolarizeStatistics:
    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
    def test_noiseless_matches_identity_attack(self, alpha):
        channel = depolarize_statistics(alpha, NoisePoint(0, 0, 0))
        simulated = simulate_statistics(identity_attack(2), ProtocolParams(alpha))
        for name in STATISTIC_FIELDS:
            assert getattr(channel, name) == pytest.approx(getattr(simulated, name), abs=1e-12), name

    def test_fully_depolarized_forward(self):
        stats = depolarize_statistics(0.3, NoisePoint(0.5, 0, 0))
        assert stats.p_ab_0_0 == pytest.approx(0.5)
        assert stats.p_ab_a_0 == pytest.approx(0.5)

    def test_forward_noise(self):
        stats = depolarize_statistics(0.2, NoisePoint(0.01, 0, 0))
        assert stats.p_ab_a_0 == pytest.approx(0.0492)
        assert stats.p_ab_a_0 + stats.p_ab_a_1 == pytest.approx(1)

    def test_loop_noise(self):
        alpha = 0.4
        stats = depolarize_statistics(alpha, NoisePoint(0, 0, 0.1, q_z=0.2), p=0.5)
        assert stats.p_aa_a_r_a == pytest.approx(0.45)
        assert stats.p_aa_a_r_0 == pytest.approx(0.5 * (0.6 * alpha**2 + 0.2))

    def test_reverse_noise_round_trip(self):
        stats = depolarize_statistics(0.3, NoisePoint(0.02, 0.03, 0.04))
        assert stats.reverse_noise() == pytest.approx(0.03)
        check_symmetry(stats, tolerance=1e-12)

    def test_bad_alpha(self):
        with pytest.raises(ArgumentError):
            depolarize_statistics(1.2, NoisePoint(0, 0, 0))

    def test_povm_scale_too_large(self):
        with pytest.raises(ArgumentError):
            depolarize_statistics(0.5, NoisePoint(0, 0, 0), p=0.9)
