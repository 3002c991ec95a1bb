import numpy as np
import pytest

from alphasqkd.errors import ArgumentError
from alphasqkd.intercept import (
    IRJoint,
    ir_joint,
    ir_key_rate,
    ir_optimum,
    ir_report,
)


class TestIRJoint:
    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.7, 1.0])
    def test_distribution(self, alpha):
        table = ir_joint(alpha).p_abe
        assert table.sum() == pytest.approx(1)
        assert np.all(table >= 0)
        np.testing.assert_allclose(table.sum(axis=(1, 2)), [0.5, 0.5])

    def test_sent_zero_always_measured_zero(self):
        table = ir_joint(0.4).p_abe
        assert table[0, 1].sum() == 0

    def test_shape(self):
        with pytest.raises(ArgumentError):
            IRJoint(np.zeros((2, 2)))

    def test_bad_alpha(self):
        with pytest.raises(ArgumentError):
            ir_joint(-0.1)


class TestIRKeyRate:
    def test_orthogonal_signals(self):
        report = ir_report(0.0)
        assert report.h_a_e == pytest.approx(0.0, abs=1e-12)
        assert report.h_a_b == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_endpoints(self, alpha):
        assert ir_key_rate(alpha) == pytest.approx(0.0, abs=1e-12)

    def test_positive_inside(self):
        for alpha in np.arange(0.05, 0.951, 0.05):
            assert ir_key_rate(float(alpha)) > 0

    def test_exact_values(self):
        assert ir_key_rate(0.25) == pytest.approx(0.25995, abs=1e-4)
        assert ir_key_rate(0.75) == pytest.approx(0.26136, abs=1e-4)

    def test_asymmetric(self):
        assert ir_key_rate(0.75) > ir_key_rate(0.25) + 1e-6

    def test_optimum(self):
        alpha, rate = ir_optimum([round(0.01 * i, 2) for i in range(101)])
        assert 0.45 <= alpha <= 0.55
        assert rate == pytest.approx(ir_key_rate(alpha))

    def test_optimum_needs_values(self):
        with pytest.raises(ArgumentError):
            ir_optimum([])
