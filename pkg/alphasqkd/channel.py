"""
Statistics of a symmetric attack that acts as a depolarization channel E_Q(rho) = (1 - 2Q) rho + Q I.

Forward, reverse and loop channels get their own noise parameter. The loop statistic p_aa_a_r_0 has a
parameter Q_Z of its own, which equals Q_X unless given.
"""

import logging

from .errors import ArgumentError
from .observed import ObservedStatistics
from .protocol import (
    PARAM_TOLERANCE,
    max_povm_scale,
)

log = logging.getLogger(__name__)


class NoisePoint:
    """
    Noise of the three channels.

    @ivar q_f: Forward (A to B) noise.
    @type q_f: C{float}

    @ivar q_r: Reverse (B to A) noise.
    @type q_r: C{float}

    @ivar q_x: Loop noise, when B reflects.
    @type q_x: C{float}

    @ivar q_z: Loop noise seen by outcome 0 of the POVM; equal to L{q_x} unless set.
    @type q_z: C{float}
    """

    def __init__(self, q_f, q_r, q_x, q_z=None):
        if q_z is None:
            q_z = q_x
        for name, value in (("q_f", q_f), ("q_r", q_r), ("q_x", q_x), ("q_z", q_z)):
            if not 0 <= value <= 0.5:
                raise ArgumentError("Noise {} = {!r} outside [0, 0.5]".format(name, value))
        self.q_f = float(q_f)
        self.q_r = float(q_r)
        self.q_x = float(q_x)
        self.q_z = float(q_z)

    def __repr__(self):
        return "NoisePoint(q_f={!r}, q_r={!r}, q_x={!r}, q_z={!r})".format(self.q_f, self.q_r, self.q_x, self.q_z)


def _depolarized(q, weight):
    """Probability of a projection with weight C{weight} after depolarization C{q}."""
    return (1 - 2 * q) * weight + q


def depolarize_statistics(alpha, noise, p=None):
    """
    Statistics of the depolarization model.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param noise: Channel noise.
    @type  noise: L{NoisePoint}

    @param p: POVM scale, 1 / (1 + alpha) if C{None}.
    @type  p: C{float} or C{None}

    @rtype: L{ObservedStatistics}
    """
    if not 0 <= alpha <= 1:
        raise ArgumentError("alpha must lie in [0, 1], got {!r}".format(alpha))
    if p is None:
        p = max_povm_scale(alpha)
    if not 0 < p <= max_povm_scale(alpha) + PARAM_TOLERANCE:
        raise ArgumentError("POVM scale {!r} outside (0, 1/(1+alpha)]".format(p))

    alpha_sq = alpha * alpha
    beta_sq = 1 - alpha_sq
    p_ab_a_0 = _depolarized(noise.q_f, alpha_sq)
    return ObservedStatistics(
        p,
        p_ab_0_0=1 - noise.q_f,
        p_ab_0_1=noise.q_f,
        p_ab_a_0=p_ab_a_0,
        p_ab_a_1=1 - p_ab_a_0,
        p_aa_0_0_0=p * (1 - noise.q_r),
        p_aa_0_1_0=p * noise.q_r,
        p_aa_a_0_0=p * (1 - noise.q_r),
        p_aa_a_1_0=p * noise.q_r,
        p_aa_a_0_a=p * _depolarized(noise.q_r, alpha_sq),
        p_aa_a_1_a=p * _depolarized(noise.q_r, beta_sq),
        p_aa_a_r_a=p * (1 - noise.q_x),
        p_aa_a_r_0=p * _depolarized(noise.q_z, alpha_sq),
    )
