"""
Protocol parameters: the signal state |a>, A's three-outcome POVM and the measure-resend probability.
"""

import logging
import math

import numpy as np

from . import qmath
from .errors import ArgumentError

log = logging.getLogger(__name__)

PARAM_TOLERANCE = 1e-12


def max_povm_scale(alpha):
    """
    Largest POVM scale p keeping the inconclusive element positive semi-definite.

    @param alpha: Overlap <0|a> of the two signal states.
    @type  alpha: C{float}

    @return: The value 1 / (1 + alpha).
    @rtype:  C{float}
    """
    return 1.0 / (1.0 + alpha)


def signal_state(alpha):
    """
    The state |a> = alpha|0> + beta|1>.

    @param alpha: Amplitude of |0>.
    @type  alpha: C{float}

    @rtype: L{StateVector}
    """
    return qmath.StateVector([alpha, math.sqrt(max(0.0, 1 - alpha * alpha))], normalized=True)


def signal_complement(alpha):
    """
    The state orthogonal to |a>, beta|0> - alpha|1>.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @rtype: L{StateVector}
    """
    return qmath.StateVector([math.sqrt(max(0.0, 1 - alpha * alpha)), -alpha], normalized=True)


def povm_elements(alpha, p):
    """
    A's POVM, without checking positivity of the inconclusive element.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param p: POVM scale.
    @type  p: C{float}

    @return: Elements keyed by outcome C{'0'}, C{'a'} and C{'?'}.
    @rtype:  C{dict} of C{str} to L{Operator}
    """
    zero = p * qmath.projector(qmath.ket(0, 2)).entries
    signal = p * qmath.projector(signal_state(alpha)).entries
    return {
        "0": qmath.Operator(zero, hermitian=True),
        "a": qmath.Operator(signal, hermitian=True),
        "?": qmath.Operator(np.eye(2) - zero - signal, hermitian=True),
    }


def povm_is_valid(alpha, p):
    """
    Check whether the inconclusive element I - Λ0 - Λa is positive semi-definite.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param p: POVM scale.
    @type  p: C{float}

    @rtype: C{bool}
    """
    values, _ = qmath.eig_hermitian(povm_elements(alpha, p)["?"])
    return bool(values[0] >= -qmath.EIGENVALUE_FLOOR)


class ProtocolParams:
    """
    Parameters of one protocol instance.

    @ivar alpha: Amplitude of |0> in the signal state |a>.
    @type alpha: C{float}

    @ivar beta: Amplitude of |1> in |a>, derived from L{alpha}.
    @type beta: C{float}

    @ivar p: POVM scale.
    @type p: C{float}

    @ivar q: Probability that B measures and resends (the exact statistics do not depend on it).
    @type q: C{float}
    """

    def __init__(self, alpha, p=None, q=0.5):
        if not 0 <= alpha <= 1:
            raise ArgumentError("alpha must lie in [0, 1], got {!r}".format(alpha))
        if p is None:
            p = max_povm_scale(alpha)
        if not 0 < p <= max_povm_scale(alpha) + PARAM_TOLERANCE:
            raise ArgumentError("POVM scale {!r} outside (0, 1/(1+alpha)]".format(p))
        if not 0 < q < 1:
            raise ArgumentError("Measure-resend probability {!r} outside (0, 1)".format(q))

        self.alpha = float(alpha)
        self.beta = math.sqrt(max(0.0, 1 - self.alpha * self.alpha))
        self.p = float(p)
        self.q = float(q)

    def __repr__(self):
        return "ProtocolParams(alpha={!r}, p={!r}, q={!r})".format(self.alpha, self.p, self.q)

    def povm(self):
        """
        A's POVM for these parameters.

        @return: Elements keyed by outcome C{'0'}, C{'a'} and C{'?'}.
        @rtype:  C{dict} of C{str} to L{Operator}
        """
        return povm_elements(self.alpha, self.p)
