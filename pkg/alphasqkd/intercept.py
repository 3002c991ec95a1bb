"""
Intercept-resend attack against the variant where A measures the returning qubit in the {|a>, |a-bar>} basis.

On key iterations B measures and resends |k_B>, and Eve measures that qubit in A's basis, guessing 1 when she
sees |a>. Her register is classical, so the key rate reduces to H(A|E) - H(A|B).
"""

import logging

import numpy as np

from . import qmath
from .errors import ArgumentError

log = logging.getLogger(__name__)


class IRJoint:
    """
    Joint distribution of A's key bit, B's key bit and Eve's guess.

    @ivar p_abe: Probabilities indexed by [k_A, k_B, guess].
    @type p_abe: C{numpy.ndarray} of shape (2, 2, 2)
    """

    def __init__(self, p_abe):
        p_abe = np.asarray(p_abe, dtype=float)
        if p_abe.shape != (2, 2, 2):
            raise ArgumentError("Joint table must have shape (2, 2, 2), got {}".format(p_abe.shape))
        self.p_abe = p_abe

    def _conditional(self, axis):
        """H(A|X) where X is the key bit of B (axis 1) or the guess of Eve (axis 2)."""
        joint = self.p_abe.sum(axis=3 - axis)
        return qmath.shannon_entropy(joint.ravel()) - qmath.shannon_entropy(joint.sum(axis=0))

    def h_a_e(self):
        """
        @return: H(A|E) in bits.
        @rtype:  C{float}
        """
        return self._conditional(2)

    def h_a_b(self):
        """
        @return: H(A|B) in bits.
        @rtype:  C{float}
        """
        return self._conditional(1)


def ir_joint(alpha):
    """
    Joint distribution of the key iterations under the intercept-resend attack.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @rtype: L{IRJoint}
    """
    if not 0 <= alpha <= 1:
        raise ArgumentError("alpha must lie in [0, 1], got {!r}".format(alpha))
    alpha_sq = alpha * alpha
    beta_sq = 1 - alpha_sq

    # Overlap |<k_B|sent>|^2 and probability |<a|k_B>|^2 that Eve sees |a>.
    sent = {0: (1.0, 0.0), 1: (alpha_sq, beta_sq)}
    seen_a = (alpha_sq, beta_sq)

    table = np.zeros((2, 2, 2))
    for key_a in (0, 1):
        for key_b in (0, 1):
            branch = 0.5 * sent[key_a][key_b]
            table[key_a, key_b, 1] = branch * seen_a[key_b]
            table[key_a, key_b, 0] = branch * (1 - seen_a[key_b])
    return IRJoint(table)


class IRReport:
    """
    Key rate of the variant at one alpha.

    @ivar alpha: Amplitude of |0> in |a>.
    @ivar h_a_e: H(A|E).
    @ivar h_a_b: H(A|B).
    @ivar rate: H(A|E) - H(A|B).
    """

    def __init__(self, alpha, h_a_e, h_a_b):
        self.alpha = alpha
        self.h_a_e = h_a_e
        self.h_a_b = h_a_b
        self.rate = h_a_e - h_a_b


def ir_report(alpha):
    """
    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @rtype: L{IRReport}
    """
    joint = ir_joint(alpha)
    return IRReport(alpha, joint.h_a_e(), joint.h_a_b())


def ir_key_rate(alpha):
    """
    Key rate H(A|E) - H(A|B) of the variant.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @rtype: C{float}
    """
    return ir_report(alpha).rate


def ir_optimum(alphas):
    """
    The alpha of highest rate on a grid, the first one on ties.

    @param alphas: Candidate values.
    @type  alphas: iterable of C{float}

    @return: The best alpha and its rate.
    @rtype:  C{tuple} of two C{float}
    """
    best = None
    for alpha in alphas:
        rate = ir_key_rate(alpha)
        if best is None or rate > best[1] + 1e-15:
            best = (alpha, rate)
    if best is None:
        raise ArgumentError("No alpha values given")
    log.debug("Intercept-resend optimum at alpha=%s (rate %s)", *best)
    return best
