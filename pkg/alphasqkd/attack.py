"""
Restricted collective attacks: a forward isometry F on the A to B channel and a unitary U_R on the way back.

F|0> = q0|0,0> + q1|1,e> and F|1> = q2|0,f> + q3|1,0>, with E starting in |0>.
U_R acts on the travelling qubit T and Eve's ancilla E, T being the most significant factor.
"""

import logging
import math

import numpy as np
import scipy.linalg

from . import qmath
from .errors import (
    ArgumentError,
    ValidityError,
)

log = logging.getLogger(__name__)

ATTACK_TOLERANCE = 1e-10
UNITARY_TOLERANCE = 1e-10

# Below this value of q0 * q2 the isometry condition is enforced on |e> instead of on |f>.
SMALL_FORWARD_PRODUCT = 1e-6
MAX_DRAW_ATTEMPTS = 1000


def unitarity_deviation(matrix):
    """
    Largest entry of |U^dagger U - I|.

    @param matrix: Square matrix U.
    @type  matrix: C{numpy.ndarray}

    @rtype: C{float}
    """
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


class RestrictedAttack:
    """
    Eve's attack for one protocol iteration.

    @ivar q0: Amplitude of |0,0> in F|0>.
    @type q0: C{float}

    @ivar q1: Amplitude of |1,e> in F|0>.
    @type q1: C{float}

    @ivar q2: Amplitude of |0,f> in F|1>.
    @type q2: C{float}

    @ivar q3: Amplitude of |1,0> in F|1>.
    @type q3: C{float}

    @ivar e_vec: Ancilla state |e> attached to a flipped |0>.
    @type e_vec: L{StateVector}

    @ivar f_vec: Ancilla state |f> attached to a flipped |1>.
    @type f_vec: L{StateVector}

    @ivar u_reverse: Unitary on T (x) E applied on the way back.
    @type u_reverse: L{Operator}

    @ivar d_e: Dimension of the ancilla.
    @type d_e: C{int}
    """

    def __init__(self, q0, q1, q2, q3, e_vec, f_vec, u_reverse):
        self.d_e = len(e_vec)
        if self.d_e < 1 or len(f_vec) != self.d_e:
            raise ArgumentError("Ancilla vectors |e> and |f> must share one dimension")
        if u_reverse.dims != (2, self.d_e):
            raise ArgumentError("Reverse unitary must act on T (x) E with dims (2, {})".format(self.d_e))
        if min(q0, q1, q2, q3) < 0:
            raise ValidityError("Forward amplitudes must be non-negative")
        if abs(q0 * q0 + q1 * q1 - 1) > ATTACK_TOLERANCE or abs(q2 * q2 + q3 * q3 - 1) > ATTACK_TOLERANCE:
            raise ValidityError("Forward amplitudes are not normalized: q = {!r}".format((q0, q1, q2, q3)))
        if not (e_vec.normalized and f_vec.normalized):
            raise ValidityError("Ancilla vectors |e> and |f> must be unit vectors")

        overlap = q0 * q2 * f_vec.amplitudes[0] + q1 * q3 * np.conj(e_vec.amplitudes[0])
        if abs(overlap) > ATTACK_TOLERANCE:
            raise ValidityError("Forward attack is not an isometry, <F0|F1> = {!r}".format(complex(overlap)))
        deviation = unitarity_deviation(u_reverse.entries)
        if deviation > UNITARY_TOLERANCE:
            raise ValidityError("Reverse attack is not unitary (deviation {!r})".format(deviation))

        self.q0 = float(q0)
        self.q1 = float(q1)
        self.q2 = float(q2)
        self.q3 = float(q3)
        self.e_vec = e_vec
        self.f_vec = f_vec
        self.u_reverse = u_reverse

    def __repr__(self):
        return "RestrictedAttack(q={!r}, d_e={})".format((self.q0, self.q1, self.q2, self.q3), self.d_e)

    def forward_images(self):
        """
        Images F|0> and F|1> in T (x) E.

        @rtype: C{tuple} of two C{numpy.ndarray}
        """
        origin = np.zeros(self.d_e, dtype=complex)
        origin[0] = 1
        image0 = np.concatenate((self.q0 * origin, self.q1 * self.e_vec.amplitudes))
        image1 = np.concatenate((self.q2 * self.f_vec.amplitudes, self.q3 * origin))
        return image0, image1

    def forward(self, state):
        """
        Apply F to a qubit state.

        @param state: State of the travelling qubit.
        @type  state: L{StateVector}

        @return: The state of T (x) E.
        @rtype:  C{numpy.ndarray}
        """
        image0, image1 = self.forward_images()
        return state.amplitudes[0] * image0 + state.amplitudes[1] * image1


def identity_attack(d_e=2):
    """
    The attack that leaves every qubit alone.

    @param d_e: Ancilla dimension.
    @type  d_e: C{int}

    @rtype: L{RestrictedAttack}
    """
    origin = qmath.ket(0, d_e)
    return RestrictedAttack(1.0, 0.0, 0.0, 1.0, origin, origin, qmath.identity((2, d_e)))


def haar_unitary(dim, rng):
    """
    Draw a Haar-random unitary through the QR decomposition of a complex Gaussian matrix.

    @param dim: Matrix size.
    @type  dim: C{int}

    @param rng: Random source.
    @type  rng: C{numpy.random.Generator}

    @rtype: C{numpy.ndarray}
    """
    ginibre = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = scipy.linalg.qr(ginibre)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def random_unit_vector(dim, rng):
    """
    Draw a normalized complex Gaussian vector.

    @rtype: C{numpy.ndarray}
    """
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vector / np.linalg.norm(vector)


def _renormalize(vector):
    return vector / np.linalg.norm(vector)


def _fit_isometry(q0, q1, q2, q3, e, f, rng):
    """
    Adjust |e> and |f> so that q0 q2 <0|f> + q1 q3 <e|0> = 0.

    @return: The adjusted pair, or C{None} if the draw cannot be repaired.
    @rtype:  C{tuple} of two C{numpy.ndarray}, or C{None}
    """
    left = q0 * q2
    right = q1 * q3 * np.conj(e[0])
    if left >= SMALL_FORWARD_PRODUCT:
        target = -right / left
        if abs(target) > 1:
            return None
        rest = f[1:]
        norm = np.linalg.norm(rest)
        if norm < 1e-12:
            rest = random_unit_vector(len(rest), rng)
            norm = 1.0
        f = np.concatenate(([target], rest / norm * math.sqrt(max(0.0, 1 - abs(target) ** 2))))
        return e, _renormalize(f)

    if abs(left * f[0] + right) > ATTACK_TOLERANCE / 10:
        e = e.copy()
        f = f.copy()
        e[0] = 0
        f[0] = 0
        if np.linalg.norm(e) < 1e-12 or np.linalg.norm(f) < 1e-12:
            return None
        e = _renormalize(e)
        f = _renormalize(f)
    return e, f


def _draw_forward(d_e, rng, q0=None, q3=None):
    """
    Draw forward attack parameters satisfying the isometry condition.

    @param d_e: Ancilla dimension, at least 2.
    @type  d_e: C{int}

    @param rng: Random source.
    @type  rng: C{numpy.random.Generator}

    @param q0: Forced value of q0, drawn uniformly if C{None}.
    @type  q0: C{float} or C{None}

    @param q3: Forced value of q3, drawn uniformly if C{None}.
    @type  q3: C{float} or C{None}

    @return: Amplitudes (q0, q1, q2, q3) and the ancilla vectors |e> and |f>.
    @rtype:  C{tuple}
    """
    for _ in range(MAX_DRAW_ATTEMPTS):
        a0 = rng.uniform() if q0 is None else q0
        a3 = rng.uniform() if q3 is None else q3
        a1 = math.sqrt(max(0.0, 1 - a0 * a0))
        a2 = math.sqrt(max(0.0, 1 - a3 * a3))
        e = random_unit_vector(d_e, rng)
        f = random_unit_vector(d_e, rng)
        fitted = _fit_isometry(a0, a1, a2, a3, e, f, rng)
        if fitted is not None:
            return (a0, a1, a2, a3), fitted[0], fitted[1]
        log.debug("Discarded forward draw q0=%s q3=%s", a0, a3)

    raise ValidityError("No forward attack found after {} draws".format(MAX_DRAW_ATTEMPTS))


def random_attack(d_e, seed, q0=None, q3=None):
    """
    Draw a random restricted attack; the same seed always gives the same attack.

    @param d_e: Ancilla dimension, at least 2.
    @type  d_e: C{int}

    @param seed: Seed of the random source.
    @type  seed: C{int}

    @param q0: Forced value of q0, drawn uniformly if C{None}.
    @type  q0: C{float} or C{None}

    @param q3: Forced value of q3, drawn uniformly if C{None}.
    @type  q3: C{float} or C{None}

    @rtype: L{RestrictedAttack}
    """
    if d_e < 2:
        raise ArgumentError("Ancilla dimension must be at least 2, got {}".format(d_e))
    rng = np.random.default_rng(seed)
    qs, e, f = _draw_forward(d_e, rng, q0, q3)
    unitary = haar_unitary(2 * d_e, rng)
    return RestrictedAttack(
        *qs,
        qmath.StateVector(e, normalized=True),
        qmath.StateVector(f, normalized=True),
        qmath.Operator(unitary, (2, d_e)),
    )


def _noise_rotation(q_r):
    """
    Unitary on T (x) C sending |t,0> to sqrt(1-q_r)|t,0> + sqrt(q_r)|1-t,1>.

    @rtype: C{numpy.ndarray}
    """
    c = math.sqrt(1 - q_r)
    s = math.sqrt(q_r)
    rotation = np.zeros((4, 4))
    for t in (0, 1):
        flipped = 1 - t
        rotation[2 * t, 2 * t] = c
        rotation[2 * flipped + 1, 2 * t] = s
        rotation[2 * t + 1, 2 * t + 1] = c
        rotation[2 * flipped, 2 * t + 1] = -s
    return rotation


def symmetric_attack(d_e, seed, q_r=None):
    """
    Draw a random attack whose statistics satisfy the symmetric noise relations exactly.

    The ancilla is split as C (x) R with a qubit C. The forward attack lives in R, and the reverse attack flips T
    with probability q_r while recording the flip in C, followed by random T-controlled unitaries on E.

    @param d_e: Ancilla dimension, even and at least 2.
    @type  d_e: C{int}

    @param seed: Seed of the random source.
    @type  seed: C{int}

    @param q_r: Reverse noise, drawn uniformly from [0, 0.25] if C{None}.
    @type  q_r: C{float} or C{None}

    @rtype: L{RestrictedAttack}
    """
    if d_e < 2 or d_e % 2:
        raise ArgumentError("Symmetric attacks need an even ancilla dimension, got {}".format(d_e))
    rng = np.random.default_rng(seed)
    if q_r is None:
        q_r = rng.uniform(0, 0.25)
    if not 0 <= q_r <= 0.5:
        raise ArgumentError("Reverse noise {!r} outside [0, 0.5]".format(q_r))

    half = d_e // 2
    if half == 1:
        # A one-dimensional R forces a plain rotation of T.
        q0 = rng.uniform()
        q1 = math.sqrt(1 - q0 * q0)
        qs = (q0, q1, q1, q0)
        e_r = np.exp(1j * rng.uniform(0, 2 * math.pi)) * np.ones(1)
        f_r = -np.conj(e_r)
    else:
        qs, e_r, f_r = _draw_forward(half, rng)

    e = np.zeros(d_e, dtype=complex)
    f = np.zeros(d_e, dtype=complex)
    e[:half] = e_r
    f[:half] = f_r

    coupling = np.kron(_noise_rotation(q_r), np.eye(half))
    controlled = scipy.linalg.block_diag(haar_unitary(d_e, rng), haar_unitary(d_e, rng))
    return RestrictedAttack(
        *qs,
        qmath.StateVector(e, normalized=True),
        qmath.StateVector(f, normalized=True),
        qmath.Operator(controlled @ coupling, (2, d_e)),
    )
