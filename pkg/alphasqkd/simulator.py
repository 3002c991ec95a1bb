"""
Exact evaluation of one protocol iteration under a restricted attack.

The simulator plays both sides: it produces the statistics A and B would observe, and it builds the true
state rho_ABE of the key iterations so the worst-case bound can be compared against the exact S(A|E).
"""

import logging
import math

import numpy as np

from . import qmath
from .attack import (
    UNITARY_TOLERANCE,
    unitarity_deviation,
)
from .bound import theorem1_bound
from .errors import (
    ArgumentError,
    ConsistencyError,
    ValidityError,
)
from .observed import ObservedStatistics

log = logging.getLogger(__name__)

ZERO_EVENT = 1e-12
TRACE_CONSISTENCY = 1e-6
OUTCOMES = ("0", "a", "?")


class ReverseVectors:
    """
    Eve's reverse-attack vectors.

    U_R|0,0> = |0,e0> + |1,e1>, U_R|1,0> = |0,e2> + |1,e3>, U_R|1,e> = |0,f0> + |1,f1> and
    U_R|0,f> = |0,f2> + |1,f3>.

    @ivar e: The vectors |e0> .. |e3>.
    @type e: C{list} of L{StateVector}

    @ivar f: The vectors |f0> .. |f3>.
    @type f: C{list} of L{StateVector}
    """

    def __init__(self, e, f):
        self.e = e
        self.f = f


def _split(image, d_e):
    return [qmath.StateVector(image[:d_e]), qmath.StateVector(image[d_e:])]


def derive_reverse_vectors(attack):
    """
    Read |e_i> and |f_i> off the reverse unitary.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @rtype: L{ReverseVectors}
    """
    unitary = attack.u_reverse.entries
    deviation = unitarity_deviation(unitary)
    if deviation > UNITARY_TOLERANCE:
        raise ValidityError("Reverse attack is not unitary (deviation {!r})".format(deviation))

    d = attack.d_e
    e = _split(unitary[:, 0], d) + _split(unitary[:, d], d)
    f = _split(unitary[:, d:] @ attack.e_vec.amplitudes, d) + _split(unitary[:, :d] @ attack.f_vec.amplitudes, d)
    return ReverseVectors(e, f)


def g_vectors(attack, params, reverse=None):
    """
    The vectors |g0> .. |g3> of the returning |a> iterations.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @param params: Protocol parameters.
    @type  params: L{ProtocolParams}

    @param reverse: Reverse vectors of L{attack}, derived when C{None}.
    @type  reverse: L{ReverseVectors} or C{None}

    @rtype: C{list} of L{StateVector}
    """
    if reverse is None:
        reverse = derive_reverse_vectors(attack)
    e = [v.amplitudes for v in reverse.e]
    f = [v.amplitudes for v in reverse.f]
    alpha = params.alpha
    beta = params.beta
    return [
        qmath.StateVector(attack.q1 * alpha * f[1] + attack.q3 * beta * e[3]),
        qmath.StateVector(attack.q1 * alpha * f[0] + attack.q3 * beta * e[2]),
        qmath.StateVector(attack.q0 * alpha * e[1] + attack.q2 * beta * f[3]),
        qmath.StateVector(attack.q0 * alpha * e[0] + attack.q2 * beta * f[2]),
    ]


def _collapse(image, outcome, d_e):
    """
    B measures T in the computational basis.

    @return: Probability of L{outcome} and the normalized state after the measurement, C{None} for an
        impossible outcome.
    @rtype:  C{tuple} of C{float} and C{numpy.ndarray} or C{None}
    """
    part = np.zeros_like(image)
    block = slice(outcome * d_e, (outcome + 1) * d_e)
    part[block] = image[block]
    probability = float(np.vdot(part, part).real)
    if probability < ZERO_EVENT:
        return probability, None
    return probability, part / math.sqrt(probability)


def _povm_distribution(attack, povm, state):
    """
    Distribution of A's POVM outcomes once U_R has acted on the normalized state of T (x) E.

    @rtype: C{dict} of C{str} to C{float}
    """
    image = attack.u_reverse.entries @ state
    ancilla = np.eye(attack.d_e)
    result = {}
    for outcome in ("0", "a"):
        element = np.kron(povm[outcome].entries, ancilla)
        result[outcome] = min(1.0, max(0.0, float(np.vdot(image, element @ image).real)))
    result["?"] = max(0.0, 1 - result["0"] - result["a"])
    return result


class _Branches:
    """
    Every branch of one iteration: the measurement probabilities of B and A's outcome distribution after it.

    @ivar forward: B's outcome probabilities keyed by (sent, measured).
    @ivar resend: A's outcome distribution keyed by (sent, measured), C{None} for impossible outcomes.
    @ivar reflect: A's outcome distribution keyed by sent state when B reflects.
    """

    def __init__(self, attack, params):
        povm = params.povm()
        d = attack.d_e
        image0, image1 = attack.forward_images()
        images = {"0": image0, "a": params.alpha * image0 + params.beta * image1}

        self.forward = {}
        self.resend = {}
        self.reflect = {}
        for sent, image in images.items():
            self.reflect[sent] = _povm_distribution(attack, povm, image)
            for measured in (0, 1):
                probability, collapsed = _collapse(image, measured, d)
                self.forward[sent, measured] = probability
                if collapsed is None:
                    self.resend[sent, measured] = None
                else:
                    self.resend[sent, measured] = _povm_distribution(attack, povm, collapsed)

        # The post-measurement state of |0> measured as 0 is |0,0> whatever its probability.
        if self.resend["0", 0] is None:
            origin = np.zeros(2 * d, dtype=complex)
            origin[0] = 1
            self.resend["0", 0] = _povm_distribution(attack, povm, origin)


def _assemble(alpha, p, forward, resend, reflect):
    """
    Build the statistics, substituting the symmetric defaults for conditional statistics of impossible events.

    @param alpha: Amplitude of |0> in |a>.
    @param p: POVM scale.
    @param forward: B's outcome probabilities keyed by (sent, measured).
    @param resend: A's outcome probabilities keyed by (sent, measured), C{None} where undefined.
    @param reflect: A's outcome probabilities keyed by sent state, after a reflection.

    @rtype: L{ObservedStatistics}
    """
    q_r = 1 - resend["0", 0]["0"] / p
    values = {
        "p_ab_0_0": forward["0", 0],
        "p_ab_0_1": forward["0", 1],
        "p_ab_a_0": forward["a", 0],
        "p_ab_a_1": forward["a", 1],
        "p_aa_0_0_0": resend["0", 0]["0"],
        "p_aa_a_r_a": reflect["a"]["a"],
        "p_aa_a_r_0": reflect["a"]["0"],
    }
    if resend["0", 1] is None:
        values["p_aa_0_1_0"] = p * q_r
    else:
        values["p_aa_0_1_0"] = resend["0", 1]["0"]

    defaults = {
        0: (1 - q_r, (1 - 2 * q_r) * alpha * alpha + q_r),
        1: (q_r, (1 - 2 * q_r) * (1 - alpha * alpha) + q_r),
    }
    for measured in (0, 1):
        outcome = resend["a", measured]
        if outcome is None:
            zero, signal = (p * value for value in defaults[measured])
        else:
            zero, signal = outcome["0"], outcome["a"]
        values["p_aa_a_{}_0".format(measured)] = zero
        values["p_aa_a_{}_a".format(measured)] = signal
    return ObservedStatistics(p, **values)


def simulate_statistics(attack, params):
    """
    Exact statistics A and B observe under an attack.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @param params: Protocol parameters.
    @type  params: L{ProtocolParams}

    @rtype: L{ObservedStatistics}
    """
    branches = _Branches(attack, params)
    return _assemble(params.alpha, params.p, branches.forward, branches.resend, branches.reflect)


def monte_carlo_statistics(attack, params, iterations, seed):
    """
    Statistics estimated from a finite number of simulated protocol iterations.

    Each iteration picks the sent state and B's choice at random, then draws the measurement outcomes.
    Return statistics above the POVM scale are capped at the scale.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @param params: Protocol parameters.
    @type  params: L{ProtocolParams}

    @param iterations: Number of simulated iterations.
    @type  iterations: C{int}

    @param seed: Seed of the random source.
    @type  seed: C{int}

    @rtype: L{ObservedStatistics}
    """
    branches = _Branches(attack, params)
    leaves = []
    weights = []
    for sent in ("0", "a"):
        for measured in (0, 1):
            distribution = branches.resend[sent, measured] or {"0": 0.0, "a": 0.0, "?": 1.0}
            for outcome in OUTCOMES:
                leaves.append((sent, measured, outcome))
                weights.append(0.5 * params.q * branches.forward[sent, measured] * distribution[outcome])
        for outcome in OUTCOMES:
            leaves.append((sent, "r", outcome))
            weights.append(0.5 * (1 - params.q) * branches.reflect[sent][outcome])
    weights = np.clip(np.array(weights), 0.0, None)
    counts = np.random.default_rng(seed).multinomial(iterations, weights / weights.sum())
    tally = dict(zip(leaves, (int(c) for c in counts)))

    def total(sent, choice):
        return sum(count for (s, c, _), count in tally.items() if s == sent and c == choice)

    forward = {}
    resend = {}
    reflect = {}
    for sent in ("0", "a"):
        measured_total = total(sent, 0) + total(sent, 1)
        reflected_total = total(sent, "r")
        if measured_total == 0 or reflected_total == 0:
            raise ArgumentError("{} iterations are too few to estimate the statistics".format(iterations))
        for measured in (0, 1):
            branch_total = total(sent, measured)
            forward[sent, measured] = branch_total / measured_total
            if branch_total == 0:
                resend[sent, measured] = None
            else:
                resend[sent, measured] = {
                    outcome: min(params.p, tally[sent, measured, outcome] / branch_total) for outcome in OUTCOMES
                }
        reflect[sent] = {outcome: min(params.p, tally[sent, "r", outcome] / reflected_total) for outcome in OUTCOMES}
    if resend["0", 0] is None:
        resend["0", 0] = branches.resend["0", 0]

    log.debug("Sampled %d iterations with seed %s", iterations, seed)
    return _assemble(params.alpha, params.p, forward, resend, reflect)


def chi_true(attack, params, reverse=None):
    """
    The true value of chi, the unobserved part of Re<V_a0a|V_a1a>.

    chi = Re<V_a0a|V_a1a> - (alpha^2 - beta^2) Re<g1|g3> - q0 q3 alpha^2 beta^2 Re<e0|e3>.

    @rtype: C{float}
    """
    if reverse is None:
        reverse = derive_reverse_vectors(attack)
    g = [v.amplitudes for v in g_vectors(attack, params, reverse)]
    alpha = params.alpha
    beta = params.beta
    v_zero = alpha * g[3] + beta * g[2]
    v_one = alpha * g[1] + beta * g[0]
    re_v = float(np.vdot(v_zero, v_one).real)
    re_g1g3 = float(np.vdot(g[1], g[3]).real)
    re_e0e3 = qmath.inner(reverse.e[0], reverse.e[3]).real
    return re_v - (alpha**2 - beta**2) * re_g1g3 - attack.q0 * attack.q3 * alpha**2 * beta**2 * re_e0e3


def attack_theorem1_terms(attack, params, reverse=None):
    """
    The four vector pairs of the key state, as input for L{theorem1_bound} with N = 2.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @param params: Protocol parameters.
    @type  params: L{ProtocolParams}

    @return: For each pair (E_i, F_i), the tuple (<E_i|E_i>, <F_i|F_i>, Re<E_i|F_i>).
    @rtype:  C{list} of C{tuple}
    """
    if reverse is None:
        reverse = derive_reverse_vectors(attack)
    e = [v.amplitudes for v in reverse.e]
    f = [v.amplitudes for v in reverse.f]
    g = [v.amplitudes for v in g_vectors(attack, params, reverse)]
    pairs = [
        (attack.q0 * e[0], g[0]),
        (attack.q0 * e[1], g[1]),
        (attack.q1 * f[0], g[2]),
        (attack.q1 * f[1], g[3]),
    ]
    return [
        (float(np.vdot(x, x).real), float(np.vdot(y, y).real), float(np.vdot(x, y).real)) for x, y in pairs
    ]


class ExactOracle:
    """
    True quantities of the key iterations under one attack.

    @ivar rho_abe: State of k_A, k_B and E, with factor dimensions (2, 2, d_e).
    @type rho_abe: L{Operator}

    @ivar sae_exact: S(A|E) in bits.
    @type sae_exact: C{float}

    @ivar hab_exact: H(A|B) in bits.
    @type hab_exact: C{float}

    @ivar joint_ab: Joint distribution of (k_A, k_B), indexed by 2 k_A + k_B.
    @type joint_ab: C{numpy.ndarray}

    @ivar theorem1: Lower bound on S(A|E) from all four vector pairs.
    @type theorem1: C{float}
    """

    def __init__(self, rho_abe, sae_exact, hab_exact, joint_ab, theorem1):
        self.rho_abe = rho_abe
        self.sae_exact = sae_exact
        self.hab_exact = hab_exact
        self.joint_ab = joint_ab
        self.theorem1 = theorem1

    @property
    def rate_exact(self):
        return self.sae_exact - self.hab_exact


def build_rho_abe(attack, params):
    """
    Build rho_ABE of the key iterations and evaluate the exact entropies.

    @param attack: The attack.
    @type  attack: L{RestrictedAttack}

    @param params: Protocol parameters.
    @type  params: L{ProtocolParams}

    @rtype: L{ExactOracle}
    """
    reverse = derive_reverse_vectors(attack)
    e = [v.amplitudes for v in reverse.e]
    f = [v.amplitudes for v in reverse.f]
    g = [v.amplitudes for v in g_vectors(attack, params, reverse)]
    blocks = {
        (0, 0): [attack.q0 * e[0], attack.q0 * e[1]],
        (0, 1): [attack.q1 * f[0], attack.q1 * f[1]],
        (1, 0): [g[3], g[2]],
        (1, 1): [g[1], g[0]],
    }

    d = attack.d_e
    rho = np.zeros((4 * d, 4 * d), dtype=complex)
    for (key_a, key_b), vectors in blocks.items():
        start = (2 * key_a + key_b) * d
        for vector in vectors:
            rho[start : start + d, start : start + d] += 0.5 * np.outer(vector, vector.conj())

    trace = float(np.trace(rho).real)
    if abs(trace - 1) > TRACE_CONSISTENCY:
        raise ConsistencyError("rho_ABE has trace {!r}".format(trace))
    rho_abe = qmath.Operator(rho / trace, (2, 2, d), density=True)

    sae = qmath.conditional_entropy(qmath.partial_trace(rho_abe, [0, 2]), [0], [1])
    if sae < -qmath.COMPARE_TOLERANCE:
        raise ConsistencyError("Negative S(A|E) = {!r}".format(sae))
    joint = np.clip(np.diag(qmath.partial_trace(rho_abe, [0, 1]).entries).real, 0.0, None)
    hab = qmath.shannon_entropy(joint) - qmath.shannon_entropy([joint[0] + joint[2], joint[1] + joint[3]])
    theorem1 = theorem1_bound(attack_theorem1_terms(attack, params, reverse), 2.0)
    log.debug("Exact S(A|E)=%s H(A|B)=%s for %r", sae, hab, attack)
    return ExactOracle(rho_abe, max(0.0, sae), hab, joint, theorem1)
