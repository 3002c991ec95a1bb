"""
Key-rate lower bound computed from observed statistics only.

The conditional entropy S(A|E) is bounded by the single entropy term belonging to the pair (q0|e0>, |g0>).
Its size is driven by Re<e0|g0>, which the statistics pin down up to three attack parameters A and B cannot
observe: q3, <e2|e2> and <f3|f3>. The bound is the minimum of that term over a grid of those parameters, with
the cross term chi set to its largest possible value.
"""

import logging
import math

import numpy as np

from . import qmath
from .errors import (
    ArgumentError,
    AsymmetricStatisticsError,
    DegenerateBound,
)

log = logging.getLogger(__name__)

DEGENERATE = 1e-12
DENOMINATOR_FLOOR = 1e-14
RADICAND_TOLERANCE = 1e-12
CAUCHY_SCHWARZ_TOLERANCE = 1e-12
EMPTY_PAIR = 1e-15
Q3_OVERSHOOT = 1e-9
SYMMETRY_TOLERANCE = 0.02

READING_SYMMETRIC = "enforce"
READING_GENERAL = "general"
READINGS = (READING_SYMMETRIC, READING_GENERAL)

FLAG_DEGENERATE_ALPHA = "degenerate-alpha"
FLAG_DEGENERATE_FORWARD = "degenerate-forward"
FLAG_Q3_CLAMPED = "q3-assumption-clamped"
FLAG_E2_UNCONSTRAINED = "e2-cap-unconstrained"
FLAG_F3_UNCONSTRAINED = "f3-cap-unconstrained"
FLAG_INFEASIBLE = "infeasible-grid"
FLAG_CS_CLAMPED = "cauchy-schwarz-clamped"


def _beta(alpha):
    return math.sqrt(max(0.0, 1 - alpha * alpha))


def _as_result(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return float(value)
    return value


def _sqrt(radicand):
    radicand = np.asarray(radicand, dtype=float)
    if np.any(radicand < -RADICAND_TOLERANCE):
        raise ArgumentError("Negative radicand {!r}".format(float(np.min(radicand))))
    return np.sqrt(np.clip(radicand, 0.0, None))


def _lambda(norm_x_sq, norm_y_sq, re_inner_sq):
    total = norm_x_sq + norm_y_sq
    value = 0.5 * (1 + np.sqrt((norm_x_sq - norm_y_sq) ** 2 + 4 * re_inner_sq) / total)
    return np.clip(value, 0.5, 1.0)


def lambda_fn(norm_x_sq, norm_y_sq, re_inner):
    """
    Largest eigenvalue fraction lambda(x, y) of two vectors with the given squared norms and real inner product.

    @param norm_x_sq: Squared norm of x.
    @type  norm_x_sq: C{float}

    @param norm_y_sq: Squared norm of y.
    @type  norm_y_sq: C{float}

    @param re_inner: Re<x|y>.
    @type  re_inner: C{float}

    @return: lambda in [1/2, 1].
    @rtype:  C{float}
    """
    if norm_x_sq < 0 or norm_y_sq < 0:
        raise ArgumentError("Squared norms must be non-negative")
    if norm_x_sq + norm_y_sq <= 0:
        raise ArgumentError("lambda is undefined when both vectors vanish")
    if re_inner * re_inner > norm_x_sq * norm_y_sq + CAUCHY_SCHWARZ_TOLERANCE:
        raise ArgumentError("Inner product {!r} violates Cauchy-Schwarz".format(re_inner))
    return float(_lambda(norm_x_sq, norm_y_sq, re_inner * re_inner))


def theorem1_bound(pairs, n, subset=None):
    """
    Lower bound on S(A|E) of the state (1/N)(|0><0| (x) sum |E_i><E_i| + |1><1| (x) sum |F_i><F_i|).

    @param pairs: For each i, the tuple (<E_i|E_i>, <F_i|F_i>, Re<E_i|F_i>).
    @type  pairs: C{list} of C{tuple} of three C{float}

    @param n: Normalization N, the sum of all squared norms.
    @type  n: C{float}

    @param subset: Indices of the pairs to include, all of them if C{None}.
    @type  subset: C{None} or iterable of C{int}

    @return: The bound in bits.
    @rtype:  C{float}
    """
    if n <= 0:
        raise ArgumentError("Normalization must be positive, got {!r}".format(n))
    total = sum(norm_e + norm_f for norm_e, norm_f, _ in pairs)
    if abs(total - n) > 1e-9:
        raise ArgumentError("Normalization {!r} does not match the squared norms (sum {!r})".format(n, total))
    if subset is None:
        subset = range(len(pairs))

    result = 0.0
    for index in subset:
        if not 0 <= index < len(pairs):
            raise ArgumentError("Pair index {} out of range".format(index))
        norm_e, norm_f, re_inner = pairs[index]
        weight = norm_e + norm_f
        if weight <= EMPTY_PAIR:
            continue
        lam = lambda_fn(norm_e, norm_f, re_inner)
        result += weight / n * (qmath.binary_entropy(norm_e / weight) - qmath.binary_entropy(lam))
    return result


class ForwardBounds:
    """
    Forward attack amplitudes known from the statistics, and the feasible range of the hidden ones.

    @ivar q0: Amplitude sqrt(p_ab_0_0).
    @type q0: C{float}

    @ivar q1: Amplitude sqrt(p_ab_0_1).
    @type q1: C{float}

    @ivar q3_range: Feasible (minimum, maximum) of q3. The minimum may exceed 1 for inconsistent statistics.
    @type q3_range: C{tuple} of C{float}

    @ivar q2_range: Matching (minimum, maximum) of q2 = sqrt(1 - q3^2).
    @type q2_range: C{tuple} of C{float}

    @ivar flags: Diagnostic flags.
    @type flags: C{list} of C{str}
    """

    def __init__(self, q0, q1, q3_min, flags):
        self.q0 = q0
        self.q1 = q1
        self.q3_range = (q3_min, 1.0)
        self.q2_range = (0.0, math.sqrt(max(0.0, 1 - q3_min * q3_min)))
        self.flags = flags


def derive_qs(stats, alpha):
    """
    Derive q0 and q1, and bound q3 from below with the smallest root consistent with p_ab_a_1.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param alpha: Amplitude of |0> in |a>, with beta > 0.
    @type  alpha: C{float}

    @rtype: L{ForwardBounds}
    """
    beta = _beta(alpha)
    if beta <= DEGENERATE:
        raise ArgumentError("The q3 range needs beta > 0")
    q0 = math.sqrt(max(0.0, stats.p_ab_0_0))
    q1 = math.sqrt(max(0.0, stats.p_ab_0_1))

    flags = []
    if stats.p_ab_a_1 < alpha * alpha * stats.p_ab_0_1:
        flags.append(FLAG_Q3_CLAMPED)
        log.warning("p_ab_a_1 < alpha^2 p_ab_0_1 at alpha=%s, q3 lower bound clamped to 0", alpha)
    q3_min = max(0.0, (math.sqrt(max(0.0, stats.p_ab_a_1)) - alpha * q1) / beta)
    if 1 < q3_min <= 1 + Q3_OVERSHOOT:
        q3_min = 1.0
    return ForwardBounds(q0, q1, q3_min, flags)


def g_norms_from_stats(stats):
    """
    Squared norms of |g0> .. |g3>, which unitarity of the reverse attack ties to the statistics.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @return: The four squared norms, index i belonging to |g_i>.
    @rtype:  C{list} of C{float}
    """
    p = stats.p
    return [
        stats.p_ab_a_1 * (1 - stats.p_aa_a_1_0 / p),
        stats.p_ab_a_1 * stats.p_aa_a_1_0 / p,
        stats.p_ab_a_0 * (1 - stats.p_aa_a_0_0 / p),
        stats.p_ab_a_0 * stats.p_aa_a_0_0 / p,
    ]


def check_symmetry(stats, tolerance=SYMMETRY_TOLERANCE):
    """
    Verify that the statistics follow the symmetric noise relations, and raise if they do not.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param tolerance: Allowed absolute deviation of each relation.
    @type  tolerance: C{float}
    """
    q_r = stats.reverse_noise()
    p = stats.p
    relations = [
        ("p_aa_0_1_0/p = Q_R", stats.p_aa_0_1_0 / p, q_r),
        ("p_aa_a_0_0/p = 1-Q_R", stats.p_aa_a_0_0 / p, 1 - q_r),
        ("p_aa_a_1_0/p = Q_R", stats.p_aa_a_1_0 / p, q_r),
    ]
    violations = [
        "{} off by {:.3g}".format(name, abs(value - expected))
        for name, value, expected in relations
        if abs(value - expected) > tolerance
    ]
    if violations:
        raise AsymmetricStatisticsError(violations)


class StatisticsReading:
    """
    Squared norms of Eve's vectors as read from the statistics.

    @ivar q_r: Reverse noise, 1 - p_aa_0_0_0 / p.
    @type q_r: C{float}

    @ivar e0_sq: <e0|e0>; <e1|e1> is its complement.
    @type e0_sq: C{float}

    @ivar f0_sq: <f0|f0>; <f1|f1> is its complement.
    @type f0_sq: C{float}

    @ivar g_sq: <g_i|g_i> for i = 0 .. 3.
    @type g_sq: C{list} of C{float}
    """

    def __init__(self, q_r, e0_sq, f0_sq, g_sq):
        self.q_r = q_r
        self.e0_sq = min(1.0, max(0.0, e0_sq))
        self.f0_sq = min(1.0, max(0.0, f0_sq))
        self.g_sq = [max(0.0, value) for value in g_sq]

    @property
    def e1_sq(self):
        return 1 - self.e0_sq

    @property
    def f1_sq(self):
        return 1 - self.f0_sq


def read_statistics(stats, reading=READING_SYMMETRIC, tolerance=SYMMETRY_TOLERANCE):
    """
    Read the squared norms the bound needs.

    With the symmetric reading the statistics are first checked against the symmetric relations, and every norm
    then follows from Q_R alone. The general reading takes each norm from its own statistic.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param reading: L{READING_SYMMETRIC} or L{READING_GENERAL}.
    @type  reading: C{str}

    @param tolerance: Tolerance of the symmetry check.
    @type  tolerance: C{float}

    @rtype: L{StatisticsReading}
    """
    q_r = stats.reverse_noise()
    if reading == READING_SYMMETRIC:
        check_symmetry(stats, tolerance)
        g_sq = [
            stats.p_ab_a_1 * (1 - q_r),
            stats.p_ab_a_1 * q_r,
            stats.p_ab_a_0 * q_r,
            stats.p_ab_a_0 * (1 - q_r),
        ]
        return StatisticsReading(q_r, 1 - q_r, q_r, g_sq)
    if reading == READING_GENERAL:
        return StatisticsReading(q_r, stats.p_aa_0_0_0 / stats.p, stats.p_aa_0_1_0 / stats.p, g_norms_from_stats(stats))
    raise ArgumentError("Unknown statistics reading {!r}".format(reading))


def _cap_arrays(norms, alpha, q0, q1, q3):
    """
    Caps on <e2|e2> and <f3|f3> for an array of q3 values.

    @return: Both caps and the masks where the bounding equation degenerates (cap 1).
    @rtype:  C{tuple} of four C{numpy.ndarray}
    """
    beta = _beta(alpha)
    q3 = np.asarray(q3, dtype=float)
    q2 = np.sqrt(np.clip(1 - q3 * q3, 0.0, None))

    e2_scale = q3 * beta
    e2_free = e2_scale <= DEGENERATE
    e2_root = (q1 * alpha * math.sqrt(norms.f0_sq) + math.sqrt(norms.g_sq[1])) / np.where(e2_free, 1.0, e2_scale)
    e2_cap = np.where(e2_free, 1.0, np.minimum(1.0, e2_root * e2_root))

    f3_scale = q2 * beta
    f3_free = f3_scale <= DEGENERATE
    f3_root = (q0 * alpha * math.sqrt(norms.e1_sq) + math.sqrt(norms.g_sq[2])) / np.where(f3_free, 1.0, f3_scale)
    f3_cap = np.where(f3_free, 1.0, np.minimum(1.0, f3_root * f3_root))
    return e2_cap, f3_cap, e2_free, f3_free


def hidden_noise_caps(stats, alpha, q3, reading=READING_SYMMETRIC):
    """
    Largest <e2|e2> and <f3|f3> compatible with the statistics for a given q3.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param q3: Hidden forward amplitude, in [0, 1].
    @type  q3: C{float}

    @param reading: How to read the norms from the statistics.
    @type  reading: C{str}

    @return: The caps on <e2|e2> and <f3|f3>, each in [0, 1].
    @rtype:  C{tuple} of two C{float}
    """
    if not 0 <= q3 <= 1:
        raise ArgumentError("q3 must lie in [0, 1], got {!r}".format(q3))
    norms = read_statistics(stats, reading)
    q0 = math.sqrt(max(0.0, stats.p_ab_0_0))
    q1 = math.sqrt(max(0.0, stats.p_ab_0_1))
    e2_cap, f3_cap, e2_free, f3_free = _cap_arrays(norms, alpha, q0, q1, q3)
    if e2_free:
        log.warning("e2 cap unconstrained at q3=%s, alpha=%s", q3, alpha)
    return float(e2_cap), float(f3_cap)


def re_g1g3_from_stats(stats, reading=READING_GENERAL, norms=None):
    """
    Re<g1|g3> from the reflection statistic p_aa_a_r_0 = p ||g1 + g3||^2.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param reading: How to read the norms of |g1> and |g3>.
    @type  reading: C{str}

    @param norms: Norms already read from L{stats}, used instead of L{reading}.
    @type  norms: L{StatisticsReading} or C{None}

    @rtype: C{float}
    """
    if norms is None:
        norms = read_statistics(stats, reading)
    g_sq = norms.g_sq
    return 0.5 * (stats.p_aa_a_r_0 / stats.p - g_sq[1] - g_sq[3])


def chi_abs_max(alpha, q_values, q_r, e2_sq, f3_sq, e0_sq=None, f0_sq=None):
    """
    Upper bound on |chi|, the part of Re<V_a0a|V_a1a> no statistic reveals.

    Without L{e0_sq} and L{f0_sq} the symmetric norms <e0|e0> = 1 - Q_R and <f0|f0> = Q_R are used.
    Works element-wise when the hidden parameters are arrays.

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param q_values: Forward amplitudes (q0, q1, q2, q3).
    @type  q_values: C{tuple}

    @param q_r: Reverse noise.
    @type  q_r: C{float}

    @param e2_sq: <e2|e2>.
    @type  e2_sq: C{float} or C{numpy.ndarray}

    @param f3_sq: <f3|f3>.
    @type  f3_sq: C{float} or C{numpy.ndarray}

    @param e0_sq: <e0|e0>, if not the symmetric value.
    @type  e0_sq: C{float} or C{None}

    @param f0_sq: <f0|f0>, if not the symmetric value.
    @type  f0_sq: C{float} or C{None}

    @rtype: C{float} or C{numpy.ndarray}
    """
    q0, q1, q2, q3 = q_values
    beta = _beta(alpha)
    if e0_sq is None:
        e0_sq = 1 - q_r
    if f0_sq is None:
        f0_sq = q_r
    e1_sq = 1 - e0_sq
    f1_sq = 1 - f0_sq
    e2_sq = np.asarray(e2_sq, dtype=float)
    f3_sq = np.asarray(f3_sq, dtype=float)

    a3b = alpha**3 * beta
    a2b2 = alpha**2 * beta**2
    ab3 = alpha * beta**3
    chi = q0 * q1 * a3b * (_sqrt(e0_sq * f1_sq) + _sqrt(e1_sq * f0_sq))
    chi = chi + q0 * q3 * a2b2 * _sqrt(e1_sq * e2_sq)
    chi = chi + q1 * q2 * a2b2 * (_sqrt(f0_sq * f3_sq) + _sqrt(f1_sq * (1 - f3_sq)))
    chi = chi + q2 * q3 * ab3 * (_sqrt(e2_sq * f3_sq) + _sqrt((1 - e2_sq) * (1 - f3_sq)))
    return _as_result(chi)


def reflection_cross_term(stats, alpha, reading=READING_GENERAL, norms=None):
    """
    The measured part of the q0 q3 alpha^2 beta^2 Re<e0|e3> equation.

    It is Re<V_a0a|V_a1a> from the reflection statistics minus (alpha^2 - beta^2) Re<g1|g3>.

    @rtype: C{float}
    """
    beta = _beta(alpha)
    p = stats.p
    cross = (stats.p_aa_a_r_a - stats.p_ab_a_0 * stats.p_aa_a_0_a - stats.p_ab_a_1 * stats.p_aa_a_1_a) / (2 * p)
    return cross - (alpha * alpha - beta * beta) * re_g1g3_from_stats(stats, reading, norms)


def re_e0e3(stats, alpha, hidden, chi, reading=READING_GENERAL):
    """
    Solve the reflection equation for Re<e0|e3>.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param hidden: Point of the hidden parameters; only q3 is used.
    @type  hidden: L{HiddenParams}

    @param chi: Value taken for chi.
    @type  chi: C{float}

    @param reading: How to read the norms of |g1> and |g3>.
    @type  reading: C{str}

    @return: Re<e0|e3>.
    @rtype:  C{float}

    @raise DegenerateBound: q0 q3 alpha^2 beta^2 vanishes, and the equation says nothing about Re<e0|e3>.
    """
    beta = _beta(alpha)
    q0 = math.sqrt(max(0.0, stats.p_ab_0_0))
    denominator = q0 * hidden.q3 * alpha * alpha * beta * beta
    if denominator <= DENOMINATOR_FLOOR:
        raise DegenerateBound("q0 q3 alpha^2 beta^2 = {!r}".format(denominator))
    return (reflection_cross_term(stats, alpha, reading) - chi) / denominator


def re2_e0g0_lower(stats, alpha, q3, re_e0e3, q_r, e0_sq=None, f1_sq=None):
    """
    Lower bound on Re^2<e0|g0>.

    Without L{e0_sq} and L{f1_sq} the symmetric norms <e0|e0> = <f1|f1> = 1 - Q_R are used.
    Works element-wise for arrays.

    @rtype: C{float} or C{numpy.ndarray}
    """
    beta = _beta(alpha)
    if e0_sq is None:
        e0_sq = 1 - q_r
    if f1_sq is None:
        f1_sq = 1 - q_r
    slack = alpha * math.sqrt(max(0.0, stats.p_ab_0_1)) * _sqrt(e0_sq * f1_sq)
    value = np.maximum(0.0, q3 * beta * np.asarray(re_e0e3, dtype=float) - slack)
    return _as_result(value * value)


def h_a_given_b(stats):
    """
    H(A|B) of the raw key, from the forward statistics.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @return: Conditional Shannon entropy in bits.
    @rtype:  C{float}
    """
    joint = [stats.p_ab_0_0 / 2, stats.p_ab_0_1 / 2, stats.p_ab_a_1 / 2, stats.p_ab_a_0 / 2]
    return qmath.shannon_entropy(joint) - qmath.binary_entropy((stats.p_ab_0_0 + stats.p_ab_a_0) / 2)


class GridSpec:
    """
    Settings of the minimization over the hidden parameters.

    @ivar points: Number of grid points per axis.
    @type points: C{int}

    @ivar refine_passes: Number of local refinement passes around the minimum.
    @type refine_passes: C{int}

    @ivar reading: How the statistics are read, L{READING_SYMMETRIC} or L{READING_GENERAL}.
    @type reading: C{str}

    @ivar symmetry_tolerance: Allowed deviation from the symmetric relations.
    @type symmetry_tolerance: C{float}

    @ivar cs_clamp: Clamp Re<e0|e3> to the Cauchy-Schwarz range.
    @type cs_clamp: C{bool}
    """

    def __init__(self, points=64, refine_passes=1, reading=READING_SYMMETRIC, symmetry_tolerance=SYMMETRY_TOLERANCE,
                 cs_clamp=False):
        if points < 2:
            raise ArgumentError("A grid needs at least 2 points per axis, got {}".format(points))
        if refine_passes < 0:
            raise ArgumentError("Number of refinement passes cannot be negative")
        if reading not in READINGS:
            raise ArgumentError("Unknown statistics reading {!r}".format(reading))
        self.points = int(points)
        self.refine_passes = int(refine_passes)
        self.reading = reading
        self.symmetry_tolerance = symmetry_tolerance
        self.cs_clamp = cs_clamp


class HiddenParams:
    """
    A point of the hidden attack parameters.

    @ivar q3: Forward amplitude q3.
    @type q3: C{float}

    @ivar e2_sq: <e2|e2>.
    @type e2_sq: C{float}

    @ivar f3_sq: <f3|f3>.
    @type f3_sq: C{float}
    """

    def __init__(self, q3, e2_sq, f3_sq):
        self.q3 = q3
        self.e2_sq = e2_sq
        self.f3_sq = f3_sq

    def __repr__(self):
        return "HiddenParams(q3={!r}, e2_sq={!r}, f3_sq={!r})".format(self.q3, self.e2_sq, self.f3_sq)


class BoundBreakdown:
    """
    Intermediate values of the bound at one point of the hidden parameters.

    @ivar q0: sqrt(p_ab_0_0).
    @ivar q1: sqrt(p_ab_0_1).
    @ivar q2: sqrt(1 - q3^2).
    @ivar g_norms: Squared norms of |g0> .. |g3>.
    @ivar re_g1g3: Re<g1|g3>.
    @ivar chi_abs_max: Bound on |chi|.
    @ivar re_e0e3: Re<e0|e3> with the adversarial chi, or C{None} when degenerate.
    @ivar re2_e0g0: Lower bound on Re^2<e0|g0>.
    @ivar lambda_val: lambda(q0|e0>, |g0>).
    @ivar sae_term: The entropy term.
    """

    def __init__(self, q0, q1, q2, g_norms, re_g1g3, chi_abs_max, re_e0e3, re2_e0g0, lambda_val, sae_term):
        self.q0 = q0
        self.q1 = q1
        self.q2 = q2
        self.g_norms = g_norms
        self.re_g1g3 = re_g1g3
        self.chi_abs_max = chi_abs_max
        self.re_e0e3 = re_e0e3
        self.re2_e0g0 = re2_e0g0
        self.lambda_val = lambda_val
        self.sae_term = sae_term


class _Evaluation:
    """Arrays of one grid evaluation."""

    def __init__(self, **arrays):
        self.__dict__.update(arrays)


class _BoundProblem:
    """
    The part of the bound that does not depend on the hidden parameters.
    """

    def __init__(self, stats, alpha, grid):
        self.alpha = alpha
        self.beta = _beta(alpha)
        self.norms = read_statistics(stats, grid.reading, grid.symmetry_tolerance)
        self.forward = derive_qs(stats, alpha)
        self.q0 = self.forward.q0
        self.q1 = self.forward.q1
        self.stats = stats
        self.cs_clamp = grid.cs_clamp

        self.re_g1g3 = re_g1g3_from_stats(stats, norms=self.norms)
        self.measured = reflection_cross_term(stats, alpha, norms=self.norms)

        # Squared norms of the pair (q0|e0>, |g0>).
        self.norm_x_sq = stats.p_ab_0_0 * self.norms.e0_sq
        self.norm_y_sq = self.norms.g_sq[0]

    def evaluate(self, q3, u, v):
        """
        Evaluate the entropy term on broadcastable arrays.

        @param q3: Values of q3.
        @param u: Fractions of the e2 cap.
        @param v: Fractions of the f3 cap.

        @rtype: L{_Evaluation}
        """
        alpha = self.alpha
        beta = self.beta
        norms = self.norms
        q2 = np.sqrt(np.clip(1 - q3 * q3, 0.0, None))
        e2_cap, f3_cap, e2_free, f3_free = _cap_arrays(norms, alpha, self.q0, self.q1, q3)
        e2_sq = u * e2_cap
        f3_sq = v * f3_cap

        chi = chi_abs_max(alpha, (self.q0, self.q1, q2, q3), norms.q_r, e2_sq, f3_sq, norms.e0_sq, norms.f0_sq)
        denominator = self.q0 * q3 * alpha * alpha * beta * beta
        degenerate = denominator <= DENOMINATOR_FLOOR
        re_e0e3 = (self.measured - chi) / np.where(degenerate, 1.0, denominator)

        cs_clamped = np.zeros(np.shape(re_e0e3), dtype=bool)
        if self.cs_clamp:
            limit = np.sqrt(np.clip(norms.e0_sq * (1 - e2_sq), 0.0, None))
            cs_clamped = np.abs(re_e0e3) > limit
            re_e0e3 = np.clip(re_e0e3, -limit, limit)

        re2_e0g0 = np.asarray(
            re2_e0g0_lower(self.stats, alpha, q3, re_e0e3, norms.q_r, norms.e0_sq, norms.f1_sq), dtype=float
        )
        product = self.norm_x_sq * self.norm_y_sq
        inner_sq = self.q0 * self.q0 * re2_e0g0
        cs_clamped = cs_clamped | (inner_sq > product)
        inner_sq = np.minimum(inner_sq, product)

        total = self.norm_x_sq + self.norm_y_sq
        if total <= EMPTY_PAIR:
            lam = np.ones(np.shape(inner_sq))
            term = np.zeros(np.shape(inner_sq))
        else:
            lam = _lambda(self.norm_x_sq, self.norm_y_sq, inner_sq)
            term = total / 2 * (qmath.binary_entropy(self.norm_x_sq / total) - qmath.binary_entropy(lam))
        term = np.where(degenerate, 0.0, np.maximum(term, 0.0))
        return _Evaluation(
            q2=q2,
            e2_sq=e2_sq,
            f3_sq=f3_sq,
            e2_free=e2_free,
            f3_free=f3_free,
            chi=chi,
            degenerate=degenerate,
            re_e0e3=re_e0e3,
            re2_e0g0=re2_e0g0,
            cs_clamped=cs_clamped,
            lam=lam,
            term=term,
        )

    def search(self, q3_axis, u_axis, v_axis):
        """
        Minimize the entropy term over the product of three axes.

        @return: Minimum and its index on the axes.
        @rtype:  C{tuple} of C{float} and C{tuple} of three C{int}
        """
        evaluation = self.evaluate(q3_axis[:, None, None], u_axis[None, :, None], v_axis[None, None, :])
        term = np.broadcast_to(evaluation.term, (len(q3_axis), len(u_axis), len(v_axis)))
        index = np.unravel_index(int(np.argmin(term)), term.shape)
        return float(term[index]), tuple(int(i) for i in index)

    def breakdown(self, q3, u, v):
        """
        Evaluate a single point.

        @return: The breakdown, the point, and the diagnostic flags raised at the point.
        @rtype:  C{tuple} of L{BoundBreakdown}, L{HiddenParams} and C{list} of C{str}
        """
        point = self.evaluate(np.asarray(q3), np.asarray(u), np.asarray(v))
        flags = []
        if bool(point.e2_free):
            flags.append(FLAG_E2_UNCONSTRAINED)
        if bool(point.f3_free):
            flags.append(FLAG_F3_UNCONSTRAINED)
        if bool(point.cs_clamped):
            flags.append(FLAG_CS_CLAMPED)
        breakdown = BoundBreakdown(
            q0=self.q0,
            q1=self.q1,
            q2=float(point.q2),
            g_norms=list(self.norms.g_sq),
            re_g1g3=self.re_g1g3,
            chi_abs_max=float(point.chi),
            re_e0e3=None if bool(point.degenerate) else float(point.re_e0e3),
            re2_e0g0=float(point.re2_e0g0),
            lambda_val=float(point.lam),
            sae_term=float(point.term),
        )
        hidden = HiddenParams(float(q3), float(point.e2_sq), float(point.f3_sq))
        return breakdown, hidden, flags


def _zoom(axis, index):
    """Axis over the neighbouring cells of L{index}."""
    low = axis[max(index - 1, 0)]
    high = axis[min(index + 1, len(axis) - 1)]
    return np.linspace(low, high, len(axis))


class BoundResult:
    """
    Outcome of the minimization.

    @ivar value: Lower bound on S(A|E) in bits.
    @type value: C{float}

    @ivar argmin: Minimizing point, C{None} when no grid was searched.
    @type argmin: L{HiddenParams} or C{None}

    @ivar breakdown: Intermediate values at the minimum, C{None} when no grid was searched.
    @type breakdown: L{BoundBreakdown} or C{None}

    @ivar evaluated: Number of evaluated grid points.
    @type evaluated: C{int}

    @ivar flags: Diagnostic flags.
    @type flags: C{list} of C{str}
    """

    def __init__(self, value, argmin, breakdown, evaluated, flags):
        self.value = value
        self.argmin = argmin
        self.breakdown = breakdown
        self.evaluated = evaluated
        self.flags = flags


def sae_lower(stats, alpha, grid=None):
    """
    Worst-case lower bound on S(A|E) over all attacks consistent with the statistics.

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param grid: Minimization settings, the defaults if C{None}.
    @type  grid: L{GridSpec} or C{None}

    @rtype: L{BoundResult}
    """
    if grid is None:
        grid = GridSpec()
    if not 0 <= alpha <= 1:
        raise ArgumentError("alpha must lie in [0, 1], got {!r}".format(alpha))
    if alpha <= DEGENERATE or _beta(alpha) <= DEGENERATE:
        return BoundResult(0.0, None, None, 0, [FLAG_DEGENERATE_ALPHA])

    problem = _BoundProblem(stats, alpha, grid)
    flags = list(problem.forward.flags)
    if problem.q0 <= DEGENERATE:
        return BoundResult(0.0, None, None, 0, flags + [FLAG_DEGENERATE_FORWARD])
    q3_min = problem.forward.q3_range[0]
    if q3_min > 1:
        log.warning("Empty q3 range at alpha=%s (q3_min=%s)", alpha, q3_min)
        return BoundResult(0.0, None, None, 0, flags + [FLAG_INFEASIBLE])

    n = grid.points
    q3_axis = np.linspace(q3_min, 1.0, n)
    u_axis = np.linspace(0.0, 1.0, n)
    v_axis = np.linspace(0.0, 1.0, n)
    best, (i, j, k) = problem.search(q3_axis, u_axis, v_axis)
    best_point = (q3_axis[i], u_axis[j], v_axis[k])
    evaluated = n**3

    for _ in range(grid.refine_passes):
        q3_axis = _zoom(q3_axis, i)
        u_axis = _zoom(u_axis, j)
        v_axis = _zoom(v_axis, k)
        value, (i, j, k) = problem.search(q3_axis, u_axis, v_axis)
        evaluated += n**3
        if value < best:
            best = value
            best_point = (q3_axis[i], u_axis[j], v_axis[k])

    breakdown, argmin, point_flags = problem.breakdown(*best_point)
    log.debug("S(A|E) >= %s at alpha=%s, %r", best, alpha, argmin)
    return BoundResult(best, argmin, breakdown, evaluated, flags + point_flags)


class KeyRateReport:
    """
    Key rate of one protocol setting.

    @ivar alpha: Amplitude of |0> in |a>.
    @type alpha: C{float}

    @ivar p: POVM scale of the statistics.
    @type p: C{float}

    @ivar sae_lower: Lower bound on S(A|E).
    @type sae_lower: C{float}

    @ivar hab: H(A|B).
    @type hab: C{float}

    @ivar rate: sae_lower - hab.
    @type rate: C{float}

    @ivar argmin: Minimizing hidden parameters, if a grid was searched.
    @type argmin: L{HiddenParams} or C{None}

    @ivar breakdown: Intermediate values at the minimum, if a grid was searched.
    @type breakdown: L{BoundBreakdown} or C{None}

    @ivar grid_points_evaluated: Number of evaluated grid points.
    @type grid_points_evaluated: C{int}

    @ivar flags: Diagnostic flags.
    @type flags: C{list} of C{str}
    """

    def __init__(self, alpha, p, sae_lower, hab, argmin, breakdown, grid_points_evaluated, flags):
        self.alpha = alpha
        self.p = p
        self.sae_lower = sae_lower
        self.hab = hab
        self.rate = sae_lower - hab
        self.argmin = argmin
        self.breakdown = breakdown
        self.grid_points_evaluated = grid_points_evaluated
        self.flags = flags

    @property
    def feasible(self):
        return FLAG_INFEASIBLE not in self.flags


def key_rate(stats, alpha, grid=None):
    """
    Key rate r = S(A|E) - H(A|B) with the worst-case bound on S(A|E).

    @param stats: Observed statistics.
    @type  stats: L{ObservedStatistics}

    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @param grid: Minimization settings.
    @type  grid: L{GridSpec} or C{None}

    @rtype: L{KeyRateReport}
    """
    result = sae_lower(stats, alpha, grid)
    hab = h_a_given_b(stats)
    return KeyRateReport(alpha, stats.p, result.value, hab, result.argmin, result.breakdown, result.evaluated,
                         result.flags)
