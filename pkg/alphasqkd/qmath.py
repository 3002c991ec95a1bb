"""
Complex linear algebra and entropy primitives for small Hilbert spaces.

Tensor products order their factors left to right, the left factor being the most significant index.
All logarithms are base two.
"""

import logging
import string

import numpy as np

from .errors import (
    ArgumentError,
    ValidityError,
)

log = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
EIGENVALUE_FLOOR = 1e-10
TRACE_TOLERANCE = 1e-10
COMPARE_TOLERANCE = 1e-9
ZERO_EIGENVALUE = 1e-12


def _check_dims(length, dims):
    """
    Verify and normalize the factor dimensions of a space.

    @param length: Dimension of the complete space.
    @type  length: C{int}

    @param dims: Factor dimensions, or C{None} for a single factor.
    @type  dims: C{None} or iterable of C{int}

    @return: The factor dimensions.
    @rtype:  C{tuple} of C{int}
    """
    if dims is None:
        return (length,)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or int(np.prod(dims)) != length:
        raise ArgumentError("Dimensions {} do not match a space of dimension {}".format(dims, length))
    return dims


class StateVector:
    """
    Ket in a product of small Hilbert spaces.

    @ivar amplitudes: Read-only amplitudes.
    @type amplitudes: C{numpy.ndarray} of C{complex}

    @ivar dims: Dimensions of the tensor factors.
    @type dims: C{tuple} of C{int}

    @ivar normalized: Whether the vector is known to have unit norm.
    @type normalized: C{bool}
    """

    def __init__(self, amplitudes, dims=None, normalized=False):
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        self.dims = _check_dims(len(amplitudes), dims)

        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if normalized and abs(norm_sq - 1) > NORM_TOLERANCE:
            raise ValidityError("Vector flagged normalized has squared norm {!r}".format(norm_sq))
        if norm_sq > 1 + NORM_TOLERANCE:
            raise ValidityError("Vector has squared norm {!r} above 1".format(norm_sq))

        amplitudes.flags.writeable = False
        self.amplitudes = amplitudes
        self.normalized = normalized

    def __len__(self):
        return len(self.amplitudes)

    def __repr__(self):
        return "StateVector({!r}, dims={!r})".format(self.amplitudes.tolist(), self.dims)

    def norm_sq(self):
        """
        Squared norm of the vector.

        @rtype: C{float}
        """
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


class Operator:
    """
    Dense square matrix over a product of small Hilbert spaces.

    @ivar entries: Read-only matrix entries.
    @type entries: C{numpy.ndarray} of C{complex}

    @ivar dims: Dimensions of the tensor factors.
    @type dims: C{tuple} of C{int}

    @ivar hermitian: Whether the matrix is checked to be Hermitian.
    @type hermitian: C{bool}

    @ivar density: Whether the matrix is checked to be a density operator.
    @type density: C{bool}
    """

    def __init__(self, entries, dims=None, hermitian=False, density=False):
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ArgumentError("Operator entries must form a square matrix, got shape {}".format(entries.shape))
        self.dims = _check_dims(entries.shape[0], dims)

        hermitian = hermitian or density
        if hermitian:
            deviation = _hermitian_deviation(entries)
            if deviation > HERMITIAN_TOLERANCE:
                raise ValidityError("Operator flagged Hermitian deviates by {!r}".format(deviation))
        if density:
            trace = float(np.trace(entries).real)
            if abs(trace - 1) > TRACE_TOLERANCE:
                raise ValidityError("Density operator has trace {!r}".format(trace))
            smallest = float(np.linalg.eigvalsh(entries)[0])
            if smallest < -EIGENVALUE_FLOOR:
                raise ValidityError("Density operator has eigenvalue {!r}".format(smallest))

        entries.flags.writeable = False
        self.entries = entries
        self.hermitian = hermitian
        self.density = density

    def __repr__(self):
        return "Operator(dims={!r}, hermitian={}, density={})".format(self.dims, self.hermitian, self.density)

    def trace(self):
        """
        Trace of the operator.

        @rtype: C{complex}
        """
        return complex(np.trace(self.entries))

    def apply(self, vector):
        """
        Apply the operator to a vector of the same space.

        @param vector: Vector to transform.
        @type  vector: L{StateVector}

        @return: Image of the vector (not checked for norm).
        @rtype:  C{numpy.ndarray}
        """
        if len(vector) != self.entries.shape[0]:
            size = self.entries.shape[0]
            raise ArgumentError("Cannot apply a {0}x{0} operator to a vector of length {1}".format(size, len(vector)))
        return self.entries @ vector.amplitudes


def _hermitian_deviation(matrix):
    return float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))


def ket(index, dim):
    """
    Computational basis vector |index> of a space with the given dimension.

    @param index: Index of the basis vector.
    @type  index: C{int}

    @param dim: Dimension of the space.
    @type  dim: C{int}

    @rtype: L{StateVector}
    """
    if not 0 <= index < dim:
        raise ArgumentError("Basis index {} outside dimension {}".format(index, dim))
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[index] = 1
    return StateVector(amplitudes, normalized=True)


def identity(dims):
    """
    Identity operator on the product of the given factors.

    @param dims: Factor dimensions.
    @type  dims: C{tuple} of C{int}

    @rtype: L{Operator}
    """
    dims = tuple(dims)
    return Operator(np.eye(int(np.prod(dims))), dims, hermitian=True)


def projector(vector):
    """
    Rank-one operator |v><v|.

    @param vector: The vector v.
    @type  vector: L{StateVector}

    @rtype: L{Operator}
    """
    amplitudes = vector.amplitudes
    return Operator(np.outer(amplitudes, amplitudes.conj()), vector.dims, hermitian=True)


def inner(x, y):
    """
    Inner product <x|y>, conjugate-linear in the first argument.

    @param x: Bra side.
    @type  x: L{StateVector}

    @param y: Ket side.
    @type  y: L{StateVector}

    @rtype: C{complex}
    """
    if len(x) != len(y):
        raise ArgumentError("Inner product of vectors with lengths {} and {}".format(len(x), len(y)))
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def tensor(x, y):
    """
    Tensor product of two vectors or two operators.

    @param x: Left factor (most significant).
    @type  x: L{StateVector} or L{Operator}

    @param y: Right factor, of the same kind as L{x}.
    @type  y: L{StateVector} or L{Operator}

    @return: The product, with the factor dimensions concatenated.
    @rtype:  Same kind as the inputs.
    """
    if isinstance(x, StateVector) and isinstance(y, StateVector):
        normalized = x.normalized and y.normalized
        return StateVector(np.kron(x.amplitudes, y.amplitudes), x.dims + y.dims, normalized=normalized)
    if isinstance(x, Operator) and isinstance(y, Operator):
        return Operator(
            np.kron(x.entries, y.entries),
            x.dims + y.dims,
            hermitian=x.hermitian and y.hermitian,
            density=x.density and y.density,
        )
    raise ArgumentError("Cannot take the tensor product of {} and {}".format(type(x).__name__, type(y).__name__))


def partial_trace(rho, keep):
    """
    Trace out all factors except the ones in L{keep}.

    @param rho: Operator to reduce.
    @type  rho: L{Operator}

    @param keep: Indices of the factors to keep, kept in increasing order in the result.
    @type  keep: iterable of C{int}

    @return: The reduced operator, carrying the flags of L{rho}.
    @rtype:  L{Operator}
    """
    count = len(rho.dims)
    keep = sorted(set(keep))
    if not keep or keep[0] < 0 or keep[-1] >= count:
        raise ArgumentError("Invalid factors {} to keep of an operator with {} factors".format(keep, count))
    if 2 * count > len(string.ascii_letters):
        raise ArgumentError("Too many factors ({}) for a partial trace".format(count))

    rows = list(string.ascii_letters[:count])
    cols = list(string.ascii_letters[count : 2 * count])
    for index in range(count):
        if index not in keep:
            cols[index] = rows[index]
    result_idx = [rows[i] for i in keep] + [cols[i] for i in keep]
    subscripts = "".join(rows) + "".join(cols) + "->" + "".join(result_idx)

    reduced = np.einsum(subscripts, rho.entries.reshape(rho.dims + rho.dims))
    kept_dims = tuple(rho.dims[i] for i in keep)
    size = int(np.prod(kept_dims))
    return Operator(reduced.reshape(size, size), kept_dims, hermitian=rho.hermitian, density=rho.density)


def eig_hermitian(m):
    """
    Eigendecomposition of a Hermitian operator.

    @param m: Operator to decompose.
    @type  m: L{Operator}

    @return: Eigenvalues in ascending order, and the matching orthonormal eigenvectors.
    @rtype:  C{tuple} of C{numpy.ndarray} and C{list} of L{StateVector}
    """
    deviation = _hermitian_deviation(m.entries)
    if deviation > COMPARE_TOLERANCE:
        raise ArgumentError("Operator is not Hermitian (deviation {!r})".format(deviation))
    values, vectors = np.linalg.eigh(m.entries)
    return values, [StateVector(vectors[:, i], m.dims, normalized=True) for i in range(len(values))]


def _density_eigenvalues(rho):
    """
    Eigenvalues of a density operator, with tiny negative values clamped to 0.

    @param rho: Density operator.
    @type  rho: L{Operator}

    @rtype: C{numpy.ndarray}
    """
    if not rho.density:
        deviation = _hermitian_deviation(rho.entries)
        if deviation > COMPARE_TOLERANCE:
            raise ArgumentError("Not a density operator: Hermitian deviation {!r}".format(deviation))
        trace = float(np.trace(rho.entries).real)
        if abs(trace - 1) > TRACE_TOLERANCE:
            raise ArgumentError("Not a density operator: trace {!r}".format(trace))

    values = np.linalg.eigvalsh(rho.entries)
    if values[0] < -EIGENVALUE_FLOOR:
        raise ValidityError("Density operator has eigenvalue {!r}".format(float(values[0])))
    return np.clip(values, 0.0, None)


def von_neumann_entropy(rho):
    """
    Von Neumann entropy S(rho) = -tr(rho log rho).

    @param rho: Density operator.
    @type  rho: L{Operator}

    @return: Entropy in bits.
    @rtype:  C{float}
    """
    values = _density_eigenvalues(rho)
    values = values[values > ZERO_EIGENVALUE]
    return float(max(0.0, -np.sum(values * np.log2(values))))


def conditional_entropy(rho, a_factors, e_factors):
    """
    Conditional entropy S(A|E) = S(AE) - S(E).

    @param rho: Density operator over exactly the factors of A and E.
    @type  rho: L{Operator}

    @param a_factors: Factor indices of the A system.
    @type  a_factors: iterable of C{int}

    @param e_factors: Factor indices of the E system.
    @type  e_factors: iterable of C{int}

    @return: Conditional entropy in bits.
    @rtype:  C{float}
    """
    a_factors = set(a_factors)
    e_factors = set(e_factors)
    if not a_factors or a_factors & e_factors:
        raise ArgumentError("Factor sets {} and {} must be non-empty and disjoint".format(a_factors, e_factors))
    if a_factors | e_factors != set(range(len(rho.dims))):
        raise ArgumentError("Factor sets must cover all {} factors".format(len(rho.dims)))

    total = von_neumann_entropy(rho)
    if not e_factors:
        return total
    return total - von_neumann_entropy(partial_trace(rho, e_factors))


def _clamp_probabilities(probs):
    probs = np.asarray(probs, dtype=float)
    if np.any(probs > 1 + COMPARE_TOLERANCE):
        raise ArgumentError("Probability above 1 in {}".format(probs))
    if np.any(probs < -NORM_TOLERANCE):
        raise ArgumentError("Negative probability in {}".format(probs))
    return np.clip(probs, 0.0, 1.0)


def shannon_entropy(probs):
    """
    Shannon entropy -sum(p log p) of a probability list, with 0 log 0 = 0.

    @param probs: Probabilities; their sum may not exceed 1.
    @type  probs: iterable of C{float}

    @return: Entropy in bits.
    @rtype:  C{float}
    """
    probs = _clamp_probabilities(list(probs))
    if probs.sum() > 1 + COMPARE_TOLERANCE:
        raise ArgumentError("Probabilities sum to {!r}".format(float(probs.sum())))
    probs = probs[probs > 0]
    return float(-np.sum(probs * np.log2(probs)))


def binary_entropy(x):
    """
    Binary entropy H(x) = H(x, 1 - x), element-wise for arrays.

    @param x: Probability or array of probabilities.
    @type  x: C{float} or C{numpy.ndarray}

    @return: Entropy in bits, of the same shape as L{x}.
    @rtype:  C{float} or C{numpy.ndarray}
    """
    x = _clamp_probabilities(x)
    inside = (x > 0) & (x < 1)
    safe = np.where(inside, x, 0.5)
    result = np.where(inside, -safe * np.log2(safe) - (1 - safe) * np.log2(1 - safe), 0.0)
    if result.ndim == 0:
        return float(result)
    return result
