"""
Exceptions raised by the analysis.

Bad input raises L{ArgumentError}; a computed object breaking one of its invariants raises L{ValidityError}.
"""


class AlphaSqkdError(Exception):
    """Base class of all errors of the package."""


class ArgumentError(AlphaSqkdError, ValueError):
    """An operation received input outside its domain."""


class ValidityError(AlphaSqkdError, ArithmeticError):
    """A value violates an invariant of its type."""


class AsymmetricStatisticsError(ValidityError):
    """
    Observed statistics are too far from the symmetric relations to evaluate the symmetric bound.

    @ivar violations: Description of each violated relation.
    @type violations: C{list} of C{str}
    """

    def __init__(self, violations):
        super().__init__("Statistics are not symmetric: " + "; ".join(violations))
        self.violations = violations


class ConsistencyError(ValidityError):
    """Internal consistency check failed (for example a density operator lost its trace)."""


class DegenerateBound(AlphaSqkdError):
    """The bound equation degenerates and carries no information (its contribution is 0)."""
