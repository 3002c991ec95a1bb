"""
Statistics A and B can estimate from their test iterations.

Naming: C{p_ab_<sent>_<measured>} is the probability that B measures C{<measured>} when A sent C{|<sent>>}.
C{p_aa_<sent>_<b>_<k>} is the probability that A's POVM gives outcome C{k} when she sent C{|<sent>>} and B
measured C{b} and resent it (C{b} is C{r} when B reflected). The latter include the POVM scale p.
"""

import logging

from .errors import (
    ArgumentError,
    ValidityError,
)

log = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-10
NORMALIZATION_TOLERANCE = 1e-9

FORWARD_FIELDS = ("p_ab_0_0", "p_ab_0_1", "p_ab_a_0", "p_ab_a_1")
RETURN_FIELDS = (
    "p_aa_0_0_0",
    "p_aa_0_1_0",
    "p_aa_a_0_0",
    "p_aa_a_1_0",
    "p_aa_a_0_a",
    "p_aa_a_1_a",
    "p_aa_a_r_a",
    "p_aa_a_r_0",
)
STATISTIC_FIELDS = FORWARD_FIELDS + RETURN_FIELDS


class ObservedStatistics:
    """
    Complete set of observable probabilities of one protocol setting.

    @ivar p: POVM scale used while gathering the statistics.
    @type p: C{float}

    The probability fields are listed in L{STATISTIC_FIELDS}, all C{float}.
    """

    def __init__(self, p, **values):
        missing = [name for name in STATISTIC_FIELDS if name not in values]
        unknown = [name for name in values if name not in STATISTIC_FIELDS]
        if missing or unknown:
            raise ArgumentError("Statistics missing {} or with unknown fields {}".format(missing, unknown))
        if not p > 0:
            raise ArgumentError("POVM scale must be positive, got {!r}".format(p))

        self.p = float(p)
        for name in STATISTIC_FIELDS:
            value = float(values[name])
            if not -PROBABILITY_TOLERANCE <= value <= 1 + PROBABILITY_TOLERANCE:
                raise ValidityError("Statistic {} = {!r} is not a probability".format(name, value))
            if name in RETURN_FIELDS and value > self.p + PROBABILITY_TOLERANCE:
                raise ValidityError("Statistic {} = {!r} exceeds the POVM scale {!r}".format(name, value, self.p))
            setattr(self, name, value)

        if abs(self.p_ab_0_0 + self.p_ab_0_1 - 1) > NORMALIZATION_TOLERANCE:
            raise ValidityError("Forward statistics for |0> do not sum to 1")
        if abs(self.p_ab_a_0 + self.p_ab_a_1 - 1) > NORMALIZATION_TOLERANCE:
            raise ValidityError("Forward statistics for |a> do not sum to 1")

    def __repr__(self):
        return "ObservedStatistics(p={!r}, {})".format(
            self.p, ", ".join("{}={!r}".format(name, getattr(self, name)) for name in STATISTIC_FIELDS)
        )

    def as_dict(self):
        """
        All fields, including the POVM scale.

        @rtype: C{dict} of C{str} to C{float}
        """
        result = {"p": self.p}
        for name in STATISTIC_FIELDS:
            result[name] = getattr(self, name)
        return result

    def rescaled(self, p):
        """
        The same statistics as if gathered with POVM scale L{p}.

        @param p: New POVM scale.
        @type  p: C{float}

        @rtype: L{ObservedStatistics}
        """
        factor = p / self.p
        values = {name: getattr(self, name) for name in FORWARD_FIELDS}
        for name in RETURN_FIELDS:
            values[name] = getattr(self, name) * factor
        return ObservedStatistics(p, **values)

    def reverse_noise(self):
        """
        Reverse channel noise Q_R = 1 - p_aa_0_0_0 / p.

        @rtype: C{float}
        """
        return 1 - self.p_aa_0_0_0 / self.p
