"""
Small helpers for ranges, numbers and verification of user-supplied values.
"""

import math

RANGE_SLACK = 1e-9


def expand_range(low, high, step):
    """
    All values low, low + step, ... up to and including L{high}.

    @param low: First value.
    @type  low: C{float}

    @param high: Last value (included when it lies on the grid).
    @type  high: C{float}

    @param step: Positive distance between values.
    @type  step: C{float}

    @return: The values, rounded to 12 decimals to keep grids reproducible.
    @rtype:  C{list} of C{float}
    """
    count = int(math.floor((high - low) / step + RANGE_SLACK)) + 1
    return [round(low + index * step, 12) for index in range(count)]


def format_number(value):
    """
    Format a number with 12 significant digits. Text passes unchanged and C{None} becomes an empty string.

    @param value: Number to format.
    @type  value: C{float}, C{int}, C{str} or C{None}

    @rtype: C{str}
    """
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".12g")


def verify_range(name, low, high, step):
    """
    Check whether a range is well-ordered with a positive step.

    @param name: Name of the range in the error.
    @type  name: C{str}

    @return: Whether the range is acceptable.
    @rtype:  C{str} with an error description, or C{None} if all is well.
    """
    if step is None or not step > 0:
        return "{} step must be positive".format(name)
    if high < low:
        return "{} maximum {} is below its minimum {}".format(name, high, low)
    return None


def verify_interval(name, value, low, high):
    """
    Check whether a value lies in [low, high].

    @return: Whether the value is acceptable.
    @rtype:  C{str} with an error description, or C{None} if all is well.
    """
    if value is None:
        return "{} missing".format(name)
    if not low <= value <= high:
        return "{} = {} outside [{}, {}]".format(name, value, low, high)
    return None


def convert_num(value, default):
    """
    Convert an integer setting, falling back to L{default} for missing values.

    Malformed values are returned unchanged, so the settings verifier reports them.

    @param value: Value read from a document or the command line.
    @type  value: C{int}, C{str} or C{None}

    @param default: Default value.
    @type  default: C{int} or C{None}

    @rtype: C{int}, the provided default, or the malformed L{value}
    """
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value.strip(), 10)
    return value
