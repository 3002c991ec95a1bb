"""
Helper functions for loading a JSON settings document.
"""

import json
import logging

log = logging.getLogger(__name__)


def load_json(fname):
    """
    Load the JSON file into memory.

    @param fname: File to load.
    @type  fname: C{str}

    @return: The loaded document.
    @rtype:  C{dict}
    """
    with open(fname, "r", encoding="utf-8") as handle:
        return json.load(handle)


def get_opt_value(node, name, default):
    """
    Get an optional value from a JSON object.

    @param node: Object being read.
    @type  node: C{dict}

    @param name: Name of the value.
    @type  name: C{str}

    @param default: Default value.

    @return: The requested value.
    """
    if isinstance(node, dict) and name in node and node[name] is not None:
        return node[name]
    return default


def get_single_child(node, name, optional=False):
    """
    Get the child object with the given name.

    @param node: Object being read.
    @type  node: C{dict}

    @param name: Name of the child.
    @type  name: C{str}

    @param optional: Child may be missing.
    @type  optional: C{bool}

    @return: The child, or C{None} if it is missing and optional.
    @rtype:  C{dict} or C{None}
    """
    child = node.get(name) if isinstance(node, dict) else None
    if child is None:
        if optional:
            return None
        raise ValueError("Missing '{}' in the settings".format(name))
    if not isinstance(child, dict):
        raise ValueError("'{}' in the settings must be an object".format(name))
    return child


def get_number_or_range(node, name, default):
    """
    Get a value that is either a number or a range object C{{"min", "max", "step"}}.

    @param node: Object being read.
    @type  node: C{dict}

    @param name: Name of the value.
    @type  name: C{str}

    @param default: Value if missing.

    @return: A number, or a tuple (min, max, step) for a range.
    @rtype:  C{float}, C{tuple} or the provided default
    """
    value = get_opt_value(node, name, None)
    if value is None:
        return default
    if isinstance(value, dict):
        try:
            return (float(value["min"]), float(value["max"]), float(value["step"]))
        except (KeyError, TypeError, ValueError):
            raise ValueError("Range '{}' needs numeric min, max and step".format(name))
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("'{}' must be a number or a range".format(name))
    return float(value)
