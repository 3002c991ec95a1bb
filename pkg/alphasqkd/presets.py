"""
Named configurations of the standard evaluation curves.

The forward noise of the 'fig2' and 'fig3' presets is an estimate: those curves are only described as having
low, and then increased, forward noise.
"""

import logging

from .config import (
    MODE_INTERCEPT,
    MODE_SWEEP,
    SweepConfig,
)

log = logging.getLogger(__name__)


def _sweep(alpha, q_f, q_r):
    cfg = SweepConfig()
    cfg.mode = MODE_SWEEP
    cfg.alpha = alpha
    cfg.noise["q_f"] = q_f
    cfg.noise["q_r"] = q_r
    cfg.noise["q_x"] = q_r
    cfg.tie_loop = True
    return cfg


def fig1():
    """Q_F = 1e-5 and Q_R = Q_X from 2% to 10%."""
    return _sweep((0.0, 0.5, 0.005), 1e-5, (0.02, 0.10, 0.02))


def fig2():
    """Low forward noise Q_F = 1e-4 and Q_R = Q_X from 1% to 5%."""
    return _sweep((0.0, 0.5, 0.005), 1e-4, (0.01, 0.05, 0.01))


def fig3():
    """Increasing forward noise at Q_R = Q_X = 1%."""
    return _sweep((0.0, 0.5, 0.005), (1e-4, 5e-4, 2e-4), 0.01)


def fig5():
    """The intercept-resend variant over the full alpha range."""
    cfg = SweepConfig()
    cfg.mode = MODE_INTERCEPT
    cfg.alpha = (0.0, 1.0, 0.01)
    return cfg


PRESETS = {
    "fig1": fig1,
    "fig2": fig2,
    "fig3": fig3,
    "fig5": fig5,
}


def get_preset(name):
    """
    Get the configuration of a preset.

    @param name: Name of the preset.
    @type  name: C{str}

    @return: The configuration, or C{None} for an unknown name.
    @rtype:  L{SweepConfig} or C{None}
    """
    factory = PRESETS.get(name)
    if factory is None:
        log.warning("Unknown preset %s", name)
        return None
    return factory()
