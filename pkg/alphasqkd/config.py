"""
Configuration of a run: what to compute, over which grid, and where to write the result.
"""

import logging
import os
import sys

from . import (
    loader,
    utils,
)
from .bound import READINGS
from .channel import NoisePoint
from .protocol import (
    PARAM_TOLERANCE,
    max_povm_scale,
)

log = logging.getLogger(__name__)

MODE_KEYRATE = "keyrate"
MODE_SWEEP = "sweep"
MODE_SOUNDNESS = "soundness"
MODE_INTERCEPT = "intercept"
MODE_PRESET = "preset"
MODES = (MODE_KEYRATE, MODE_SWEEP, MODE_SOUNDNESS, MODE_INTERCEPT, MODE_PRESET)

FORMATS = ("csv", "json")
NOISE_NAMES = ("q_f", "q_r", "q_x", "q_z")
MIN_GRID_POINTS = 8


def _values(setting):
    """Values of a setting that is a number or a (min, max, step) range."""
    if isinstance(setting, tuple):
        return utils.expand_range(*setting)
    return [setting]


def _merge_range(current, value, low=None, high=None, step=None):
    """
    Combine command line flags with a number or range from the settings file.

    @param current: Current number or (min, max, step) range.
    @param value: Flag setting the number, or the start of a range.
    @param low: Flag setting the start of a range.
    @param high: Flag setting the end of a range.
    @param step: Flag setting the step of a range.

    @return: The new number or range.
    """
    if low is None and high is None and step is None:
        return current if value is None else value
    if isinstance(current, tuple):
        base_low, base_high, base_step = current
    else:
        base_low, base_high, base_step = current, current, None
    if low is None:
        low = base_low if value is None else value
    return (low, base_high if high is None else high, base_step if step is None else step)


class SweepConfig:
    """
    Settings of a run.

    @ivar mode: What to compute, one of L{MODES}.
    @type mode: C{str}

    @ivar preset: Name of the preset to write in L{MODE_PRESET}.
    @type preset: C{str} or C{None}

    @ivar alpha: Value or (min, max, step) range of alpha.
    @type alpha: C{float} or C{tuple}

    @ivar noise: Value or range of each noise parameter, keyed by L{NOISE_NAMES}. A missing C{q_z} follows C{q_x}.
    @type noise: C{dict}

    @ivar tie_loop: Loop noise Q_X follows the reverse noise Q_R.
    @type tie_loop: C{bool}

    @ivar p_override: POVM scale, or C{None} for 1 / (1 + alpha).
    @type p_override: C{float} or C{None}

    @ivar grid_points: Grid points per axis of the hidden-parameter search.
    @type grid_points: C{int}

    @ivar refine_passes: Refinement passes of the search.
    @type refine_passes: C{int}

    @ivar seed: Seed of the first random attack.
    @type seed: C{int}

    @ivar attacks: Number of random attacks in L{MODE_SOUNDNESS}.
    @type attacks: C{int}

    @ivar d_e: Ancilla dimension of the random attacks.
    @type d_e: C{int}

    @ivar symmetry: Reading of the statistics by the bound, C{'enforce'} or C{'general'}.
    @type symmetry: C{str}

    @ivar cs_clamp: Clamp Re<e0|e3> to its Cauchy-Schwarz range.
    @type cs_clamp: C{bool}

    @ivar workers: Number of worker processes, C{None} for one per core.
    @type workers: C{int} or C{None}

    @ivar output_path: File to write, C{None} for standard output.
    @type output_path: C{str} or C{None}

    @ivar output_format: Output format, C{'csv'} or C{'json'}.
    @type output_format: C{str}
    """

    def __init__(self):
        self.mode = MODE_KEYRATE
        self.preset = None
        self.alpha = 0.2
        self.noise = {"q_f": 0.0, "q_r": 0.0, "q_x": 0.0, "q_z": None}
        self.tie_loop = False
        self.p_override = None
        self.grid_points = 64
        self.refine_passes = 1
        self.seed = 0
        self.attacks = 1000
        self.d_e = 4
        self.symmetry = "enforce"
        self.cs_clamp = False
        self.workers = None
        self.output_path = None
        self.output_format = "csv"

    def load_settings_from_json(self, path):
        """
        Load settings from a JSON document, keeping the defaults of missing entries.

        @param path: File to load.
        @type  path: C{str}
        """
        if not os.path.isfile(path):
            log.error("Cannot find configuration file %s", path)
            sys.exit(1)

        try:
            cfg = loader.load_json(path)
            if not isinstance(cfg, dict):
                raise ValueError("The settings must be a JSON object")
            self.mode = loader.get_opt_value(cfg, "mode", self.mode)
            self.preset = loader.get_opt_value(cfg, "preset", self.preset)
            self.alpha = loader.get_number_or_range(cfg, "alpha", self.alpha)

            noise = loader.get_single_child(cfg, "noise", optional=True)
            if noise is not None:
                for name in NOISE_NAMES:
                    self.noise[name] = loader.get_number_or_range(noise, name, self.noise[name])
                self.tie_loop = bool(loader.get_opt_value(noise, "tie_loop", self.tie_loop))

            self.p_override = loader.get_opt_value(cfg, "p_override", self.p_override)
            self.grid_points = utils.convert_num(loader.get_opt_value(cfg, "grid_points", None), self.grid_points)
            self.refine_passes = utils.convert_num(loader.get_opt_value(cfg, "refine_passes", None), self.refine_passes)
            self.seed = utils.convert_num(loader.get_opt_value(cfg, "seed", None), self.seed)
            self.attacks = utils.convert_num(loader.get_opt_value(cfg, "attacks", None), self.attacks)
            self.d_e = utils.convert_num(loader.get_opt_value(cfg, "d_e", None), self.d_e)
            self.symmetry = loader.get_opt_value(cfg, "symmetry", self.symmetry)
            self.cs_clamp = bool(loader.get_opt_value(cfg, "cs_clamp", self.cs_clamp))
            self.workers = utils.convert_num(loader.get_opt_value(cfg, "workers", None), self.workers)

            output = loader.get_single_child(cfg, "output", optional=True)
            if output is not None:
                self.output_path = loader.get_opt_value(output, "path", self.output_path)
                self.output_format = loader.get_opt_value(output, "format", self.output_format)
        except ValueError as e:
            log.error("Incorrect configuration file %s: %s", path, e)
            sys.exit(1)

    def apply_overrides(self, **flags):
        """
        Override settings with the command line flags that were given (not C{None}).
        """
        self.alpha = _merge_range(
            self.alpha, flags.get("alpha"), flags.get("alpha_min"), flags.get("alpha_max"), flags.get("alpha_step")
        )
        for name, flag in (("q_f", "qf"), ("q_r", "qr"), ("q_x", "qx")):
            self.noise[name] = _merge_range(
                self.noise[name], flags.get(flag), high=flags.get(flag + "_max"), step=flags.get(flag + "_step")
            )

        for name in (
            "mode",
            "preset",
            "tie_loop",
            "p_override",
            "grid_points",
            "refine_passes",
            "seed",
            "attacks",
            "d_e",
            "symmetry",
            "cs_clamp",
            "workers",
        ):
            if flags.get(name) is not None:
                setattr(self, name, flags[name])
        if flags.get("output") is not None:
            self.output_path = flags["output"]
        if flags.get("output_format") is not None:
            self.output_format = flags["output_format"]

    def alphas(self):
        """
        @return: The alpha values of the run, in grid order.
        @rtype:  C{list} of C{float}
        """
        return _values(self.alpha)

    def noise_points(self):
        """
        The noise points of the run: Q_F outermost, then Q_R, then Q_X.

        @rtype: C{list} of L{NoisePoint}
        """
        q_z = self.noise["q_z"]
        points = []
        for q_f in _values(self.noise["q_f"]):
            for q_r in _values(self.noise["q_r"]):
                loop_values = [q_r] if self.tie_loop else _values(self.noise["q_x"])
                for q_x in loop_values:
                    points.append(NoisePoint(q_f, q_r, q_x, q_z))
        return points

    def validate(self):
        """
        Check all settings.

        @return: Descriptions of the errors found, empty if all is well.
        @rtype:  C{list} of C{str}
        """
        errors = []
        if self.mode not in MODES:
            errors.append("Unknown mode {!r}".format(self.mode))
        if self.mode == MODE_PRESET:
            from .presets import PRESETS

            if self.preset not in PRESETS:
                errors.append("Unknown preset {!r}, expected one of {}".format(self.preset, ", ".join(PRESETS)))
            return errors

        settings = [("alpha", self.alpha, 1.0)]
        settings.extend((name, self.noise[name], 0.5) for name in NOISE_NAMES if self.noise[name] is not None)
        for name, setting, upper in settings:
            if isinstance(setting, tuple):
                error = utils.verify_range(name, *setting)
                if error is None:
                    error = utils.verify_interval(name + " minimum", setting[0], 0.0, upper)
                if error is None:
                    error = utils.verify_interval(name + " maximum", setting[1], 0.0, upper)
            elif isinstance(setting, bool) or not isinstance(setting, (int, float)):
                error = "{} must be a number or a range".format(name)
            else:
                error = utils.verify_interval(name, setting, 0.0, upper)
            if error is not None:
                errors.append(error)
        if isinstance(self.noise["q_z"], tuple):
            errors.append("q_z must be a single number")

        if self.mode == MODE_KEYRATE and (
            isinstance(self.alpha, tuple) or any(isinstance(value, tuple) for value in self.noise.values())
        ):
            errors.append("Mode keyrate takes a single alpha and noise point, use mode sweep for ranges")

        if self.p_override is not None and not errors:
            if isinstance(self.p_override, bool) or not isinstance(self.p_override, (int, float)):
                errors.append("p_override must be a number")
            elif self.p_override <= 0:
                errors.append("p_override must be positive")
            else:
                largest = max(self.alphas())
                if self.p_override > max_povm_scale(largest) + PARAM_TOLERANCE:
                    errors.append("p_override {} exceeds 1/(1+alpha) at alpha={}".format(self.p_override, largest))

        for name, value, low in (
            ("grid_points", self.grid_points, MIN_GRID_POINTS),
            ("refine_passes", self.refine_passes, 0),
            ("attacks", self.attacks, 1),
            ("d_e", self.d_e, 2),
        ):
            if isinstance(value, bool) or not isinstance(value, int) or value < low:
                errors.append("{} must be an integer of at least {}, got {!r}".format(name, low, value))
        if self.workers is not None and (not isinstance(self.workers, int) or self.workers < 1):
            errors.append("workers must be a positive integer")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            errors.append("seed must be an integer")
        if self.symmetry not in READINGS:
            errors.append("symmetry must be one of {}".format(", ".join(READINGS)))
        if self.mode == MODE_SOUNDNESS and isinstance(self.d_e, int) and self.d_e % 2:
            errors.append("Mode soundness needs an even d_e for its symmetric attacks")
        if self.output_format not in FORMATS:
            errors.append("Unknown output format {!r}".format(self.output_format))
        return errors

    def as_dict(self):
        """
        The settings as a JSON document, in the layout read by L{load_settings_from_json}.

        @rtype: C{dict}
        """

        def setting(value):
            if isinstance(value, tuple):
                return {"min": value[0], "max": value[1], "step": value[2]}
            return value

        noise = {name: setting(self.noise[name]) for name in NOISE_NAMES if self.noise[name] is not None}
        noise["tie_loop"] = self.tie_loop
        return {
            "mode": self.mode,
            "alpha": setting(self.alpha),
            "noise": noise,
            "p_override": self.p_override,
            "grid_points": self.grid_points,
            "refine_passes": self.refine_passes,
            "seed": self.seed,
            "attacks": self.attacks,
            "d_e": self.d_e,
            "symmetry": self.symmetry,
            "cs_clamp": self.cs_clamp,
            "workers": self.workers,
            "output": {"path": self.output_path, "format": self.output_format},
        }
