import click
import logging
import sys

from openttd_helpers import click_helper
from openttd_helpers.logging_helper import click_logging
from openttd_helpers.sentry_helper import click_sentry

from . import main
from .bound import READINGS
from .config import (
    FORMATS,
    MODES,
    SweepConfig,
)
from .presets import PRESETS

log = logging.getLogger(__name__)


@click_helper.command()
@click_logging  # Should always be on top, as it initializes the logging
@click_sentry
@click.argument("mode", type=click.Choice(MODES, case_sensitive=False), required=False)
@click.option("--config", "config_path", help="JSON file with the settings of the run.", metavar="PATH")
@click.option("--preset", help="Preset to write in mode 'preset'.", type=click.Choice(sorted(PRESETS)))
@click.option("--alpha", help="Amplitude of |0> in the signal state |a>.", type=float)
@click.option("--alpha-min", help="Start of the alpha range.", type=float)
@click.option("--alpha-max", help="End of the alpha range.", type=float)
@click.option("--alpha-step", help="Step of the alpha range.", type=float)
@click.option("--qf", help="Forward channel noise, or start of its range.", type=float)
@click.option("--qf-max", help="End of the forward noise range.", type=float)
@click.option("--qf-step", help="Step of the forward noise range.", type=float)
@click.option("--qr", help="Reverse channel noise, or start of its range.", type=float)
@click.option("--qr-max", help="End of the reverse noise range.", type=float)
@click.option("--qr-step", help="Step of the reverse noise range.", type=float)
@click.option("--qx", help="Loop noise, or start of its range.", type=float)
@click.option("--qx-max", help="End of the loop noise range.", type=float)
@click.option("--qx-step", help="Step of the loop noise range.", type=float)
@click.option("--tie-loop/--no-tie-loop", help="Loop noise follows the reverse noise.", default=None)
@click.option("--p-override", help="POVM scale instead of 1/(1+alpha).", type=float)
@click.option("--grid-points", help="Grid points per hidden parameter.", type=int)
@click.option("--refine-passes", help="Refinement passes around the grid minimum.", type=int)
@click.option("--seed", help="Seed of the first random attack.", type=int)
@click.option("--attacks", help="Number of random attacks in mode 'soundness'.", type=int)
@click.option("--d-e", help="Ancilla dimension of the random attacks.", type=int)
@click.option("--symmetry", help="Reading of the statistics by the bound.", type=click.Choice(READINGS))
@click.option("--cs-clamp/--no-cs-clamp", help="Clamp Re<e0|e3> to its Cauchy-Schwarz range.", default=None)
@click.option("--workers", help="Number of worker processes (default: one per core).", type=int)
@click.option("--output", help="File to write (default: standard output).", metavar="PATH")
@click.option("--format", "output_format", help="Output format.", type=click.Choice(FORMATS, case_sensitive=False))
def run(mode, config_path, **flags):
    """
    Key-rate bounds of semi-quantum key distribution with a tunable signal state.
    """
    cfg = SweepConfig()
    if config_path is not None:
        cfg.load_settings_from_json(config_path)
    flags["mode"] = None if mode is None else mode.lower()
    if flags["output_format"] is not None:
        flags["output_format"] = flags["output_format"].lower()
    cfg.apply_overrides(**flags)
    sys.exit(main.run(cfg))


if __name__ == "__main__":
    run()
