"""
Main program.
"""

import json
import logging
import sys

from . import (
    output,
    sweep,
)
from .config import MODE_PRESET
from .errors import ValidityError
from .presets import get_preset

log = logging.getLogger(__name__)


def write_preset(cfg):
    """
    Write the settings of the preset named in L{cfg} as a JSON document.

    @param cfg: Run settings with mode C{'preset'}.
    @type  cfg: L{SweepConfig}
    """
    document = json.dumps(get_preset(cfg.preset).as_dict(), indent=2) + "\n"
    if cfg.output_path is None:
        sys.stdout.write(document)
        return
    with open(cfg.output_path, "w", encoding="utf-8") as handle:
        handle.write(document)
    log.info("Wrote preset %s to %s", cfg.preset, cfg.output_path)


def run(cfg):
    """
    Validate the settings and perform the run.

    @param cfg: Run settings.
    @type  cfg: L{SweepConfig}

    @return: Exit status, 0 if no validity error occurred.
    @rtype:  C{int}
    """
    errors = cfg.validate()
    if errors:
        for error in errors:
            log.error("%s", error)
        return 1

    if cfg.mode == MODE_PRESET:
        write_preset(cfg)
        return 0

    log.info("Running mode %s", cfg.mode)
    try:
        columns, rows = sweep.evaluate(cfg)
    except ValidityError as e:
        log.error("Run aborted: %s", e)
        return 1
    output.write_output(cfg, columns, rows)
    return 0
