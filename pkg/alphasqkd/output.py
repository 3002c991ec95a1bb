"""
Writing rows as CSV or JSON.
"""

import csv
import json
import logging
import sys

from . import (
    __version__,
    utils,
)

log = logging.getLogger(__name__)


def _csv_value(value):
    if isinstance(value, (list, tuple)):
        return ";".join(value)
    return utils.format_number(value)


def _json_value(value):
    if isinstance(value, (list, tuple)):
        return list(value)
    if value is None or isinstance(value, (str, bool, int)):
        return value
    return float(utils.format_number(value))


def write_csv(handle, columns, rows):
    """
    Write rows as CSV with a header row, numbers in 12 significant digits.

    @param handle: Text stream to write to.
    @type  handle: C{io.TextIOBase}

    @param columns: Column names.
    @type  columns: C{tuple} of C{str}

    @param rows: Rows keyed by column name; missing columns stay empty.
    @type  rows: C{list} of C{dict}
    """
    writer = csv.DictWriter(handle, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({column: _csv_value(row.get(column)) for column in columns})


def write_json(handle, columns, rows, metadata):
    """
    Write rows as a JSON document C{{"metadata": ..., "rows": [...]}}.

    @param handle: Text stream to write to.
    @type  handle: C{io.TextIOBase}

    @param columns: Column names, in output order.
    @type  columns: C{tuple} of C{str}

    @param rows: Rows keyed by column name.
    @type  rows: C{list} of C{dict}

    @param metadata: Run description.
    @type  metadata: C{dict}
    """
    document = {
        "metadata": metadata,
        "rows": [{column: _json_value(row.get(column)) for column in columns} for row in rows],
    }
    handle.write(json.dumps(document, indent=2))
    handle.write("\n")


def metadata(cfg):
    """
    @param cfg: Run settings.
    @type  cfg: L{SweepConfig}

    @return: Tool version, settings and seed of the run.
    @rtype:  C{dict}
    """
    return {"version": __version__, "config": cfg.as_dict(), "seed": cfg.seed}


def write_output(cfg, columns, rows):
    """
    Write the rows of a run to the configured destination.

    @param cfg: Run settings.
    @type  cfg: L{SweepConfig}

    @param columns: Column names.
    @type  columns: C{tuple} of C{str}

    @param rows: Rows keyed by column name.
    @type  rows: C{list} of C{dict}
    """
    if cfg.output_path is None:
        _write(sys.stdout, cfg, columns, rows)
        return
    with open(cfg.output_path, "w", newline="", encoding="utf-8") as handle:
        _write(handle, cfg, columns, rows)
    log.info("Wrote %d rows to %s", len(rows), cfg.output_path)


def _write(handle, cfg, columns, rows):
    if cfg.output_format == "json":
        write_json(handle, columns, rows, metadata(cfg))
    else:
        write_csv(handle, columns, rows)
