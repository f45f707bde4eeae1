"""
Report emission: CSV and sorted-key JSON with no timestamps, so that two
runs with the same request and seed produce identical files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import List

from greenkernel.convergence.report import json_safe
from greenkernel.reproductions.base import ReproductionOutcome

logger = logging.getLogger(__name__)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(json_safe(value), sort_keys=True)
    return str(value)


def write_table(rows: List[dict], path: Path) -> Path:
    columns = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(key)) for key in columns])
    return path


def write_outcome(outcome: ReproductionOutcome, out_dir) -> List[Path]:
    """
    Write ``<name>.csv``/``<name>.json`` per report (``<name>-<key>.*`` when
    there are several), ``<name>-<table>.csv`` per table and
    ``<name>-summary.json``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    single = len(outcome.reports) == 1
    for key, report in outcome.reports.items():
        stem = outcome.name if single else f"{outcome.name}-{key}"
        written.append(report.to_csv(out / f"{stem}.csv"))
        written.append(report.to_json(out / f"{stem}.json"))

    for table, rows in outcome.tables.items():
        written.append(write_table(rows, out / f"{outcome.name}-{table}.csv"))

    summary = out / f"{outcome.name}-summary.json"
    summary.write_text(json.dumps(json_safe(outcome.summary), sort_keys=True, indent=2) + "\n")
    written.append(summary)

    logger.info(f"{outcome.name}: wrote {len(written)} files to {out}")
    return written
