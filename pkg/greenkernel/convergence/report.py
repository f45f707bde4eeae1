"""
Per-n discrepancy reports and their CSV/JSON serialization.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from greenkernel.config import BaseConfig
from greenkernel.convergence.grids import GridSpec
from greenkernel.evaluators import select_evaluator
from greenkernel.geometry.domains import component_count, dimension

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "sup_two_sided", "one_sided_M_n", "compact_sup", "components", "err")


@dataclass
class ReportRow:
    n: int
    sup_two_sided: float
    one_sided_M_n: float
    compact_sup: Optional[float]
    components: int
    err: float

    def as_dict(self) -> dict:
        return {column: getattr(self, column) for column in CSV_COLUMNS}


@dataclass
class ConvergenceReport:
    name: str
    rows: List[ReportRow] = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    methods: dict = field(default_factory=dict)

    def row(self, n: int) -> ReportRow:
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(n)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "rows": [row.as_dict() for row in self.rows],
            "grid": self.grid,
            "methods": self.methods,
        }

    def to_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in self.rows:
                writer.writerow(["" if v is None else repr(v) for v in (getattr(row, c) for c in CSV_COLUMNS)])
        return path

    def to_json(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(json_safe(self.as_dict()), sort_keys=True, indent=2) + "\n")
        return path


def json_safe(obj):
    """Replace non-finite floats by strings so the JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    return obj


def _components(d) -> int:
    # the tube reaches the outer sphere, so its boundary is connected
    return component_count(d) if dimension(d) == 2 else 1


def build_report(
    seq,
    pitch: float = BaseConfig.GRID_RESOLUTION,
    compact: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    probes=None,
    limit_method: Optional[str] = None,
    method: Optional[str] = None,
    mfs_params=None,
    wos_params=None,
) -> ConvergenceReport:
    """
    Rows of sup |g - g_n|, sup (g - g_n) and the compact-subset sup.

    Grids cover both domains and add boundary-adaptive points; when either
    evaluator is stochastic the values are taken at ``probes`` instead.
    """
    g = select_evaluator(seq.limit, seq.pole, limit_method, mfs_params, wos_params)
    report = ConvergenceReport(seq.name, methods={"limit": g.method})

    for n, domain in seq.domains():
        g_n = select_evaluator(domain, seq.pole, method, mfs_params, wos_params)
        if g.method == "wos" or g_n.method == "wos":
            if probes is None:
                raise ValueError("probe points are required for stochastic evaluators")
            pts = np.asarray(probes, dtype=complex if dimension(domain) == 2 else float)
            report.grid = {"grid": "probe", "points": int(len(pts))}
        else:
            grid = GridSpec.covering([seq.limit, domain], pitch=pitch)
            pts = grid.points(seq.pole, [seq.limit, domain])
            report.grid = {"grid": "uniform+boundary", **grid.metadata()}

        diff = g(pts) - g_n(pts)
        compact_sup = None
        if compact is not None:
            mask = compact(pts)
            compact_sup = float(np.max(np.abs(diff[mask]))) if np.any(mask) else None
        row = ReportRow(
            n=n,
            sup_two_sided=float(np.max(np.abs(diff))),
            one_sided_M_n=float(np.max(diff)),
            compact_sup=compact_sup,
            components=_components(domain),
            err=float(g.error_bound + g_n.error_bound),
        )
        report.rows.append(row)
        report.methods[str(n)] = g_n.method
        logger.info(
            f"{seq.name} n={n}: sup {row.sup_two_sided:.4g}, M_n {row.one_sided_M_n:.4g}, "
            f"compact {compact_sup}, err {row.err:.2g}"
        )
    return report
