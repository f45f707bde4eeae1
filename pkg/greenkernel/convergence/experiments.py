"""
Measured decay curves.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List

import numpy as np

from greenkernel.exceptions import PreconditionError
from greenkernel.geometry.domains import Disk, PerforatedDisk, SlitDomain
from greenkernel.mfs_solver import solve_small_holes
from greenkernel.wos_oracle import WosParams, estimate_green_2d

logger = logging.getLogger(__name__)


@dataclass
class DecayRow:
    delta: float
    estimate: float
    std_error: float
    included: bool


@dataclass
class SlitDecayResult:
    """Fit log g = log C + alpha log delta over the positive estimates."""

    C: float
    alpha: float
    rows: List[DecayRow] = field(default_factory=list)

    @property
    def excluded(self) -> bool:
        return any(not row.included for row in self.rows)

    @property
    def decreasing(self) -> bool:
        values = [row.estimate for row in self.rows]
        return all(b < a for a, b in zip(values, values[1:]))

    def as_dict(self) -> dict:
        return {
            "C": self.C,
            "alpha": self.alpha,
            "excluded": self.excluded,
            "rows": [asdict(row) for row in self.rows],
        }


def slit_domain(delta: float, ambient_radius: float = 4.0) -> SlitDomain:
    """D(0, 4) minus the segment [delta, 1]."""
    return SlitDomain(Disk(0j, ambient_radius), ((complex(delta), 1.0 + 0j),))


def slit_decay_experiment(deltas, w: complex = -3.0, wos: WosParams = None) -> SlitDecayResult:
    """
    g(0, w) for the slit domains of each delta, estimated by walk on spheres,
    with a least-squares power-law fit.
    """
    deltas = [float(d) for d in deltas]
    if not deltas or any(not 0 < d <= 0.5 for d in deltas):
        raise PreconditionError("deltas must lie in (0, 1/2]")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise PreconditionError("deltas must be strictly decreasing")
    wos = wos or WosParams()

    rows = []
    for delta in deltas:
        result = estimate_green_2d(slit_domain(delta), 0j, w, wos)
        rows.append(DecayRow(delta, result.estimate, result.std_error, result.estimate > 0))
        logger.info(f"slit decay: delta {delta:.6g}, g {result.estimate:.6g} +/- {result.std_error:.2g}")

    used = [row for row in rows if row.included]
    if any(not row.included for row in rows):
        logger.warning(f"{len(rows) - len(used)} non-positive estimates excluded from the fit")
    if len(used) < 2:
        return SlitDecayResult(math.nan, math.nan, rows)
    alpha, log_c = np.polyfit(np.log([r.delta for r in used]), np.log([r.estimate for r in used]), 1)
    return SlitDecayResult(float(math.exp(log_c)), float(alpha), rows)


def pointwise_limit_experiment(ambient: Disk, centers, log_radii, z: complex, w: complex) -> List[dict]:
    """
    g(z, w) on the disk with holes of each radius, next to the disk's own value;
    the values approach the disk's Green's function as the radius shrinks.
    """
    rows = []
    reference = solve_small_holes(PerforatedDisk(ambient, tuple(centers), -math.inf), w)(z)
    for log_radius in log_radii:
        value = solve_small_holes(PerforatedDisk(ambient, tuple(centers), log_radius), w)(z)
        rows.append({"log_radius": float(log_radius), "value": value, "disk_value": reference})
    return rows
