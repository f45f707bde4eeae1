"""
Kernel convergence checks, sup-norm discrepancies and pointwise bounds.

Checks return reports or violation lists; they do not raise on failure.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from greenkernel.closed_form import green_slit_ray
from greenkernel.config import BaseConfig
from greenkernel.convergence.grids import GridSpec
from greenkernel.evaluators import select_evaluator
from greenkernel.exceptions import NotSimplyConnectedError
from greenkernel.geometry.distance import boundary_query, boundary_sample_array, contains
from greenkernel.geometry.domains import CircleDomain, Disk, bounding_box, dimension, outer_extent
from greenkernel.geometry.sampling import planar_halton

logger = logging.getLogger(__name__)

KOEBE_RANGE = 1.0 / 128.0
RATE_TOLERANCE = 1e-9
BOUNDARY_SAMPLES = {2: 256, 3: 512}


def _evaluator_tolerance(*evaluators) -> float:
    return sum(getattr(g, "error_bound", 0.0) for g in evaluators) + 1e-12


## ---------------------------- ##
##       Kernel convergence      ##
## ---------------------------- ##

@dataclass
class KernelCheckRow:
    n: int
    interior_inside: int
    interior_total: int
    boundary_distance: float
    boundary_rate: Optional[float]
    boundary_ok: bool


@dataclass
class KernelCheckResult:
    resolution: float
    threshold: Optional[int]
    rows: List[KernelCheckRow] = field(default_factory=list)

    @property
    def interior_ok(self) -> bool:
        return self.threshold is not None

    @property
    def boundary_ok(self) -> bool:
        return bool(self.rows) and all(row.boundary_ok for row in self.rows)

    @property
    def passed(self) -> bool:
        return self.interior_ok and self.boundary_ok

    def as_dict(self) -> dict:
        return {
            "resolution": self.resolution,
            "threshold": self.threshold,
            "passed": self.passed,
            "rows": [asdict(row) for row in self.rows],
        }


def _interior_grid(limit, resolution):
    bounds = bounding_box(limit)
    pitch = resolution
    if dimension(limit) == 3:
        pitch = max(resolution, 2.0 * outer_extent(limit)[1] / 40.0)
    pts = GridSpec(bounds=bounds, pitch=pitch, boundary_offsets=()).uniform()
    dist, _, inside = boundary_query(limit, pts)
    return pts[inside & (dist >= resolution)]


def kernel_check(s, resolution: float = BaseConfig.GRID_RESOLUTION) -> KernelCheckResult:
    """
    (a) threshold index from which every interior grid point of the limit
    (distance >= resolution from its boundary) lies in Omega_n;
    (b) per-n distance from boundary samples of the limit to the boundary of
    Omega_n, within the declared rate, or below ``resolution`` at the largest n
    when no rate is declared.
    """
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    interior = _interior_grid(s.limit, resolution)
    samples, _ = boundary_sample_array(s.limit, BOUNDARY_SAMPLES[dimension(s.limit)])

    rows = []
    all_inside = []
    for n, domain in s.domains():
        inside = contains(domain, interior)
        all_inside.append(bool(inside.all()))
        dist = float(boundary_query(domain, samples)[0].max())
        rate = s.boundary_rate(n) if s.boundary_rate is not None else None
        if rate is not None:
            ok = dist <= rate + RATE_TOLERANCE
        else:
            ok = n != s.index_set[-1] or dist < resolution
        rows.append(KernelCheckRow(n, int(inside.sum()), int(inside.size), dist, rate, bool(ok)))

    threshold = None
    for i in range(len(all_inside) - 1, -1, -1):
        if not all_inside[i]:
            break
        threshold = s.index_set[i]

    result = KernelCheckResult(resolution, threshold, rows)
    logger.info(f"kernel check {s.name}: threshold {threshold}, passed {result.passed}")
    return result


## ---------------------------- ##
##        Discrepancies          ##
## ---------------------------- ##

def _grid_points(grid: GridSpec, gA, gB):
    domains = [g.domain for g in (gA, gB) if getattr(g, "domain", None) is not None]
    return grid.points(gA.pole, domains)


def sup_discrepancy(gA, gB, grid: GridSpec):
    """(sup |gA - gB|, argmax point) over the grid; both evaluators zero-extended."""
    pts = _grid_points(grid, gA, gB)
    diff = np.abs(gA(pts) - gB(pts))
    k = int(np.argmax(diff))
    return float(diff[k]), pts[k]


def one_sided_sup(g_limit, g_n, grid: GridSpec) -> float:
    """Signed sup of g_limit - g_n over the grid."""
    pts = _grid_points(grid, g_limit, g_n)
    return float(np.max(g_limit(pts) - g_n(pts)))


## ---------------------------- ##
##        Pointwise bounds       ##
## ---------------------------- ##

def _simply_connected(d) -> bool:
    return isinstance(d, Disk) or (isinstance(d, CircleDomain) and not d.holes)


def koebe_bound_check(d, w, samples: int = 1000, evaluator=None) -> List[dict]:
    """
    Points within 1/128 of the boundary where g(z) > sqrt(128 dist(z)) + tolerance.

    Sample points sit on radial segments from boundary samples toward the
    center, at depths spread over (0, 1/128].
    """
    if not _simply_connected(d):
        raise NotSimplyConnectedError(f"{type(d).__name__} is not simply connected")
    g = evaluator or select_evaluator(d, w)
    center = outer_extent(d)[0]
    boundary, _ = boundary_sample_array(d, samples)
    depth = KOEBE_RANGE * ((np.arange(samples) % 16) + 1) / 16.0
    inward = (center - boundary) / np.abs(center - boundary)
    pts = boundary + depth * inward
    dist, _, inside = boundary_query(d, pts)
    use = inside & (dist > 0) & (dist <= KOEBE_RANGE) & (np.abs(pts - complex(w)) > 0)
    pts, dist = pts[use], dist[use]

    values = g(pts)
    bound = np.sqrt(128.0 * dist)
    tol = _evaluator_tolerance(g)
    bad = np.flatnonzero(values > bound + tol)
    logger.info(f"Koebe bound: {use.sum()} samples, {bad.size} violations")
    return [
        {"point": [pts[k].real, pts[k].imag], "value": float(values[k]), "bound": float(bound[k])}
        for k in bad
    ]


def symmetrization_check(d, w, samples: int = 1000, evaluator=None, seed: int = 0) -> List[dict]:
    """Points where g(z, w) > h_delta(|z - w|) + tolerance, delta = dist(w, boundary)."""
    g = evaluator or select_evaluator(d, w)
    w = complex(w)
    delta = float(boundary_query(d, [w])[0][0])
    candidates = planar_halton(4 * samples, bounding_box(d), seed=seed)
    keep = contains(d, candidates) & (np.abs(candidates - w) >= 1e-3)
    pts = candidates[keep][:samples]

    values = g(pts)
    majorant = green_slit_ray(delta, np.abs(pts - w).astype(complex))
    tol = _evaluator_tolerance(g)
    bad = np.flatnonzero(values > majorant + tol)
    logger.info(f"symmetrization bound: {pts.size} samples, {bad.size} violations")
    return [
        {"point": [pts[k].real, pts[k].imag], "value": float(values[k]), "bound": float(majorant[k])}
        for k in bad
    ]


def monotonicity_check(inner, outer, w, grid: GridSpec, inner_evaluator=None, outer_evaluator=None) -> List[dict]:
    """Grid points where g_inner > g_outer + combined tolerance (inner is a subdomain of outer)."""
    g_in = inner_evaluator or select_evaluator(inner, w)
    g_out = outer_evaluator or select_evaluator(outer, w)
    pts = grid.points(g_in.pole, [inner, outer])
    diff = g_in(pts) - g_out(pts)
    tol = _evaluator_tolerance(g_in, g_out)
    bad = np.flatnonzero(diff > tol)
    out = []
    for k in bad:
        p = pts[k]
        point = [p.real, p.imag] if dimension(inner) == 2 else [float(c) for c in p]
        out.append({"point": point, "excess": float(diff[k])})
    return out


def boundary_envelope(n: int, pole: float = 0.5, radius: float = 0.3) -> float:
    """
    Maximum-principle bound for g_D - g_{A(1/n, 1)} on |z| >= radius:
    B_n log(1/radius)/log n with B_n the largest disk Green's value on |z| = 1/n.
    """
    inner = 1.0 / n
    if inner >= pole:
        return math.inf
    b = math.log((1.0 - inner * pole) / (pole - inner))
    return b * math.log(1.0 / radius) / math.log(n)
