"""
Fundamental-solutions solver for Green's functions of bounded planar domains
with circle and trig-curve boundary components.

g(z) = -log|z - w| + h(z), with h(z) = c0 + sum_j c_j log|z - s_j| fitted by
least squares to h = log|. - w| on the boundary.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.spatial import cKDTree

from greenkernel.closed_form import green_disk
from greenkernel.config import BaseConfig
from greenkernel.exceptions import IllConditionedGeometryError, PoleError, PreconditionError
from greenkernel.geometry.distance import contains
from greenkernel.geometry.domains import Annulus, Circle, CircleDomain, Disk, PerforatedDisk

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MfsParams:
    charges_per_component: int = BaseConfig.MFS_CHARGES
    collocation_factor: int = BaseConfig.MFS_COLLOCATION_FACTOR
    hole_shrink: float = BaseConfig.MFS_HOLE_SHRINK
    outer_dilate: float = BaseConfig.MFS_OUTER_DILATE
    sv_cutoff: float = BaseConfig.MFS_SV_CUTOFF
    max_residual: float = BaseConfig.MFS_MAX_RESIDUAL

    def __post_init__(self):
        if self.charges_per_component < 1 or self.collocation_factor < 1:
            raise PreconditionError("charge and collocation counts must be positive")
        if not 0 < self.hole_shrink < 1:
            raise PreconditionError(f"hole_shrink must lie in (0, 1), got {self.hole_shrink}")
        if not self.outer_dilate > 1:
            raise PreconditionError(f"outer_dilate must exceed 1, got {self.outer_dilate}")
        if not self.sv_cutoff > 0:
            raise PreconditionError("sv_cutoff must be positive")

    @property
    def collocation_per_component(self) -> int:
        return self.collocation_factor * self.charges_per_component


@dataclass(frozen=True)
class GreenSolution:
    """Fitted harmonic corrector plus its boundary certificate."""

    domain: object
    pole: complex
    charges: np.ndarray
    coefficients: np.ndarray
    constant: float
    boundary_residual: float
    component_residuals: Tuple[float, ...]
    rank: int
    params: MfsParams = field(default_factory=MfsParams)

    def corrector(self, z: np.ndarray) -> np.ndarray:
        out = np.full(z.shape, self.constant, dtype=float)
        for start in range(0, z.size, 4096):
            zc = z[start:start + 4096]
            out[start:start + 4096] += np.log(np.abs(zc[:, None] - self.charges[None, :])) @ self.coefficients
        return out

    def raw(self, z) -> np.ndarray:
        """-log|z - w| + h(z) without zero extension or clamping."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return -np.log(np.abs(z - self.pole)) + self.corrector(z)


def _curves(d):
    if isinstance(d, Disk):
        return [Circle(d.center, d.radius)]
    if isinstance(d, Annulus):
        return [Circle(d.center, d.r_outer), Circle(d.center, d.r_inner)]
    if isinstance(d, CircleDomain):
        return list(d.curves())
    raise PreconditionError(
        f"the fundamental-solutions solver handles Disk, Annulus and CircleDomain, got {type(d).__name__}"
    )


def _curve_points(curve, count, offset=0.0):
    theta = 2.0 * np.pi * (np.arange(count) + offset) / count
    return curve.points(theta)


def solve_green(d, w: complex, p: MfsParams = None) -> GreenSolution:
    """
    Fit the corrector and certify it on a boundary grid four times denser
    than the collocation grid.

    :raises PreconditionError: pole outside the domain or unsupported domain.
    :raises IllConditionedGeometryError: residual above ``p.max_residual``.
    """
    p = p or MfsParams()
    curves = _curves(d)
    w = complex(w)
    if not contains(d, [w])[0]:
        raise PreconditionError(f"pole {w} is not inside the domain")

    charges, colloc = [], []
    for i, curve in enumerate(curves):
        factor = p.outer_dilate if i == 0 else p.hole_shrink
        ring = _curve_points(curve, p.charges_per_component)
        charges.append(curve.center + factor * (ring - curve.center))
        colloc.append(_curve_points(curve, p.collocation_per_component))
    charges = np.concatenate(charges)
    colloc = np.concatenate(colloc)

    A = np.empty((colloc.size, charges.size + 1))
    A[:, 0] = 1.0
    A[:, 1:] = np.log(np.abs(colloc[:, None] - charges[None, :]))
    b = np.log(np.abs(colloc - w))
    coef, _, rank, _ = scipy.linalg.lstsq(A, b, cond=p.sv_cutoff, lapack_driver="gelsd")

    solution = GreenSolution(
        domain=d,
        pole=w,
        charges=charges,
        coefficients=coef[1:],
        constant=float(coef[0]),
        boundary_residual=0.0,
        component_residuals=(),
        rank=int(rank),
        params=p,
    )
    per_component = []
    check_count = 4 * p.collocation_per_component
    for curve in curves:
        check = _curve_points(curve, check_count, offset=0.5)
        per_component.append(float(np.max(np.abs(solution.raw(check)))))
    residual = max(per_component)
    solution = replace(solution, boundary_residual=residual, component_residuals=tuple(per_component))

    logger.debug(
        f"MFS solve: {len(curves)} components, {charges.size} charges, rank {rank}, residual {residual:.3e}"
    )
    if residual > p.max_residual:
        raise IllConditionedGeometryError(residual, p.max_residual)
    return solution


def evaluate(s, z):
    """max(0, raw value) inside the domain, 0 outside and on the boundary."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z == s.pole):
        raise PoleError(f"evaluation at the pole {s.pole}")
    inside = contains(s.domain, z)
    values = np.zeros(z.shape)
    if np.any(inside):
        values[inside] = np.maximum(s.raw(z[inside]), 0.0)
    return float(values[0]) if scalar else values


def residual_report(s) -> Tuple[float, list]:
    """(max residual, per-component residuals); bounds the interior error by the maximum principle."""
    return s.boundary_residual, list(s.component_residuals)


## ---------------------------- ##
##      Tiny holes in a disk     ##
## ---------------------------- ##

@dataclass(frozen=True)
class SmallHoleSolution:
    """
    g(z) = g_D(z, w) - sum_k q_k g_D(z, a_k) for a disk D with tiny holes.

    One charge per hole, built from the disk's own Green's function so that
    the outer boundary condition holds exactly. The error is O(hole radius).
    """

    domain: PerforatedDisk
    pole: complex
    charges: np.ndarray
    error_bound: float

    def raw(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        disk = self.domain.ambient
        out = green_disk(disk.center, disk.radius, z, self.pole)
        if not np.any(self.charges):
            return out
        c, R = disk.center, disk.radius
        centers = np.asarray(self.domain.centers, dtype=complex)
        with np.errstate(divide="ignore"):
            for start in range(0, z.size, 1024):
                zc = z[start:start + 1024, None]
                num = R * R - (zc - c) * np.conj(centers - c)[None, :]
                kernel = np.log(np.abs(num / (R * (zc - centers[None, :]))))
                out[start:start + 1024] -= kernel @ self.charges
        return out

    def __call__(self, z):
        scalar = np.ndim(z) == 0
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if np.any(z == self.pole):
            raise PoleError(f"evaluation at the pole {self.pole}")
        inside = contains(self.domain, z)
        values = np.zeros(z.shape)
        if np.any(inside):
            values[inside] = np.maximum(self.raw(z[inside]), 0.0)
        return float(values[0]) if scalar else values


def _disk_green_matrix(center, R, points):
    u = points - center
    diff = points[:, None] - points[None, :]
    np.fill_diagonal(diff, 1.0)
    num = R * R - u[:, None] * np.conj(u[None, :])
    return np.log(np.abs(num / (R * diff)))


def solve_small_holes(d: PerforatedDisk, w: complex) -> SmallHoleSolution:
    """
    Charges q solving M q = g_D(a, w) with the logarithmic self term
    M_kk = -log_radius + log((R^2 - |a_k - c|^2)/R) and M_kj = g_D(a_k, a_j).
    """
    w = complex(w)
    if not contains(d, [w])[0]:
        raise PreconditionError(f"pole {w} is not inside the domain")
    centers = np.asarray(d.centers, dtype=complex)
    n = centers.size
    if n == 0 or d.punctured:
        logger.debug("small-hole solve: no holes of positive radius, disk Green's function is exact")
        return SmallHoleSolution(d, w, np.zeros(n), 0.0)

    c, R = d.ambient.center, d.ambient.radius
    M = _disk_green_matrix(c, R, centers)
    M[np.diag_indices(n)] = -d.log_radius + np.log((R * R - np.abs(centers - c) ** 2) / R)
    rhs = green_disk(c, R, centers, w)
    charges = scipy.linalg.solve(M, rhs, assume_a="sym")

    # first-order bound on the variation of the regular part across a hole
    gaps = [R - np.abs(centers - c), np.abs(centers - w)]
    if n > 1:
        gaps.append(np.full(n, _min_separation(centers)))
    gap = float(min(np.min(g) for g in gaps))
    error = d.hole_radius * 2.0 * (1.0 + float(np.sum(np.abs(charges)))) / gap

    logger.debug(f"small-hole solve: {n} holes, log radius {d.log_radius:.4g}, charge sum {charges.sum():.4g}")
    return SmallHoleSolution(d, w, charges, error)


def _min_separation(centers: np.ndarray) -> float:
    xy = np.column_stack([centers.real, centers.imag])
    dist, _ = cKDTree(xy).query(xy, k=2)
    return float(dist[:, 1].min())
