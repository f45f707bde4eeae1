"""
Deterministic point sets: square nets, sphere and shell samples.
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc


@dataclass(frozen=True)
class AnnularRegion:
    """Open annular region r_inner < |z - center| < r_outer."""

    center: complex
    r_inner: float
    r_outer: float

    def contains(self, z) -> np.ndarray:
        r = np.abs(np.asarray(z, dtype=complex) - self.center)
        return (r > self.r_inner) & (r < self.r_outer)

    @property
    def empty(self) -> bool:
        return self.r_outer <= self.r_inner


def net_points(spacing: float, region: AnnularRegion) -> List[complex]:
    """
    Square grid points of pitch spacing/sqrt(2) lying in the region.

    Ordered row-major (rows by increasing imaginary part, then real part).
    Every point of the region lies within ``spacing`` of an output point.
    """
    if spacing <= 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    if region.empty:
        return []

    pitch = spacing / math.sqrt(2.0)
    count = int(math.ceil(region.r_outer / pitch))
    ticks = pitch * np.arange(-count, count + 1)
    xs, ys = np.meshgrid(ticks, ticks)  # rows share y
    grid = region.center + (xs + 1j * ys).ravel()
    return [complex(z) for z in grid[region.contains(grid)]]


def fibonacci_sphere(m: int) -> np.ndarray:
    """m nearly uniform unit vectors, shape (m, 3)."""
    i = np.arange(m) + 0.5
    z = 1.0 - 2.0 * i / m
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * np.arange(m)
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def shell_sequence(n: int, r_inner: float, r_outer: float) -> np.ndarray:
    """
    First n points of an unscrambled Halton sequence mapped into the shell
    r_inner <= |x| <= r_outer; the sequence is dense in the shell as n grows.
    """
    sampler = qmc.Halton(d=3, scramble=False)
    sampler.fast_forward(1)
    u = sampler.random(n)
    radius = r_inner + (r_outer - r_inner) * u[:, 0]
    z = 2.0 * u[:, 1] - 1.0
    phi = 2.0 * np.pi * u[:, 2]
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    direction = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    return radius[:, None] * direction


def shell_probes(r_inner: float, r_outer: float, layers: int = 9, per_layer: int = 2000) -> np.ndarray:
    radii = np.linspace(r_inner, r_outer, layers)
    unit = fibonacci_sphere(per_layer)
    return np.concatenate([r * unit for r in radii])


def planar_halton(n: int, bounds, seed: int = 0) -> np.ndarray:
    """n scrambled Halton points in the rectangle (xmin, xmax, ymin, ymax)."""
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    u = sampler.random(n)
    xmin, xmax, ymin, ymax = bounds
    return (xmin + (xmax - xmin) * u[:, 0]) + 1j * (ymin + (ymax - ymin) * u[:, 1])


def covering_radius(points, probes) -> float:
    """max over probes of the distance to the nearest point."""
    points = np.asarray(points)
    probes = np.asarray(probes)
    if np.iscomplexobj(points) or np.iscomplexobj(probes):
        points = np.column_stack([np.real(points), np.imag(points)])
        probes = np.column_stack([np.real(probes), np.imag(probes)])
    if len(points) == 0:
        return math.inf
    dist, _ = cKDTree(points).query(probes)
    return float(dist.max())
