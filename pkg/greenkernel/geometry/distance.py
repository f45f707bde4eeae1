"""
Distance to the boundary, membership and boundary sampling for every domain variant.

All queries are vectorized: planar points are complex arrays, spatial points
are arrays of shape (N, 3).
"""

import logging
from functools import lru_cache
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy.spatial import cKDTree

from greenkernel.exceptions import PreconditionError
from greenkernel.geometry.domains import (
    Annulus,
    Ball3,
    Circle,
    CircleDomain,
    Disk,
    PerforatedDisk,
    SlitDomain,
    TrigCurve,
    TubeDomain3,
    dimension,
)
from greenkernel.geometry.points import Point3
from greenkernel.geometry.sampling import fibonacci_sphere

logger = logging.getLogger(__name__)

TRIG_SAMPLES = 4096
TRIG_BISECTIONS = 40
_CHUNK = 256


class BoundaryDistance(NamedTuple):
    dist: float
    nearest: object
    inside: bool


## ---------------------------- ##
##        Curve primitives       ##
## ---------------------------- ##

def circle_distance(z: np.ndarray, center: complex, radius: float):
    u = z - center
    r = np.abs(u)
    direction = np.where(r > 0, u / np.where(r > 0, r, 1.0), 1.0)
    return np.abs(r - radius), center + radius * direction


def segment_distance(z: np.ndarray, p: complex, q: complex):
    d = q - p
    t = np.clip(((z - p) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    nearest = p + t * d
    return np.abs(z - nearest), nearest


def trig_distance(curve: TrigCurve, z: np.ndarray):
    """Dense parameter sampling followed by bisection on the derivative of the squared distance."""
    theta = np.linspace(0.0, 2.0 * np.pi, TRIG_SAMPLES, endpoint=False)
    step = theta[1]
    samples = curve.points(theta)
    dist = np.empty(z.shape, dtype=float)
    nearest = np.empty(z.shape, dtype=complex)

    for start in range(0, z.size, _CHUNK):
        zc = z[start:start + _CHUNK]
        d2 = np.abs(zc[:, None] - samples[None, :]) ** 2
        k = np.argmin(d2, axis=1)

        def slope(t):
            return 2.0 * (np.conj(curve.points(t) - zc) * curve.tangents(t)).real

        lo, hi = theta[k] - step, theta[k] + step
        bracketed = (slope(lo) <= 0) & (slope(hi) >= 0)
        for _ in range(TRIG_BISECTIONS):
            mid = 0.5 * (lo + hi)
            right = slope(mid) >= 0
            hi = np.where(right, mid, hi)
            lo = np.where(right, lo, mid)

        refined = curve.points(0.5 * (lo + hi))
        refined_d = np.abs(refined - zc)
        sample_d = np.sqrt(d2[np.arange(zc.size), k])
        use = bracketed & (refined_d < sample_d)
        dist[start:start + _CHUNK] = np.where(use, refined_d, sample_d)
        nearest[start:start + _CHUNK] = np.where(use, refined, samples[k])
    return dist, nearest


def curve_distance(curve, z: np.ndarray):
    if isinstance(curve, Circle):
        return circle_distance(z, curve.center, curve.radius)
    return trig_distance(curve, z)


def polyline_distance(x: np.ndarray, vertices: np.ndarray):
    """Distance from points (N, 3) to a polyline; ties go to the earliest segment."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    a, b = vertices[:-1], vertices[1:]
    d = b - a
    length2 = np.maximum(np.einsum("ij,ij->i", d, d), 1e-300)
    dist = np.empty(len(x))
    nearest = np.empty_like(x)
    for start in range(0, len(x), 4096):
        xc = x[start:start + 4096]
        rel = xc[:, None, :] - a[None, :, :]
        t = np.clip(np.einsum("nsk,sk->ns", rel, d) / length2, 0.0, 1.0)
        proj = a[None, :, :] + t[..., None] * d[None, :, :]
        gap = np.linalg.norm(xc[:, None, :] - proj, axis=2)
        k = np.argmin(gap, axis=1)
        rows = np.arange(len(xc))
        dist[start:start + 4096] = gap[rows, k]
        nearest[start:start + 4096] = proj[rows, k]
    return dist, nearest


@lru_cache(maxsize=32)
def _center_tree(d: PerforatedDisk) -> cKDTree:
    arr = np.asarray(d.centers, dtype=complex)
    return cKDTree(np.column_stack([arr.real, arr.imag]))


def nearest_hole(d: PerforatedDisk, z: np.ndarray):
    """(index, distance) of the nearest hole center."""
    dist, idx = _center_tree(d).query(np.column_stack([z.real, z.imag]))
    return idx, dist


## ---------------------------- ##
##        Domain queries         ##
## ---------------------------- ##

def _as_points(d, points):
    if dimension(d) == 2:
        return np.atleast_1d(np.asarray(points, dtype=complex))
    return np.atleast_2d(np.asarray(points, dtype=float))


def boundary_query(d, points) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorized (dist, nearest, inside) for an array of points.

    dist is the Euclidean distance to the boundary, nearest realizes it and
    inside is membership in the open domain.
    """
    z = _as_points(d, points)

    if isinstance(d, Disk):
        dist, nearest = circle_distance(z, d.center, d.radius)
        inside = np.abs(z - d.center) < d.radius
        return dist, nearest, inside

    if isinstance(d, Annulus):
        d_out, n_out = circle_distance(z, d.center, d.r_outer)
        d_in, n_in = circle_distance(z, d.center, d.r_inner)
        r = np.abs(z - d.center)
        inner_wins = d_in < d_out
        return (
            np.where(inner_wins, d_in, d_out),
            np.where(inner_wins, n_in, n_out),
            (r > d.r_inner) & (r < d.r_outer),
        )

    if isinstance(d, CircleDomain):
        dist, nearest = curve_distance(d.outer, z)
        inside = d.outer.contains(z)
        for hole in d.holes:
            dh, nh = curve_distance(hole, z)
            closer = dh < dist
            dist = np.where(closer, dh, dist)
            nearest = np.where(closer, nh, nearest)
            inside &= ~hole.contains(z)
        return dist, nearest, inside & (dist > 0)

    if isinstance(d, SlitDomain):
        dist, nearest = circle_distance(z, d.ambient.center, d.ambient.radius)
        inside = np.abs(z - d.ambient.center) < d.ambient.radius
        for p, q in d.segments:
            ds, ns = segment_distance(z, p, q)
            closer = ds < dist
            dist = np.where(closer, ds, dist)
            nearest = np.where(closer, ns, nearest)
            inside &= ds > 0
        return dist, nearest, inside

    if isinstance(d, PerforatedDisk):
        dist, nearest = circle_distance(z, d.ambient.center, d.ambient.radius)
        inside = np.abs(z - d.ambient.center) < d.ambient.radius
        if d.centers:
            idx, s = nearest_hole(d, z)
            centers = np.asarray(d.centers, dtype=complex)[idx]
            r = d.hole_radius
            dh = np.abs(s - r)
            u = z - centers
            direction = np.where(s > 0, u / np.where(s > 0, s, 1.0), 1.0)
            closer = dh < dist
            dist = np.where(closer, dh, dist)
            nearest = np.where(closer, centers + r * direction, nearest)
            inside &= s > r
        return dist, nearest, inside

    if isinstance(d, Ball3):
        c = d.center.as_array()
        u = z - c
        r = np.linalg.norm(u, axis=1)
        direction = u / np.where(r > 0, r, 1.0)[:, None]
        direction[r == 0] = (1.0, 0.0, 0.0)
        return np.abs(d.radius - r), c + d.radius * direction, r < d.radius

    if isinstance(d, TubeDomain3):
        c = d.ambient.center.as_array()
        u = z - c
        r = np.linalg.norm(u, axis=1)
        direction = u / np.where(r > 0, r, 1.0)[:, None]
        direction[r == 0] = (1.0, 0.0, 0.0)
        d_ball = np.abs(d.ambient.radius - r)
        n_ball = c + d.ambient.radius * direction

        d_poly, q = polyline_distance(z, d.vertices)
        v = z - q
        offset = v / np.where(d_poly > 0, d_poly, 1.0)[:, None]
        n_tube = q + d.tube_radius * offset
        d_tube = np.abs(d_poly - d.tube_radius)

        inside = (r < d.ambient.radius) & (d_poly > d.tube_radius)
        tube_wins = d_tube < d_ball
        dist = np.where(tube_wins, d_tube, d_ball)
        nearest = np.where(tube_wins[:, None], n_tube, n_ball)
        return dist, nearest, inside

    raise PreconditionError(f"unknown domain type {type(d).__name__}")


def contains(d, points) -> np.ndarray:
    return boundary_query(d, points)[2]


def distance_to_boundary(d, p) -> BoundaryDistance:
    """Scalar form of ``boundary_query``."""
    dist, nearest, inside = boundary_query(d, [p] if dimension(d) == 2 else [tuple(p)])
    if dimension(d) == 2:
        return BoundaryDistance(float(dist[0]), complex(nearest[0]), bool(inside[0]))
    return BoundaryDistance(float(dist[0]), Point3(*nearest[0]), bool(inside[0]))


## ---------------------------- ##
##       Boundary samples        ##
## ---------------------------- ##

def _curve_sample(curve, m):
    theta = 2.0 * np.pi * np.arange(m) / m
    return curve.points(theta)


def _circle_sample(center, radius, m):
    return center + radius * np.exp(2j * np.pi * np.arange(m) / m)


def boundary_sample_array(d, m: int):
    """(points, component ids) with ``m`` points per boundary component, outer component first."""
    if m < 1:
        raise PreconditionError(f"boundary_sample needs m >= 1, got {m}")
    if m < 8:
        logger.debug(f"boundary_sample with m={m} below the recommended 8 per component")

    parts: List[np.ndarray] = []
    if isinstance(d, Disk):
        parts = [_circle_sample(d.center, d.radius, m)]
    elif isinstance(d, Annulus):
        parts = [_circle_sample(d.center, d.r_outer, m), _circle_sample(d.center, d.r_inner, m)]
    elif isinstance(d, CircleDomain):
        parts = [_curve_sample(c, m) for c in d.curves()]
    elif isinstance(d, SlitDomain):
        parts = [_circle_sample(d.ambient.center, d.ambient.radius, m)]
        t = np.linspace(0.0, 1.0, m) if m > 1 else np.array([0.5])
        parts += [p + t * (q - p) for p, q in d.segments]
    elif isinstance(d, PerforatedDisk):
        parts = [_circle_sample(d.ambient.center, d.ambient.radius, m)]
        r = d.hole_radius
        parts += [_circle_sample(a, r, m) if r > 0 else np.full(m, a, dtype=complex) for a in d.centers]
    elif isinstance(d, Ball3):
        parts = [d.center.as_array() + d.radius * fibonacci_sphere(m)]
    elif isinstance(d, TubeDomain3):
        # coarse mode: rings of offset points along the polyline
        parts = [d.ambient.center.as_array() + d.ambient.radius * fibonacci_sphere(m)]
        parts.append(_tube_surface_sample(d, m))
    else:
        raise PreconditionError(f"unknown domain type {type(d).__name__}")

    points = np.concatenate(parts)
    ids = np.repeat(np.arange(len(parts)), [len(p) for p in parts])
    return points, ids


def _tube_surface_sample(d: TubeDomain3, m: int) -> np.ndarray:
    verts = d.vertices
    seg = np.diff(verts, axis=0)
    lengths = np.linalg.norm(seg, axis=1)
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    s = cumulative[-1] * (np.arange(m) + 0.5) / m
    k = np.clip(np.searchsorted(cumulative, s, side="right") - 1, 0, len(seg) - 1)
    e = seg[k] / lengths[k][:, None]
    axis = np.eye(3)[np.argmin(np.abs(e), axis=1)]
    u = np.cross(e, axis)
    u /= np.linalg.norm(u, axis=1)[:, None]
    v = np.cross(e, u)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * np.arange(m)
    base = verts[k] + ((s - cumulative[k]) / lengths[k])[:, None] * seg[k]
    return base + d.tube_radius * (np.cos(phi)[:, None] * u + np.sin(phi)[:, None] * v)


def boundary_sample(d, m: int):
    """List of (point, component_id), deterministic ordering."""
    points, ids = boundary_sample_array(d, m)
    if dimension(d) == 2:
        return [(complex(p), int(i)) for p, i in zip(points, ids)]
    return [(Point3(*p), int(i)) for p, i in zip(points, ids)]
