"""
Declarative domain descriptions.

Every variant is an immutable value describing an open connected domain.
Planar coordinates are complex numbers, spatial ones are ``Point3``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from greenkernel.exceptions import DomainError, PreconditionError
from greenkernel.geometry.points import Point3, as_point2, as_point3

logger = logging.getLogger(__name__)

TRIG_CHECK_SAMPLES = 4096
HOLE_CHECK_SAMPLES = 512


def _positive(value, name) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number, got {value}", field=name)
    return value


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point2(self.center))
        object.__setattr__(self, "radius", _positive(self.radius, "radius"))

    @property
    def min_radius(self) -> float:
        return self.radius

    @property
    def max_radius(self) -> float:
        return self.radius

    def radial(self, theta):
        return np.full_like(np.asarray(theta, dtype=float), self.radius)

    def points(self, theta) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * np.asarray(theta, dtype=float))

    def contains(self, z) -> np.ndarray:
        """Membership in the open region bounded by the circle."""
        return np.abs(np.asarray(z, dtype=complex) - self.center) < self.radius


@dataclass(frozen=True)
class TrigCurve:
    """
    Star-shaped curve c + r(t) e^{it} with r(t) = a0 + sum a_k cos(kt) + b_k sin(kt).

    :param cos: coefficients a0..aK.
    :param sin: coefficients b1..bK.
    """

    center: complex
    cos: Tuple[float, ...]
    sin: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "center", as_point2(self.center))
        cos = tuple(float(v) for v in self.cos)
        sin = tuple(float(v) for v in self.sin)
        if not cos:
            raise DomainError("trig curve needs at least the constant coefficient", field="cos")
        if len(sin) > len(cos) - 1:
            cos = cos + (0.0,) * (len(sin) - len(cos) + 1)
        if not all(math.isfinite(v) for v in cos + sin):
            raise DomainError("trig curve coefficients must be finite", field="cos")
        object.__setattr__(self, "cos", cos)
        object.__setattr__(self, "sin", sin)

        theta = np.linspace(0.0, 2.0 * np.pi, TRIG_CHECK_SAMPLES, endpoint=False)
        r = self.radial(theta)
        if r.min() <= 0:
            raise DomainError(
                f"trig curve radial function must stay positive, minimum {r.min():.3e}",
                field="cos",
            )

    @property
    def degree(self) -> int:
        return len(self.cos) - 1

    def _coefficients(self):
        k = np.arange(1, self.degree + 1)
        a = np.asarray(self.cos[1:], dtype=float)
        b = np.zeros(self.degree)
        b[: len(self.sin)] = self.sin
        return k, a, b

    def radial(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        k, a, b = self._coefficients()
        kt = np.multiply.outer(theta, k)
        return self.cos[0] + np.cos(kt) @ a + np.sin(kt) @ b

    def radial_derivative(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        k, a, b = self._coefficients()
        kt = np.multiply.outer(theta, k)
        return np.cos(kt) @ (k * b) - np.sin(kt) @ (k * a)

    def points(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return self.center + self.radial(theta) * np.exp(1j * theta)

    def tangents(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return (self.radial_derivative(theta) + 1j * self.radial(theta)) * np.exp(1j * theta)

    @property
    def min_radius(self) -> float:
        theta = np.linspace(0.0, 2.0 * np.pi, TRIG_CHECK_SAMPLES, endpoint=False)
        return float(self.radial(theta).min())

    @property
    def max_radius(self) -> float:
        theta = np.linspace(0.0, 2.0 * np.pi, TRIG_CHECK_SAMPLES, endpoint=False)
        return float(self.radial(theta).max())

    def contains(self, z) -> np.ndarray:
        u = np.asarray(z, dtype=complex) - self.center
        return np.abs(u) < self.radial(np.angle(u))


BoundaryCurve = Union[Circle, TrigCurve]


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point2(self.center))
        object.__setattr__(self, "radius", _positive(self.radius, "radius"))


@dataclass(frozen=True)
class Annulus:
    center: complex
    r_inner: float
    r_outer: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point2(self.center))
        r_inner = _positive(self.r_inner, "r_inner")
        r_outer = _positive(self.r_outer, "r_outer")
        if r_inner >= r_outer:
            raise DomainError(
                f"annulus needs r_inner < r_outer, got {r_inner} >= {r_outer}", field="r_inner"
            )
        object.__setattr__(self, "r_inner", r_inner)
        object.__setattr__(self, "r_outer", r_outer)

    @property
    def modulus(self) -> float:
        return self.r_inner / self.r_outer


@dataclass(frozen=True)
class CircleDomain:
    """Region inside ``outer`` with the closed regions bounded by ``holes`` removed."""

    outer: BoundaryCurve
    holes: Tuple[BoundaryCurve, ...] = ()

    def __post_init__(self):
        holes = tuple(self.holes)
        object.__setattr__(self, "holes", holes)
        theta = np.linspace(0.0, 2.0 * np.pi, HOLE_CHECK_SAMPLES, endpoint=False)
        for i, hole in enumerate(holes):
            if isinstance(hole, Circle) and isinstance(self.outer, Circle):
                inside = abs(hole.center - self.outer.center) + hole.radius < self.outer.radius
            else:
                inside = bool(np.all(self.outer.contains(hole.points(theta))))
                inside = inside and bool(self.outer.contains(hole.center))
            if not inside:
                raise DomainError(f"hole {i} is not contained in the outer region", field="holes")
        for i, a in enumerate(holes):
            for j in range(i + 1, len(holes)):
                b = holes[j]
                if isinstance(a, Circle) and isinstance(b, Circle):
                    disjoint = abs(a.center - b.center) > a.radius + b.radius
                else:
                    disjoint = not (
                        np.any(a.contains(b.points(theta)))
                        or np.any(b.contains(a.points(theta)))
                        or bool(a.contains(b.center))
                    )
                if not disjoint:
                    raise DomainError(f"holes {i} and {j} overlap", field="holes")

    def curves(self):
        return (self.outer, *self.holes)


@dataclass(frozen=True)
class SlitDomain:
    """A disk with closed straight segments removed."""

    ambient: Disk
    segments: Tuple[Tuple[complex, complex], ...]

    def __post_init__(self):
        segments = tuple((as_point2(p), as_point2(q)) for p, q in self.segments)
        object.__setattr__(self, "segments", segments)
        c, R = self.ambient.center, self.ambient.radius
        for i, (p, q) in enumerate(segments):
            if p == q:
                raise DomainError(f"segment {i} is degenerate", field="segments")
            if abs(p - c) >= R or abs(q - c) >= R:
                raise DomainError(f"segment {i} leaves the ambient disk", field="segments")
        for i in range(len(segments)):
            for j in range(i + 1, len(segments)):
                if _segment_gap(*segments[i], *segments[j]) <= 0:
                    raise DomainError(f"segments {i} and {j} intersect", field="segments")


def _segment_gap(p1, q1, p2, q2) -> float:
    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    d1, d2 = q1 - p1, q2 - p2
    o1, o2 = cross(d1, p2 - p1), cross(d1, q2 - p1)
    o3, o4 = cross(d2, p1 - p2), cross(d2, q1 - p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return 0.0

    def point_segment(z, p, q):
        t = min(1.0, max(0.0, ((z - p) * (q - p).conjugate()).real / abs(q - p) ** 2))
        return abs(z - (p + t * (q - p)))

    return min(
        point_segment(p1, p2, q2), point_segment(q1, p2, q2),
        point_segment(p2, p1, q1), point_segment(q2, p1, q1),
    )


@dataclass(frozen=True)
class PerforatedDisk:
    """
    A disk minus equal closed disks of radius exp(log_radius) around ``centers``.

    The radius is carried as a logarithm so that holes far below floating-point
    range stay representable. ``log_radius = -inf`` removes points only.
    """

    ambient: Disk
    centers: Tuple[complex, ...]
    log_radius: float

    def __post_init__(self):
        centers = tuple(as_point2(a) for a in self.centers)
        object.__setattr__(self, "centers", centers)
        log_radius = float(self.log_radius)
        if math.isnan(log_radius) or log_radius == math.inf:
            raise DomainError("log_radius must be finite or -inf", field="log_radius")
        object.__setattr__(self, "log_radius", log_radius)

        r = self.hole_radius
        c, R = self.ambient.center, self.ambient.radius
        if centers:
            arr = np.asarray(centers, dtype=complex)
            margin = R - np.abs(arr - c)
            if margin.min() <= r:
                raise DomainError("a hole is not contained in the ambient disk", field="centers")
            if len(centers) > 1:
                tree = cKDTree(np.column_stack([arr.real, arr.imag]))
                dist, _ = tree.query(np.column_stack([arr.real, arr.imag]), k=2)
                if dist[:, 1].min() <= 2.0 * r:
                    raise DomainError("holes overlap or centers repeat", field="centers")

    @property
    def hole_radius(self) -> float:
        """exp(log_radius); zero when it underflows."""
        return 0.0 if self.log_radius == -math.inf else math.exp(self.log_radius)

    @property
    def punctured(self) -> bool:
        return self.log_radius == -math.inf


@dataclass(frozen=True)
class Ball3:
    center: Point3
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point3(self.center))
        object.__setattr__(self, "radius", _positive(self.radius, "radius"))


@dataclass(frozen=True)
class TubeDomain3:
    """
    A ball minus the closed tube of radius ``tube_radius`` around a polyline.

    The tube must avoid the closed ball of radius ``inner_radius`` about the
    ambient center. Vertices may lie on the ambient sphere.
    """

    ambient: Ball3
    polyline: Tuple[Point3, ...]
    tube_radius: float
    inner_radius: float = 0.0

    def __post_init__(self):
        polyline = tuple(as_point3(p) for p in self.polyline)
        object.__setattr__(self, "polyline", polyline)
        object.__setattr__(self, "tube_radius", _positive(self.tube_radius, "tube_radius"))
        inner = float(self.inner_radius)
        if not (math.isfinite(inner) and inner >= 0):
            raise DomainError("inner_radius must be non-negative", field="inner_radius")
        object.__setattr__(self, "inner_radius", inner)
        if len(polyline) < 2:
            raise DomainError("polyline needs at least two vertices", field="polyline")

        c = self.ambient.center.as_array()
        verts = self.vertices
        if np.any(np.linalg.norm(verts - c, axis=1) > self.ambient.radius * (1 + 1e-12)):
            raise DomainError("polyline leaves the ambient ball", field="polyline")
        if inner > 0:
            from greenkernel.geometry.distance import polyline_distance

            gap, _ = polyline_distance(c[None, :], verts)
            if gap[0] <= inner + self.tube_radius:
                raise DomainError(
                    "tube meets the declared inner evaluation ball", field="tube_radius"
                )

    @property
    def vertices(self) -> np.ndarray:
        return np.array([p.as_array() for p in self.polyline])


DomainSpec = Union[Disk, Annulus, CircleDomain, SlitDomain, PerforatedDisk, Ball3, TubeDomain3]

PLANAR_TYPES = (Disk, Annulus, CircleDomain, SlitDomain, PerforatedDisk)
SPATIAL_TYPES = (Ball3, TubeDomain3)


def dimension(d) -> int:
    if isinstance(d, PLANAR_TYPES):
        return 2
    if isinstance(d, SPATIAL_TYPES):
        return 3
    raise PreconditionError(f"unknown domain type {type(d).__name__}")


def component_count(d) -> int:
    """Number of boundary components of a planar domain."""
    if isinstance(d, Disk):
        return 1
    if isinstance(d, Annulus):
        return 2
    if isinstance(d, CircleDomain):
        return 1 + len(d.holes)
    if isinstance(d, SlitDomain):
        return 1 + len(d.segments)
    if isinstance(d, PerforatedDisk):
        return 1 + len(d.centers)
    raise PreconditionError(f"component_count is defined for planar domains only, got {type(d).__name__}")


def outer_extent(d):
    """(center, radius) of a disk or ball containing the domain."""
    if isinstance(d, (Disk, Ball3)):
        return d.center, d.radius
    if isinstance(d, Annulus):
        return d.center, d.r_outer
    if isinstance(d, CircleDomain):
        return d.outer.center, d.outer.max_radius
    if isinstance(d, (SlitDomain, PerforatedDisk, TubeDomain3)):
        return d.ambient.center, d.ambient.radius
    raise PreconditionError(f"unknown domain type {type(d).__name__}")


def diameter(d) -> float:
    return 2.0 * outer_extent(d)[1]


def bounding_box(d) -> Tuple[float, ...]:
    """(xmin, xmax, ymin, ymax[, zmin, zmax])."""
    center, radius = outer_extent(d)
    if dimension(d) == 2:
        return (center.real - radius, center.real + radius, center.imag - radius, center.imag + radius)
    return (
        center.x - radius, center.x + radius,
        center.y - radius, center.y + radius,
        center.z - radius, center.z + radius,
    )
