"""
Points of the plane, the Riemann sphere and space.

Planar points are Python complex numbers. The point at infinity is the
``INFINITY`` singleton and is only accepted where sphere semantics apply.
"""

import math
from typing import NamedTuple, Union

import numpy as np


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

SpherePoint = Union[complex, _Infinity]


class Point3(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def is_infinity(p) -> bool:
    return p is INFINITY


def as_point2(value) -> complex:
    """Coerce a number, complex or [re, im] pair to a finite planar point."""
    if is_infinity(value):
        raise ValueError("the point at infinity is not a finite planar point")
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) != 2:
            raise ValueError(f"expected [re, im], got {value!r}")
        z = complex(float(value[0]), float(value[1]))
    else:
        z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"point components must be finite, got {value!r}")
    return z


def as_point3(value) -> Point3:
    """Coerce a length-3 sequence to a finite Point3."""
    if len(value) != 3:
        raise ValueError(f"expected [x, y, z], got {value!r}")
    p = Point3(*(float(c) for c in value))
    if not all(math.isfinite(c) for c in p):
        raise ValueError(f"point components must be finite, got {value!r}")
    return p


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """
    Chordal distance on the Riemann sphere.

    2|p - q| / sqrt((1 + |p|^2)(1 + |q|^2)), with the limit 2 / sqrt(1 + |p|^2)
    when one argument is ``INFINITY``.
    """
    if is_infinity(p) and is_infinity(q):
        return 0.0
    if is_infinity(p):
        p, q = q, p
    if is_infinity(q):
        return 2.0 / math.hypot(1.0, abs(p))
    p, q = complex(p), complex(q)
    hp, hq = math.hypot(1.0, abs(p)), math.hypot(1.0, abs(q))
    # scaled before subtracting so that large finite points do not overflow
    value = 2.0 * abs(p / hp - q / hp) / hq
    return min(value, 2.0)
