"""
Fractional-linear transformations of the Riemann sphere.
"""

import cmath
import logging
from dataclasses import dataclass

import numpy as np

from greenkernel.exceptions import DomainError, PreconditionError
from greenkernel.geometry.points import INFINITY, SpherePoint, is_infinity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MobiusMap:
    """
    z -> (a z + b) / (c z + d), stored with a d - b c = 1.

    :param a, b, c, d: complex coefficients with nonzero determinant.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        scale = max(abs(a), abs(b), abs(c), abs(d), 1e-300)
        if abs(det) <= 1e-14 * scale * scale:
            raise DomainError(f"degenerate Mobius map, ad - bc = {det}", field="det")
        root = cmath.sqrt(det)
        object.__setattr__(self, "a", a / root)
        object.__setattr__(self, "b", b / root)
        object.__setattr__(self, "c", c / root)
        object.__setattr__(self, "d", d / root)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def cayley(cls) -> "MobiusMap":
        """Upper half-plane onto the unit disk, z -> (z - i)/(z + i)."""
        return cls(1, -1j, 1, 1j)

    @classmethod
    def disk_automorphism(cls, a: complex, angle: float = 0.0) -> "MobiusMap":
        """z -> e^{i angle} (z - a)/(1 - conj(a) z), an automorphism of the unit disk for |a| < 1."""
        a = complex(a)
        if abs(a) >= 1:
            raise PreconditionError(f"automorphism parameter must lie in the unit disk, got {a}")
        rot = cmath.exp(1j * angle)
        return cls(rot, -rot * a, -a.conjugate(), 1)

    @classmethod
    def from_points(cls, source, target) -> "MobiusMap":
        """The unique map sending three distinct sphere points onto three others."""
        return _to_standard(*target).inverse().compose(_to_standard(*source))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def pole(self) -> SpherePoint:
        """Point sent to infinity."""
        if self.c == 0:
            return INFINITY
        return -self.d / self.c

    def __call__(self, z: SpherePoint) -> SpherePoint:
        if is_infinity(z):
            return INFINITY if self.c == 0 else self.a / self.c
        z = complex(z)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    def apply_array(self, z) -> np.ndarray:
        """Vectorized application on finite points; the pole maps to complex infinity."""
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (self.a * z + self.b) / den
        return np.where(den == 0, complex(np.inf, 0), out)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        m = self.matrix @ other.matrix
        return MobiusMap(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def image_circle(self, center: complex, radius: float):
        """
        Image of the circle C(center, radius).

        :returns: (center, radius) of the image circle.
        :raises DomainError: when the pole lies on the circle (the image is a line).
        """
        pole = self.pole
        if not is_infinity(pole) and abs(abs(pole - center) - radius) <= 1e-12 * max(1.0, radius):
            raise DomainError("Mobius image of the circle is a line", field="pole")
        pts = [self(center + radius * cmath.exp(2j * cmath.pi * k / 3)) for k in range(3)]
        return _circumcircle(*pts)


def _to_standard(z1, z2, z3) -> MobiusMap:
    """Map sending z1, z2, z3 to 0, 1, infinity."""
    if len({repr(z) if is_infinity(z) else complex(z) for z in (z1, z2, z3)}) != 3:
        raise DomainError("three distinct points are required", field="points")
    if is_infinity(z1):
        return MobiusMap(0, z2 - z3, 1, -z3)
    if is_infinity(z2):
        return MobiusMap(1, -z1, 1, -z3)
    if is_infinity(z3):
        return MobiusMap(1, -z1, 0, z2 - z1)
    return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def _circumcircle(p1: complex, p2: complex, p3: complex):
    a, b = p2 - p1, p3 - p1
    den = 2.0 * (a.real * b.imag - a.imag * b.real)
    if den == 0:
        raise DomainError("points are collinear", field="points")
    aa, bb = abs(a) ** 2, abs(b) ** 2
    ux = (b.imag * aa - a.imag * bb) / den
    uy = (a.real * bb - b.real * aa) / den
    center = p1 + complex(ux, uy)
    return center, abs(center - p1)


def mobius_apply(m: MobiusMap, z: SpherePoint) -> SpherePoint:
    """(a z + b)/(c z + d) with the usual conventions at infinity and at the pole."""
    return m(z)


def mobius_inverse(m: MobiusMap) -> MobiusMap:
    return m.inverse()


def mobius_image_domain(m: MobiusMap, d):
    """
    Image of a disk, annulus or all-circle domain as a CircleDomain.

    The pole of ``m`` must lie outside the closed outer disk so that the
    image stays bounded.
    """
    from greenkernel.geometry.domains import Annulus, Circle, CircleDomain, Disk

    if isinstance(d, Disk):
        outer, holes = Circle(d.center, d.radius), []
    elif isinstance(d, Annulus):
        outer, holes = Circle(d.center, d.r_outer), [Circle(d.center, d.r_inner)]
    elif isinstance(d, CircleDomain) and all(isinstance(c, Circle) for c in (d.outer, *d.holes)):
        outer, holes = d.outer, list(d.holes)
    else:
        raise PreconditionError(f"Mobius images are supported for circle domains only, got {type(d).__name__}")

    pole = m.pole
    if not is_infinity(pole) and abs(pole - outer.center) <= outer.radius:
        raise PreconditionError("the map sends a point of the closed domain to infinity")

    images = [Circle(*m.image_circle(c.center, c.radius)) for c in (outer, *holes)]
    logger.debug(f"Mobius image of {type(d).__name__} with {len(holes)} holes computed")
    return CircleDomain(images[0], images[1:])
