"""
Exact and series Green's functions of model domains.

Every function accepts a scalar or an array of evaluation points and returns
the zero extension of the Green's function outside the domain. Planar
Green's functions behave like -log|z - w| at the pole, the spatial one like
|x - w|^{-1} (no normalizing constant).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from greenkernel.exceptions import PoleError, PreconditionError

logger = logging.getLogger(__name__)

SERIES_TOLERANCE = 1e-16


@dataclass(frozen=True)
class GreenEstimate:
    """
    A Green's function value with its error information.

    :param value: clamped value (>= 0); the raw value is kept in meta["raw"].
    :param method: one of "closed_form", "mfs", "wos".
    :param error_bound: boundary residual bound or Monte Carlo standard error.
    """

    value: float
    method: str
    error_bound: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be non-negative")
        raw = float(self.value)
        self.meta.setdefault("raw", raw)
        object.__setattr__(self, "value", max(0.0, raw))

    def as_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "error_bound": self.error_bound, "meta": self.meta}


def _output(values, scalar):
    return float(values[0]) if scalar else values


def _planar(z):
    scalar = np.ndim(z) == 0
    return np.atleast_1d(np.asarray(z, dtype=complex)), scalar


def _reject_pole(z, w):
    if np.any(z == w):
        raise PoleError(f"evaluation at the pole {w}")


def green_disk(a: complex, R: float, z, w: complex):
    """log |(R^2 - (z-a) conj(w-a)) / (R (z-w))| on D(a, R), zero outside."""
    a, w = complex(a), complex(w)
    if abs(w - a) >= R:
        raise PreconditionError(f"pole {w} is not inside D({a}, {R})")
    z, scalar = _planar(z)
    _reject_pole(z, w)
    inside = np.abs(z - a) < R
    safe = a if w != a else a + 0.5 * R
    zi = np.where(inside, z, safe)
    value = np.log(np.abs((R * R - (zi - a) * np.conj(w - a)) / (R * (zi - w))))
    return _output(np.where(inside, value, 0.0), scalar)


def green_halfplane(z, w: complex):
    """log |(z - conj w)/(z - w)| on the upper half-plane, zero below it."""
    w = complex(w)
    if w.imag <= 0:
        raise PreconditionError(f"pole {w} is not in the upper half-plane")
    z, scalar = _planar(z)
    _reject_pole(z, w)
    inside = z.imag > 0
    zi = np.where(inside, z, w + 1j)
    value = np.log(np.abs((zi - np.conj(w)) / (zi - w)))
    return _output(np.where(inside, value, 0.0), scalar)


def green_slit_ray(d: float, z):
    """
    Green's function of C minus (-inf, -d] with pole 0.

    h(z) = log |(s + 1)/(s - 1)| with s the principal square root of (z + d)/d.
    """
    if not d > 0:
        raise PreconditionError(f"slit distance must be positive, got {d}")
    z, scalar = _planar(z)
    _reject_pole(z, 0)
    on_ray = (z.imag == 0) & (z.real <= -d)
    s = np.sqrt(np.where(on_ray, 1.0 + 0j, (z + d) / d) + 0j)
    safe = np.where(on_ray, 2.0 + 0j, s)
    value = np.log(np.abs((safe + 1) / (safe - 1)))
    return _output(np.where(on_ray, 0.0, value), scalar)


@lru_cache(maxsize=64)
def series_terms(q: float) -> int:
    """Smallest K with q^(2K) below the series tolerance."""
    return max(1, int(math.ceil(math.log(SERIES_TOLERANCE) / (2.0 * math.log(q)))) + 1)


def prime_product(zeta, q: float, terms: int):
    """(1 - zeta) prod_{k=1..K} (1 - q^{2k} zeta)(1 - q^{2k}/zeta)."""
    zeta = np.asarray(zeta, dtype=complex)
    out = 1.0 - zeta
    for k in range(1, terms + 1):
        q2k = q ** (2 * k)
        out = out * (1.0 - q2k * zeta) * (1.0 - q2k / zeta)
    return out


def _annulus_series(q: float, z, w: complex):
    terms = series_terms(q)
    return np.log(np.abs(prime_product(z * np.conj(w), q, terms) / prime_product(z / w, q, terms)))


@lru_cache(maxsize=256)
def _annulus_correction(q: float, w: complex):
    direction = -w / abs(w)
    t_outer = float(_annulus_series(q, np.array([direction]), w)[0])
    t_inner = float(_annulus_series(q, np.array([q * direction]), w)[0])
    alpha = t_outer
    beta = (t_inner - alpha) / math.log(q)
    return alpha, beta


def green_annulus(q: float, z, w: complex):
    """
    Green's function of the annulus q < |z| < 1.

    T(z) = log |P(z conj w, q) / P(z / w, q)| carries the pole and is
    constant on each boundary circle; subtracting alpha + beta log|z| fixed
    at the boundary points farthest from the pole direction makes it vanish
    on both circles.
    """
    if not 0 < q < 1:
        raise PreconditionError(f"annulus modulus must lie in (0, 1), got {q}")
    w = complex(w)
    if not q < abs(w) < 1:
        raise PreconditionError(f"pole {w} is not inside A({q}, 1)")
    z, scalar = _planar(z)
    _reject_pole(z, w)
    r = np.abs(z)
    inside = (r > q) & (r < 1)
    zi = np.where(inside, z, -w)
    alpha, beta = _annulus_correction(q, w)
    value = _annulus_series(q, zi, w) - alpha - beta * np.log(np.abs(zi))
    return _output(np.where(inside, value, 0.0), scalar)


def green_annulus_general(center: complex, r_inner: float, r_outer: float, z, w: complex):
    """Annulus centered anywhere, reduced to A(q, 1) by similarity."""
    z, scalar = _planar(z)
    values = green_annulus(r_inner / r_outer, (z - center) / r_outer, (complex(w) - center) / r_outer)
    return _output(np.atleast_1d(values), scalar)


def green_ball3(c, R: float, x, w):
    """|x-w|^-1 - (R/|w-c|) |x - w*|^-1 with the Kelvin image w*; |x-c|^-1 - R^-1 for w = c."""
    c = np.asarray(c, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.linalg.norm(w - c) >= R:
        raise PreconditionError(f"pole {tuple(w)} is not inside the ball")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 1
    x = np.atleast_2d(x)
    gap = np.linalg.norm(x - w, axis=1)
    if np.any(gap == 0):
        raise PoleError(f"evaluation at the pole {tuple(w)}")
    inside = np.linalg.norm(x - c, axis=1) < R

    offset = np.linalg.norm(w - c)
    if offset == 0:
        value = 1.0 / gap - 1.0 / R
    else:
        image = c + R * R * (w - c) / offset ** 2
        value = 1.0 / gap - (R / offset) / np.linalg.norm(x - image, axis=1)
    return _output(np.where(inside, value, 0.0), scalar)


def transport_green(m, g):
    """The evaluator z -> g(m^-1(z)) on m(domain), with pole m(pole)."""
    from greenkernel.evaluators import TransportedEvaluator

    return TransportedEvaluator(m, g)
