"""
Green's function evaluators and method selection.

An evaluator is bound to a domain and a pole; calling it on points returns
the zero-extended, non-negative Green's function. Preference order when no
method is forced: closed_form > mfs > wos.
"""

import logging
from typing import List

import numpy as np

from greenkernel.closed_form import (
    GreenEstimate,
    green_annulus_general,
    green_ball3,
    green_disk,
)
from greenkernel.exceptions import DomainError, MethodNotAvailableError, PoleError, PreconditionError
from greenkernel.geometry.distance import contains
from greenkernel.geometry.domains import (
    Annulus,
    Ball3,
    Circle,
    CircleDomain,
    Disk,
    PerforatedDisk,
    SlitDomain,
    TubeDomain3,
    dimension,
)
from greenkernel.geometry.mobius import mobius_image_domain
from greenkernel.geometry.points import INFINITY, is_infinity
from greenkernel.mfs_solver import MfsParams, solve_green, solve_small_holes
from greenkernel.wos_oracle import WosParams, estimate_green_2d, estimate_green_3d

logger = logging.getLogger(__name__)

METHODS = ("closed_form", "mfs", "wos")


class GreenEvaluator:
    """Base class; subclasses implement ``raw`` on points inside the domain."""

    method = None

    def __init__(self, domain, pole, error_bound=0.0):
        self.domain = domain
        self.pole = pole
        self.error_bound = error_bound

    @property
    def dimension(self) -> int:
        return dimension(self.domain)

    def _points(self, points):
        if self.dimension == 2:
            scalar = np.ndim(points) == 0
            return np.atleast_1d(np.asarray(points, dtype=complex)), scalar
        arr = np.asarray(points, dtype=float)
        return np.atleast_2d(arr), arr.ndim == 1

    def _check_pole(self, z):
        if self.dimension == 2:
            hit = np.any(z == self.pole)
        else:
            hit = np.any(np.all(z == np.asarray(self.pole, dtype=float), axis=1))
        if hit:
            raise PoleError(f"evaluation at the pole {self.pole}")

    def raw(self, z):
        raise NotImplementedError

    def values(self, points):
        """Raw values inside, zero outside."""
        z, scalar = self._points(points)
        self._check_pole(z)
        out = np.zeros(len(z))
        inside = contains(self.domain, z)
        if np.any(inside):
            out[inside] = self.raw(z[inside])
        return (float(out[0]) if scalar else out)

    def __call__(self, points):
        values = self.values(points)
        return max(values, 0.0) if np.ndim(values) == 0 else np.maximum(values, 0.0)

    def estimate(self, point) -> GreenEstimate:
        raw = self.values(point)
        return GreenEstimate(raw, self.method, self.error_bound, {"raw": float(raw)})


class ClosedFormEvaluator(GreenEvaluator):
    method = "closed_form"

    def __init__(self, domain, pole):
        super().__init__(domain, pole, 0.0)
        self._model = _closed_form_model(domain)
        if self._model is None:
            raise MethodNotAvailableError(self.method, type(domain).__name__, feasible_methods(domain))

    def raw(self, z):
        kind, params = self._model
        if kind == "disk":
            return green_disk(params[0], params[1], z, self.pole)
        if kind == "annulus":
            return green_annulus_general(*params, z, self.pole)
        return green_ball3(params[0], params[1], z, self.pole)


class MfsEvaluator(GreenEvaluator):
    method = "mfs"

    def __init__(self, domain, pole, params: MfsParams = None):
        self.solution = solve_green(domain, pole, params)
        super().__init__(domain, complex(pole), self.solution.boundary_residual)

    def raw(self, z):
        return self.solution.raw(z)


class SmallHoleEvaluator(GreenEvaluator):
    """Disk with tiny holes; one charge per hole built from the disk's Green's function."""

    method = "mfs"

    def __init__(self, domain: PerforatedDisk, pole):
        self.solution = solve_small_holes(domain, pole)
        super().__init__(domain, complex(pole), self.solution.error_bound)

    def raw(self, z):
        return self.solution.raw(z)


class WosEvaluator(GreenEvaluator):
    """Point-by-point Monte Carlo; error_bound is the largest standard error seen so far."""

    method = "wos"

    def __init__(self, domain, pole, params: WosParams = None):
        super().__init__(domain, pole, 0.0)
        self.params = params or WosParams()
        self.results = {}

    def _run(self, point):
        if self.dimension == 2:
            result = estimate_green_2d(self.domain, point, self.pole, self.params)
            key = complex(point)
        else:
            result = estimate_green_3d(self.domain, point, self.pole, self.params)
            key = tuple(float(c) for c in point)
        self.results[key] = result
        self.error_bound = max(self.error_bound, result.std_error)
        return result

    def raw(self, z):
        return np.array([self._run(p).estimate for p in z])

    def estimate(self, point) -> GreenEstimate:
        z, _ = self._points(point)
        self._check_pole(z)
        if not contains(self.domain, z)[0]:
            return GreenEstimate(0.0, self.method, 0.0, {"raw": 0.0, "outside": True})
        result = self._run(z[0])
        return GreenEstimate(result.estimate, self.method, result.std_error, {"raw": result.estimate, **result.as_dict()})


class TransportedEvaluator:
    """
    z -> g(m^-1(z)): the Green's function of m(domain) with pole m(pole).

    Points may be ``INFINITY`` when evaluated one at a time.
    """

    def __init__(self, m, g):
        self.map = m
        self.base = g
        self.inverse_map = m.inverse()
        self.pole = m(g.pole)
        self.method = g.method
        self.error_bound = g.error_bound
        # None when the image is not a bounded circle domain
        try:
            self.domain = mobius_image_domain(m, g.domain)
        except (PreconditionError, DomainError) as exc:
            logger.debug(f"no image domain for {type(g.domain).__name__}: {exc}")
            self.domain = None

    def _pull_back(self, z):
        pre = self.inverse_map.apply_array(z)
        return pre, np.isfinite(pre)

    def __call__(self, points):
        if is_infinity(points):
            pre = self.inverse_map(INFINITY)
            return 0.0 if is_infinity(pre) else float(self.base(pre))
        scalar = np.ndim(points) == 0
        z = np.atleast_1d(np.asarray(points, dtype=complex))
        pre, finite = self._pull_back(z)
        out = np.zeros(z.shape)
        if np.any(finite):
            out[finite] = self.base(pre[finite])
        return float(out[0]) if scalar else out

    def estimate(self, point) -> GreenEstimate:
        pre = self.inverse_map(point)
        if is_infinity(pre):
            return GreenEstimate(0.0, self.method, self.error_bound)
        base = self.base.estimate(pre)
        return GreenEstimate(base.meta["raw"], self.method, base.error_bound, dict(base.meta))


def _closed_form_model(d):
    if isinstance(d, Disk):
        return "disk", (d.center, d.radius)
    if isinstance(d, Annulus):
        return "annulus", (d.center, d.r_inner, d.r_outer)
    if isinstance(d, Ball3):
        return "ball3", (d.center.as_array(), d.radius)
    if isinstance(d, CircleDomain) and isinstance(d.outer, Circle):
        if not d.holes:
            return "disk", (d.outer.center, d.outer.radius)
        hole = d.holes[0]
        if len(d.holes) == 1 and isinstance(hole, Circle) and hole.center == d.outer.center:
            return "annulus", (d.outer.center, hole.radius, d.outer.radius)
    return None


def feasible_methods(d) -> List[str]:
    """Capability matrix, in preference order."""
    methods = []
    if _closed_form_model(d) is not None:
        methods.append("closed_form")
    if isinstance(d, (Disk, Annulus, CircleDomain, PerforatedDisk)):
        methods.append("mfs")
    if isinstance(d, (Disk, Annulus, CircleDomain, PerforatedDisk, SlitDomain, Ball3, TubeDomain3)):
        methods.append("wos")
    return methods


def select_evaluator(d, w, method=None, mfs_params: MfsParams = None, wos_params: WosParams = None):
    """
    Build the preferred (or the forced) evaluator for domain ``d`` and pole ``w``.

    :raises MethodNotAvailableError: the forced method cannot handle the domain.
    """
    feasible = feasible_methods(d)
    if method is not None and method not in feasible:
        raise MethodNotAvailableError(method, type(d).__name__, feasible)
    chosen = method or feasible[0]
    if dimension(d) == 2:
        w = complex(w)
    else:
        w = tuple(float(c) for c in w)

    logger.debug(f"evaluator for {type(d).__name__}: {chosen}")
    if chosen == "closed_form":
        return ClosedFormEvaluator(d, w)
    if chosen == "mfs":
        if isinstance(d, PerforatedDisk):
            return SmallHoleEvaluator(d, w)
        return MfsEvaluator(d, w, mfs_params)
    return WosEvaluator(d, w, wos_params)
