"""
Pointwise bounds used in the uniform convergence proof, and the decay of
Green's function across a long boundary component.
"""

import logging

import numpy as np

from greenkernel.convergence import koebe_bound_check, slit_decay_experiment, symmetrization_check
from greenkernel.evaluators import select_evaluator
from greenkernel.geometry.domains import Annulus, CircleDomain, Disk, TrigCurve
from greenkernel.reproductions.base import ReproductionSpec, finish

logger = logging.getLogger(__name__)

BOUND_SAMPLES = 1000
SLIT_DELTAS = tuple(2.0 ** -k for k in range(1, 8))
SLIT_WALKS = 1_000_000
ALPHA_RANGE = (0.35, 0.65)


def random_trig_domain(seed: int, degree: int = 4, size: float = 0.1) -> CircleDomain:
    """Star-shaped domain with coefficients uniform in (-size, size)/k, k = 1..degree."""
    rng = np.random.default_rng(seed)
    k = np.arange(1, degree + 1)
    cos = rng.uniform(-size, size, degree) / k
    sin = rng.uniform(-size, size, degree) / k
    return CircleDomain(TrigCurve(0j, (1.0, *cos), tuple(sin)))


def _bound_table(families, check, spec):
    rows, checks = [], {}
    for label, domain, pole, method in families:
        g = select_evaluator(domain, pole, method, mfs_params=spec.mfs_params())
        violations = check(domain, pole, BOUND_SAMPLES, g)
        checks[f"{label}_no_violations"] = not violations
        rows.append({
            "family": label,
            "method": g.method,
            "samples": BOUND_SAMPLES,
            "violations": len(violations),
            "worst_excess": max((v["value"] - v["bound"] for v in violations), default=0.0),
        })
        if violations:
            logger.warning(f"{label}: {len(violations)} bound violations")
    return rows, checks


def koebe(spec: ReproductionSpec):
    """g <= sqrt(128 dist) within 1/128 of the boundary on three simply connected families."""
    families = [
        ("unit-disk", Disk(0j, 1.0), 0j, None),
        ("trig-curve", random_trig_domain(spec.seed), 0j, None),
        ("disk-100", Disk(0j, 100.0), 0j, None),
    ]
    rows, checks = _bound_table(families, koebe_bound_check, spec)
    return finish(spec, checks, tables={"bounds": rows})


def symmetrization(spec: ReproductionSpec):
    """g(z, w) <= h_d(|z - w|) with d = dist(w, boundary) on a disk, an annulus and a trig curve."""
    families = [
        ("unit-disk", Disk(0j, 1.0), 0j, None),
        ("annulus", Annulus(0j, 0.25, 1.0), 0.5, "mfs"),
        ("trig-curve", CircleDomain(TrigCurve(0j, (1.0, 0.0, 0.0, 1.0 / 8.0))), 0j, None),
    ]

    def check(domain, pole, samples, g):
        return symmetrization_check(domain, pole, samples, g, seed=spec.seed)

    rows, checks = _bound_table(families, check, spec)
    return finish(spec, checks, tables={"bounds": rows})


def slit_decay(spec: ReproductionSpec):
    """Fitted power law of g(0, -3) in D(0, 4) minus [delta, 1] as delta -> 0."""
    result = slit_decay_experiment(SLIT_DELTAS, -3.0, spec.wos_params(SLIT_WALKS))
    checks = {
        "alpha_in_range": ALPHA_RANGE[0] <= result.alpha <= ALPHA_RANGE[1],
        "strictly_decreasing": result.decreasing,
    }
    logger.info(f"slit decay: C {result.C:.4g}, alpha {result.alpha:.4g}")
    table = [
        {"delta": row.delta, "estimate": row.estimate, "std_error": row.std_error, "included": row.included}
        for row in result.rows
    ]
    return finish(spec, checks, tables={"decay": table}, C=result.C, alpha=result.alpha, excluded=result.excluded)
