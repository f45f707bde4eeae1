#!/usr/bin/env python3
"""
Tests for the fundamental-solutions solver and the small-hole solver.
"""

import json
import math

import numpy as np
import pytest

from greenkernel.closed_form import green_annulus, green_disk
from greenkernel.evaluators import SmallHoleEvaluator, select_evaluator
from greenkernel.exceptions import IllConditionedGeometryError, PreconditionError
from greenkernel.geometry import (
    Annulus,
    Circle,
    CircleDomain,
    Disk,
    MobiusMap,
    PerforatedDisk,
    SlitDomain,
    boundary_query,
    decode_domain,
    mobius_image_domain,
)
from greenkernel.mfs_solver import MfsParams, evaluate, residual_report, solve_green, solve_small_holes


def _load(fixtures_dir, name):
    return decode_domain(json.loads((fixtures_dir / f"{name}.json").read_text()))


def test_disk_matches_closed_form():
    s = solve_green(Disk(0j, 1.0), 0.3 - 0.2j)
    assert s.boundary_residual < 1e-9
    z = np.array([0.5, -0.4 + 0.4j, 0.1j, 0.8])
    assert evaluate(s, z) == pytest.approx(green_disk(0, 1.0, z, 0.3 - 0.2j), abs=1e-8)


def test_disk_pole_at_center():
    s = solve_green(Disk(0j, 1.0), 0)
    assert evaluate(s, 0.5) == pytest.approx(math.log(2.0), abs=1e-10)


def test_annulus_matches_series():
    s = solve_green(Annulus(0j, 0.25, 1.0), 0.5)
    residual, per_component = residual_report(s)
    assert len(per_component) == 2
    assert residual == max(per_component)
    assert residual < 1e-6
    rng = np.random.default_rng(11)
    r = rng.uniform(0.3, 0.95, 40)
    z = r * np.exp(2j * np.pi * rng.random(40))
    assert evaluate(s, z) == pytest.approx(green_annulus(0.25, z, 0.5), abs=1e-6)


def test_evaluate_zero_extension():
    s = solve_green(Annulus(0j, 0.25, 1.0), 0.5)
    assert evaluate(s, 0.1) == 0.0
    assert evaluate(s, 1.5) == 0.0
    assert np.all(evaluate(s, np.array([0.4, -0.6j, 0.9])) >= 0)


def test_circle_domain_certificate(fixtures_dir):
    d = _load(fixtures_dir, "circle_domain")
    s = solve_green(d, 0.5j)
    assert s.boundary_residual <= s.params.max_residual
    assert len(s.component_residuals) == 3
    assert evaluate(s, 0.4) == 0.0
    # the domain lies in D(0, 1.125)
    z = np.array([0.0, 0.2 + 0.5j, -0.6 - 0.3j])
    assert np.all(evaluate(s, z) <= green_disk(0, 1.125, z, 0.5j) + s.boundary_residual)


def test_preconditions():
    with pytest.raises(PreconditionError):
        solve_green(Disk(0j, 1.0), 1.5)
    with pytest.raises(PreconditionError):
        solve_green(SlitDomain(Disk(0j, 4.0), ((0.5, 1.0),)), -1.0)
    with pytest.raises(PreconditionError):
        MfsParams(hole_shrink=1.2)
    with pytest.raises(PreconditionError):
        MfsParams(outer_dilate=0.9)


def test_ill_conditioned_geometry():
    params = MfsParams(charges_per_component=4, max_residual=1e-12)
    with pytest.raises(IllConditionedGeometryError) as excinfo:
        solve_green(Disk(0j, 1.0), 0.5, params)
    assert excinfo.value.residual > 1e-12
    assert "wos" in str(excinfo.value)


def test_mfs_evaluator_error_bound():
    g = select_evaluator(Annulus(0j, 0.25, 1.0), 0.5, "mfs")
    assert g.method == "mfs"
    assert g.error_bound == g.solution.boundary_residual
    estimate = g.estimate(-0.5)
    assert estimate.error_bound == g.error_bound
    assert estimate.value == pytest.approx(green_annulus(0.25, -0.5, 0.5), abs=1e-6)


## ---------------------------- ##
##     Properties of solutions   ##
## ---------------------------- ##

ONE_HOLE = CircleDomain(Circle(0j, 1.0), (Circle(0.4, 0.1),))
TWO_HOLES = CircleDomain(Circle(0j, 1.0), (Circle(0.4, 0.1), Circle(-0.3 + 0.3j, 0.15)))
POLE = 0.1 - 0.4j


def _interior(d, rng, count, margin, avoid=None):
    z = rng.uniform(-1, 1, 8 * count) + 1j * rng.uniform(-1, 1, 8 * count)
    dist, _, inside = boundary_query(d, z)
    keep = inside & (dist >= margin)
    if avoid is not None:
        keep &= np.abs(z - avoid) >= margin
    z = z[keep][:count]
    assert z.size == count
    return z


def test_symmetry_in_both_arguments():
    rng = np.random.default_rng(3)
    zs = _interior(TWO_HOLES, rng, 20, 0.15)
    ws = _interior(TWO_HOLES, rng, 20, 0.15)
    for z, w in zip(zs, ws):
        if abs(z - w) < 0.1:
            continue
        s_w, s_z = solve_green(TWO_HOLES, w), solve_green(TWO_HOLES, z)
        bound = 10 * (s_w.boundary_residual + s_z.boundary_residual)
        assert abs(evaluate(s_w, z) - evaluate(s_z, w)) <= bound


def test_mobius_invariance_with_two_holes():
    m = MobiusMap.disk_automorphism(0.2 - 0.1j, 0.7)
    image = mobius_image_domain(m, TWO_HOLES)
    s = solve_green(TWO_HOLES, POLE)
    moved = solve_green(image, m(POLE))
    z = _interior(TWO_HOLES, np.random.default_rng(6), 50, 0.05, avoid=POLE)
    bound = 10 * (s.boundary_residual + moved.boundary_residual)
    assert np.max(np.abs(evaluate(s, z) - evaluate(moved, m.apply_array(z)))) <= bound


def test_positivity_on_a_grid():
    s = solve_green(TWO_HOLES, POLE)
    x = np.linspace(-1, 1, 100)
    grid = (x[:, None] + 1j * x[None, :]).ravel()
    assert np.all(evaluate(s, grid) >= 0)
    inside = boundary_query(TWO_HOLES, grid)[2]
    assert np.min(s.raw(grid[inside])) >= -2 * s.boundary_residual


def test_adding_a_hole_lowers_the_green_function():
    fewer, more = solve_green(ONE_HOLE, POLE), solve_green(TWO_HOLES, POLE)
    z = _interior(TWO_HOLES, np.random.default_rng(9), 200, 0.02, avoid=POLE)
    drop = evaluate(fewer, z) - evaluate(more, z)
    assert np.all(drop > -(fewer.boundary_residual + more.boundary_residual))

    deep = _interior(TWO_HOLES, np.random.default_rng(10), 50, 0.1, avoid=POLE)
    assert np.all(evaluate(fewer, deep) > evaluate(more, deep))
    # one more step up: the disk without holes
    assert np.all(green_disk(0, 1.0, deep, POLE) > evaluate(fewer, deep))


def test_mean_value_property():
    s = solve_green(TWO_HOLES, POLE)
    rng = np.random.default_rng(12)
    centers = _interior(TWO_HOLES, rng, 100, 0.05, avoid=POLE)
    dist = boundary_query(TWO_HOLES, centers)[0]
    theta = 2 * np.pi * np.arange(256) / 256
    for c, room in zip(centers, np.minimum(dist, np.abs(centers - POLE))):
        circle = c + 0.5 * room * np.exp(1j * theta)
        assert abs(np.mean(s.raw(circle)) - s.raw(c)[0]) < 1e-7


def test_thirty_holes():
    holes = tuple(Circle(1.2 * np.exp(2j * np.pi * k / 18), 0.05) for k in range(18))
    holes += tuple(Circle(0.6 * np.exp(2j * np.pi * (k + 0.5) / 12), 0.05) for k in range(12))
    d = CircleDomain(Circle(0j, 2.0), holes)
    try:
        s = solve_green(d, 0)
    except IllConditionedGeometryError as exc:
        assert exc.residual > 1e-4
        return
    assert s.boundary_residual <= 1e-4
    assert len(s.component_residuals) == 31
    value = evaluate(s, 0.9j)
    assert math.isfinite(value)
    assert 0 < value < green_disk(0, 2.0, 0.9j, 0)


## ---------------------------- ##
##          Small holes          ##
## ---------------------------- ##

def test_punctures_are_invisible(fixtures_dir):
    d = _load(fixtures_dir, "punctured")
    s = solve_small_holes(d, 0.5)
    assert s.error_bound == 0.0
    assert not np.any(s.charges)
    z = np.array([0.25, -0.5j, 0.7 + 0.1j])
    assert s(z) == pytest.approx(green_disk(0, 1.0, z, 0.5), abs=1e-14)
    assert s(0j) == 0.0


def test_central_hole_matches_annulus():
    d = PerforatedDisk(Disk(0j, 1.0), (0j,), math.log(0.01))
    s = solve_small_holes(d, 0.5)
    assert s.error_bound < 0.1
    z = np.array([0.3, -0.5j, 0.7 + 0.1j, -0.2 - 0.2j])
    assert np.all(np.abs(s(z) - green_annulus(0.01, z, 0.5)) <= s.error_bound)


def test_small_hole_error_shrinks_with_radius():
    bounds = []
    for log_radius in (-5.0, -10.0, -20.0):
        d = PerforatedDisk(Disk(0j, 2.0), (1.5, 1.5j, -1.5, -1.5j), log_radius)
        bounds.append(solve_small_holes(d, 0).error_bound)
    assert bounds[0] > bounds[1] > bounds[2]


def test_holes_lower_the_green_function(fixtures_dir):
    d = _load(fixtures_dir, "perforated")
    g = select_evaluator(d, 0)
    assert isinstance(g, SmallHoleEvaluator)
    z = np.array([0.5, 1.0j, -1.2, 0.9 - 0.9j])
    values = g(z)
    assert np.all(values <= green_disk(0, 2.0, z, 0) + 1e-12)
    assert np.all(values > 0)
    with pytest.raises(PreconditionError):
        solve_small_holes(d, 1.5)
