#!/usr/bin/env python3
"""
Tests for domain descriptions, Mobius maps, boundary queries, sampling and
the JSON encoding.
"""

import json
import math

import numpy as np
import pytest

from greenkernel.exceptions import DomainError, PreconditionError, SchemaError
from greenkernel.geometry import (
    INFINITY,
    Annulus,
    AnnularRegion,
    Ball3,
    Circle,
    CircleDomain,
    Disk,
    MobiusMap,
    PerforatedDisk,
    SlitDomain,
    TrigCurve,
    TubeDomain3,
    boundary_query,
    boundary_sample,
    boundary_sample_array,
    chordal_distance,
    component_count,
    contains,
    decode_domain,
    distance_to_boundary,
    encode_domain,
    mobius_apply,
    mobius_image_domain,
    mobius_inverse,
    net_points,
)
from greenkernel.geometry.distance import polyline_distance
from greenkernel.geometry.domains import bounding_box, dimension
from greenkernel.geometry.points import is_infinity
from greenkernel.geometry.sampling import covering_radius, fibonacci_sphere, shell_sequence

FIXTURE_NAMES = [
    "disk", "annulus", "circle_domain", "slit", "perforated", "punctured", "ball3", "tube3",
]


## ---------------------------- ##
##          Mobius maps          ##
## ---------------------------- ##

def test_mobius_apply_conventions():
    assert mobius_apply(MobiusMap.identity(), 3 + 4j) == pytest.approx(3 + 4j)
    inversion = MobiusMap(0, 1, 1, 0)
    assert mobius_apply(inversion, INFINITY) == 0
    assert is_infinity(mobius_apply(inversion, 0))
    assert mobius_apply(MobiusMap(1, -1, 1, 1), 1) == 0


def test_mobius_degenerate_map_rejected():
    with pytest.raises(DomainError):
        MobiusMap(1, 2, 2, 4)


def test_mobius_inverse():
    inversion = MobiusMap(0, 1, 1, 0)
    for z in (2.0, 1j, 0.5 - 0.25j):
        assert mobius_inverse(inversion)(z) == pytest.approx(1 / z)

    affine = MobiusMap(2, 1, 0, 1)
    inverse = mobius_inverse(affine)
    for z in (0, 1, 1j):
        assert inverse(z) == pytest.approx((z - 1) / 2)
        assert inverse(affine(z)) == pytest.approx(z)


def test_mobius_from_points_sends_triples():
    source = (0, 1, INFINITY)
    target = (1j, -1, 2)
    m = MobiusMap.from_points(source, target)
    assert m(0) == pytest.approx(1j)
    assert m(1) == pytest.approx(-1)
    assert m(INFINITY) == pytest.approx(2)


def test_cayley_maps_upper_half_plane_into_disk():
    m = MobiusMap.cayley()
    pts = np.array([0.3 + 0.1j, -2 + 5j, 1j, 7 + 0.01j])
    assert np.all(np.abs(m.apply_array(pts)) < 1)
    assert abs(m(1j)) == pytest.approx(0)


def test_mobius_image_of_annulus_is_circle_domain():
    m = MobiusMap.disk_automorphism(0.3)
    image = mobius_image_domain(m, Annulus(0j, 0.2, 1.0))
    assert isinstance(image, CircleDomain)
    assert image.outer.center == pytest.approx(0)
    assert image.outer.radius == pytest.approx(1.0)
    assert len(image.holes) == 1

    with pytest.raises(PreconditionError):
        mobius_image_domain(MobiusMap(0, 1, 1, 0), Disk(0j, 1.0))


def _random_map(rng):
    a, b, c, d = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return MobiusMap(a, b, c, d)


def test_mobius_group_laws():
    rng = np.random.default_rng(8)
    m1, m2 = _random_map(rng), _random_map(rng)
    # spread over the sphere: moduli from about 1e-3 to 1e3
    points = [
        complex(z) for z in
        np.exp(rng.uniform(-7, 7, 99)) * np.exp(2j * np.pi * rng.random(99))
    ] + [INFINITY]
    for m in (m1, m2):
        identity = m.compose(m.inverse())
        for z in points:
            assert chordal_distance(identity(z), z) < 1e-10
            assert chordal_distance(m.inverse()(m(z)), z) < 1e-10
    product = m1.compose(m2)
    for z in points:
        assert chordal_distance(product(z), m1(m2(z))) < 1e-10


def test_chordal_distance():
    assert chordal_distance(0, INFINITY) == pytest.approx(2.0)
    assert chordal_distance(0, 0) == 0
    assert chordal_distance(1, -1) == pytest.approx(2.0)
    assert chordal_distance(INFINITY, INFINITY) == 0


def test_chordal_distance_of_large_points():
    assert chordal_distance(1e200, 0) == pytest.approx(2.0)
    assert chordal_distance(0, 1e200j) == pytest.approx(2.0)
    assert chordal_distance(1e200, -1e200) == pytest.approx(0.0, abs=1e-150)
    assert chordal_distance(1e200, INFINITY) == pytest.approx(0.0, abs=1e-150)
    assert chordal_distance(3e160, 3e160) == 0.0


## ---------------------------- ##
##        Domain invariants      ##
## ---------------------------- ##

def test_domain_invariants():
    with pytest.raises(DomainError):
        Disk(0j, -1.0)
    with pytest.raises(DomainError):
        Annulus(0j, 1.0, 0.5)
    with pytest.raises(DomainError):
        CircleDomain(Circle(0j, 1.0), (Circle(0.8, 0.5),))
    with pytest.raises(DomainError):
        CircleDomain(Circle(0j, 2.0), (Circle(0.5, 0.4), Circle(-0.1, 0.4)))
    with pytest.raises(DomainError):
        TrigCurve(0j, (1.0, 1.5))
    with pytest.raises(DomainError):
        PerforatedDisk(Disk(0j, 2.0), (1.5, 1.6), math.log(0.1))
    with pytest.raises(DomainError):
        SlitDomain(Disk(0j, 1.0), ((0.5, 2.0),))


def test_tube_must_avoid_inner_ball():
    ambient = Ball3((0, 0, 0), 2.0)
    with pytest.raises(DomainError):
        TubeDomain3(ambient, ((2, 0, 0), (1.05, 0, 0)), 0.1, inner_radius=1.0)
    tube = TubeDomain3(ambient, ((2, 0, 0), (1.5, 0, 0)), 0.1, inner_radius=1.0)
    assert tube.tube_radius == 0.1


def test_component_count():
    holes = tuple(Circle(complex(-1.6 + 0.2 * k, 0.0), 0.05) for k in range(17))
    assert component_count(Disk(0j, 1.0)) == 1
    assert component_count(Annulus(0j, 0.5, 1.0)) == 2
    assert component_count(CircleDomain(Circle(0j, 2.0), holes)) == 18
    with pytest.raises(PreconditionError):
        component_count(Ball3((0, 0, 0), 1.0))


## ---------------------------- ##
##        Boundary queries       ##
## ---------------------------- ##

def test_distance_to_boundary_examples():
    result = distance_to_boundary(Disk(0j, 1.0), 0.25)
    assert result.dist == pytest.approx(0.75)
    assert result.inside

    result = distance_to_boundary(Annulus(0j, 0.5, 1.0), 0.6)
    assert result.dist == pytest.approx(0.1)
    assert result.nearest == pytest.approx(0.5)
    assert result.inside

    result = distance_to_boundary(SlitDomain(Disk(0j, 4.0), ((0.1, 1.0),)), 0)
    assert result.dist == pytest.approx(0.1)
    assert result.nearest == pytest.approx(0.1)


def test_slit_points_are_outside():
    d = SlitDomain(Disk(0j, 4.0), ((0.25, 1.0),))
    inside = contains(d, [0.5, 0.5 + 1e-6j, 0])
    assert list(inside) == [False, True, True]


def test_trig_curve_distance_matches_circle():
    curve = TrigCurve(0j, (1.0,))
    d = CircleDomain(curve)
    dist, nearest, inside = boundary_query(d, [0.5, 0.3j, -0.9])
    assert dist == pytest.approx([0.5, 0.7, 0.1], abs=1e-9)
    assert np.all(inside)


def test_perforated_disk_queries():
    d = PerforatedDisk(Disk(0j, 2.0), (1.5,), math.log(0.1))
    dist, nearest, inside = boundary_query(d, [1.5 + 0.3j, 1.55, 0])
    assert dist[0] == pytest.approx(0.2)
    assert not inside[1]
    assert dist[2] == pytest.approx(1.4)

    punctured = PerforatedDisk(Disk(0j, 1.0), (0,), -math.inf)
    assert list(contains(punctured, [0, 0.1])) == [False, True]


def test_ball_and_tube_queries():
    ball = Ball3((0, 0, 0), 2.0)
    result = distance_to_boundary(ball, (0.5, 0, 0))
    assert result.dist == pytest.approx(1.5)
    assert tuple(result.nearest) == pytest.approx((2, 0, 0))

    tube = TubeDomain3(ball, ((2, 0, 0), (1.5, 0, 0), (1.5, 0.5, 0)), 0.05)
    dist, _, inside = boundary_query(tube, [(1.5, 0.2, 0), (1.5, 0.2, 0.3), (0, 0, 0)])
    assert not inside[0]
    assert inside[1]
    assert dist[1] == pytest.approx(0.25)
    assert dist[2] == pytest.approx(1.5 - 0.05)


def _load(fixtures_dir, name):
    return decode_domain(json.loads((fixtures_dir / f"{name}.json").read_text()))


def _uniform_points(d, rng, count, grow=1.0):
    box = np.asarray(bounding_box(d)) * grow
    coords = [rng.uniform(lo, hi, count) for lo, hi in zip(box[::2], box[1::2])]
    if dimension(d) == 2:
        return coords[0] + 1j * coords[1]
    return np.column_stack(coords)


def _true_boundary_samples(d, m):
    """Samples of the boundary itself; tube samples inside a bend or outside the ball are dropped."""
    points, ids = boundary_sample_array(d, m)
    if not isinstance(d, TubeDomain3):
        return points
    gap, _ = polyline_distance(points, d.vertices)
    radius = np.linalg.norm(points - d.ambient.center.as_array(), axis=1)
    keep = np.where(ids == 0, gap >= d.tube_radius, (radius <= d.ambient.radius) & (gap >= d.tube_radius - 1e-12))
    return points[keep]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_distance_matches_dense_boundary_samples(fixtures_dir, name):
    d = _load(fixtures_dir, name)
    planar = dimension(d) == 2
    # 3D samples are spaced about 0.02 apart on the outer sphere
    margin, tolerance = (0.1, 1e-6) if planar else (0.2, 1e-3)
    samples = _true_boundary_samples(d, 100_000)

    rng = np.random.default_rng(21)
    candidates = _uniform_points(d, rng, 2000)
    dist, _, inside = boundary_query(d, candidates)
    points = candidates[inside & (dist >= margin)][:20]
    assert len(points) == 20
    for p in points:
        sampled = np.min(np.abs(samples - p)) if planar else np.min(np.linalg.norm(samples - p, axis=1))
        exact = distance_to_boundary(d, p if planar else tuple(p)).dist
        assert exact <= sampled + 1e-9
        assert sampled - exact <= tolerance


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_inside_flag_is_stable_within_distance(fixtures_dir, name):
    d = _load(fixtures_dir, name)
    rng = np.random.default_rng(5)
    points = _uniform_points(d, rng, 2000, grow=1.1)
    dist, _, inside = boundary_query(d, points)
    keep = dist > 0
    points, dist, inside = points[keep], dist[keep], inside[keep]
    step = 0.999 * dist
    if dimension(d) == 2:
        moved = points + step * np.exp(2j * np.pi * rng.random(points.size))
    else:
        direction = rng.standard_normal(points.shape)
        direction /= np.linalg.norm(direction, axis=1)[:, None]
        moved = points + step[:, None] * direction
    assert np.array_equal(contains(d, moved), inside)


## ---------------------------- ##
##           Sampling            ##
## ---------------------------- ##

def test_boundary_sample_disk_points():
    samples = boundary_sample(Disk(0j, 1.0), 4)
    points = [p for p, _ in samples]
    assert points == pytest.approx([1, 1j, -1, -1j])
    assert all(i == 0 for _, i in samples)


def test_boundary_sample_counts():
    assert len(boundary_sample(Annulus(0j, 0.5, 1.0), 4)) == 8
    holes = (Circle(-1.0, 0.2), Circle(0j, 0.2), Circle(1.0, 0.2))
    samples = boundary_sample(CircleDomain(Circle(0j, 2.0), holes), 8)
    assert len(samples) == 32
    assert sorted({i for _, i in samples}) == [0, 1, 2, 3]


def test_boundary_sample_lies_on_boundary():
    d = CircleDomain(TrigCurve(0j, (1.0, 0.1, 0.0, 0.05)), (Circle(0.2, 0.1),))
    points = np.array([p for p, _ in boundary_sample(d, 64)])
    dist, _, _ = boundary_query(d, points)
    assert np.max(dist) < 1e-9


def test_net_points_cover_region():
    region = AnnularRegion(0j, 1.0, 2.0)
    for spacing in (2.0, 0.5):
        nodes = net_points(spacing, region)
        assert nodes
        assert all(region.contains(nodes))
        rng = np.random.default_rng(1)
        r = np.sqrt(rng.uniform(1.0, 4.0, 10_000))
        probes = r * np.exp(2j * np.pi * rng.random(10_000))
        assert covering_radius(nodes, probes) <= spacing


def test_net_points_empty_region():
    assert net_points(0.5, AnnularRegion(0j, 1.0, 1.0)) == []
    with pytest.raises(ValueError):
        net_points(0.0, AnnularRegion(0j, 1.0, 2.0))


def test_sphere_and_shell_samples():
    unit = fibonacci_sphere(100)
    assert np.linalg.norm(unit, axis=1) == pytest.approx(np.ones(100))
    shell = shell_sequence(50, 1.0, 2.0)
    radii = np.linalg.norm(shell, axis=1)
    assert np.all((radii > 1.0) & (radii < 2.0))
    assert np.array_equal(shell[:10], shell_sequence(10, 1.0, 2.0))


## ---------------------------- ##
##         JSON encoding         ##
## ---------------------------- ##

@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(fixtures_dir, name):
    obj = json.loads((fixtures_dir / f"{name}.json").read_text())
    assert encode_domain(decode_domain(obj)) == obj


def test_decode_disk():
    assert decode_domain({"type": "disk", "center": [0, 0], "radius": 1}) == Disk(0j, 1.0)


def test_decode_rejects_invalid_documents():
    with pytest.raises(SchemaError) as excinfo:
        decode_domain({"type": "annulus", "center": [0, 0], "r_inner": 1.0, "r_outer": 0.5})
    assert excinfo.value.field == "r_inner"

    with pytest.raises(SchemaError) as excinfo:
        decode_domain({"type": "disk", "center": [0, 0], "radius": 1, "color": "red"})
    assert excinfo.value.field == "color"

    with pytest.raises(SchemaError):
        decode_domain({"type": "hexagon"})
    with pytest.raises(SchemaError):
        decode_domain({"type": "disk", "center": [0, 0]})
