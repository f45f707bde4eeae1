#!/usr/bin/env python3
"""
Tests for the walk-on-spheres estimators. Statistical assertions use a
four-standard-error tolerance on fixed seeds.
"""

import json
import math

import numpy as np
import pytest
from scipy.stats import chisquare

from greenkernel.closed_form import green_annulus, green_ball3, green_disk
from greenkernel.evaluators import WosEvaluator, select_evaluator
from greenkernel.exceptions import PoleError, PreconditionError
from greenkernel.geometry import Ball3, Disk, PerforatedDisk, SlitDomain, decode_domain
from greenkernel.wos_oracle import (
    WALKS_PER_STREAM,
    WosParams,
    estimate_green_2d,
    estimate_green_3d,
    simulate_walks,
    wos_exit_sample,
)

BIAS = 2e-3


def _load(fixtures_dir, name):
    return decode_domain(json.loads((fixtures_dir / f"{name}.json").read_text()))


def test_disk_estimate(fast_wos):
    d = Disk(0j, 1.0)
    result = estimate_green_2d(d, 0.5, 0.2j, fast_wos)
    expected = green_disk(0, 1.0, 0.5, 0.2j)
    assert abs(result.estimate - expected) <= 4 * result.std_error + BIAS
    assert result.walks_used == fast_wos.walks
    assert result.truncated_walks == 0
    assert not result.warning


def test_disk_center_pole_is_exact(fast_wos):
    # exits project onto the unit circle, where log|X| vanishes
    result = estimate_green_2d(Disk(0j, 1.0), 0.5, 0, fast_wos)
    assert result.estimate == pytest.approx(math.log(2.0), abs=1e-9)


def test_ball_estimates(fast_wos):
    ball = Ball3((0, 0, 0), 2.0)
    exact = estimate_green_3d(ball, (0.5, 0, 0), (0, 0, 0), fast_wos)
    assert exact.estimate == pytest.approx(1.5, abs=1e-9)
    off_center = estimate_green_3d(Ball3((0, 0, 0), 1.0), (0.5, 0, 0), (0, 0.3, 0), fast_wos)
    expected = green_ball3((0, 0, 0), 1.0, (0.5, 0, 0), (0, 0.3, 0))
    assert abs(off_center.estimate - expected) <= 4 * off_center.std_error + BIAS


def test_annulus_estimate(fast_wos):
    d = decode_domain({"type": "annulus", "center": [0, 0], "r_inner": 0.25, "r_outer": 1.0})
    result = estimate_green_2d(d, -0.5, 0.5, fast_wos)
    expected = green_annulus(0.25, -0.5, 0.5)
    assert abs(result.estimate - expected) <= 4 * result.std_error + BIAS


def test_results_do_not_depend_on_workers():
    d = Disk(0j, 1.0)
    serial = estimate_green_2d(d, 0.3, -0.4j, WosParams(walks=3000, seed=42))
    threaded = estimate_green_2d(d, 0.3, -0.4j, WosParams(walks=3000, seed=42, workers=3))
    assert serial.estimate == threaded.estimate
    assert serial.std_error == threaded.std_error
    other = estimate_green_2d(d, 0.3, -0.4j, WosParams(walks=3000, seed=43))
    assert other.estimate != serial.estimate


def test_exit_sample_replays_walks():
    d = Disk(0j, 1.0)
    p = WosParams(walks=3000, seed=5)
    batch = simulate_walks(d, 0.1 + 0.2j, p)
    for index in (0, WALKS_PER_STREAM - 1, WALKS_PER_STREAM + 7, 2999):
        assert wos_exit_sample(d, 0.1 + 0.2j, p, index) == batch.exits[index]
    assert abs(abs(batch.exits[0]) - 1.0) < 1e-12


def test_exit_of_a_walk_does_not_depend_on_walk_count():
    d = Disk(0j, 1.0)
    fewer, more = WosParams(walks=100, seed=5), WosParams(walks=200, seed=5)
    for index in (0, 5, 99, WALKS_PER_STREAM + 3):
        assert wos_exit_sample(d, 0.1 + 0.2j, fewer, index) == wos_exit_sample(d, 0.1 + 0.2j, more, index)
    first = simulate_walks(d, 0.1 + 0.2j, fewer)
    second = simulate_walks(d, 0.1 + 0.2j, more)
    assert first.exits.size == 100
    assert second.exits.size == 200
    assert np.array_equal(first.exits, second.exits[:100])


def test_exit_sample_3d():
    ball = Ball3((0, 0, 0), 1.0)
    p = WosParams(walks=100, seed=1)
    point = wos_exit_sample(ball, (0.2, 0, 0), p, 17)
    assert math.hypot(point.x, point.y, point.z) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(PreconditionError):
        wos_exit_sample(ball, (2.0, 0, 0), p, 0)
    with pytest.raises(PreconditionError):
        wos_exit_sample(ball, (0.2, 0, 0), p, -1)


def test_exits_from_center_are_uniform():
    batch = simulate_walks(Disk(0j, 1.0), 0j, WosParams(walks=4096, seed=3))
    angles = np.angle(batch.exits) % (2 * np.pi)
    counts, _ = np.histogram(angles, bins=16, range=(0, 2 * np.pi))
    assert chisquare(counts).pvalue > 1e-3


def test_truncation_and_preconditions():
    d = Disk(0j, 1.0)
    with pytest.raises(PreconditionError):
        estimate_green_2d(d, 0j, 0.5, WosParams(walks=100, max_steps=1))
    with pytest.raises(PreconditionError):
        WosParams(walks=50)
    with pytest.raises(PreconditionError):
        WosParams(eps_shell=0.0)
    with pytest.raises(PreconditionError):
        estimate_green_2d(d, 0.5, 1.5, WosParams(walks=100))
    with pytest.raises(PoleError):
        estimate_green_2d(d, 0.5, 0.5, WosParams(walks=100))
    with pytest.raises(PreconditionError):
        estimate_green_3d(d, (0.5, 0, 0), (0, 0, 0), WosParams(walks=100))


@pytest.mark.parametrize("walks", [100_000, pytest.param(1_000_000, marks=pytest.mark.slow)])
def test_halving_the_shell_stays_within_noise(walks):
    d = Disk(0j, 1.0)
    wide = estimate_green_2d(d, 0.5, 0.3j, WosParams(walks=walks, seed=13, eps_shell=1e-3))
    narrow = estimate_green_2d(d, 0.5, 0.3j, WosParams(walks=walks, seed=13, eps_shell=5e-4))
    combined = math.hypot(wide.std_error, narrow.std_error)
    assert abs(wide.estimate - narrow.estimate) < 2 * combined


def test_longer_slit_lowers_the_green_function():
    p = WosParams(walks=40_000, seed=17)
    short = estimate_green_2d(SlitDomain(Disk(0j, 4.0), ((0.25, 1.0),)), 0, -3, p)
    longer = estimate_green_2d(SlitDomain(Disk(0j, 4.0), ((0.125, 1.0),)), 0, -3, p)
    assert longer.estimate > 0
    assert longer.estimate + 2 * math.hypot(short.std_error, longer.std_error) < short.estimate


def test_punctures_are_invisible(fixtures_dir, fast_wos):
    d = _load(fixtures_dir, "punctured")
    result = estimate_green_2d(d, 0.5, 0.2j, fast_wos)
    expected = green_disk(0, 1.0, 0.5, 0.2j)
    assert abs(result.estimate - expected) <= 4 * result.std_error + BIAS


def test_tiny_central_hole(fast_wos):
    d = PerforatedDisk(Disk(0j, 1.0), (0j,), math.log(1e-6))
    result = estimate_green_2d(d, -0.5, 0.5, fast_wos)
    expected = green_annulus(1e-6, -0.5, 0.5)
    assert abs(result.estimate - expected) <= 4 * result.std_error + BIAS


def test_tube_lowers_the_ball_value(fixtures_dir, fast_wos):
    d = _load(fixtures_dir, "tube3")
    result = estimate_green_3d(d, (0.5, 0, 0), (0, 0, 0), fast_wos)
    assert 0 < result.estimate <= 1.5 + 4 * result.std_error


def test_wos_evaluator_records_standard_errors(fast_wos):
    g = select_evaluator(Disk(0j, 1.0), 0.2j, "wos", wos_params=fast_wos)
    assert isinstance(g, WosEvaluator)
    estimate = g.estimate(0.5)
    assert estimate.method == "wos"
    assert estimate.error_bound == g.error_bound > 0
    assert estimate.meta["walks_used"] == fast_wos.walks
    assert g.estimate(1.5).value == 0.0
    values = g(np.array([0.5, -0.5]))
    assert values[0] == pytest.approx(estimate.value)
    assert len(g.results) == 2
