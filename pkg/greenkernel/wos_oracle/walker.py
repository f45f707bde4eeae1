"""
Walk-on-spheres exit sampling.

Walks are grouped into fixed blocks of ``WALKS_PER_STREAM`` consecutive
indices. Block b draws from its own Philox stream keyed by (seed, b) and is
always simulated in full, so the exit point of every walk depends only on
the inputs, the seed and the walk index, whatever the total walk count or
the number of worker threads.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional

import numpy as np
from scipy.spatial import cKDTree

from greenkernel.exceptions import PreconditionError
from greenkernel.geometry.distance import boundary_query, nearest_hole
from greenkernel.geometry.domains import PerforatedDisk, dimension
from greenkernel.geometry.points import Point3

logger = logging.getLogger(__name__)

WALKS_PER_STREAM = 1024
TINY_HOLE_RATIO = 1e-3
MAX_REJECTIONS = 64


class WalkBatch(NamedTuple):
    exits: np.ndarray
    steps: np.ndarray
    truncated: np.ndarray


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Counter-based generator of one block of walks."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(block,))))


class _TinyHoles:
    """Per-hole free radius rho_k and the holes small enough for the exact annulus step."""

    def __init__(self, d: PerforatedDisk):
        self.centers = np.asarray(d.centers, dtype=complex)
        self.log_radius = d.log_radius
        self.radius = d.hole_radius
        c, R = d.ambient.center, d.ambient.radius
        room = R - np.abs(self.centers - c)
        if self.centers.size > 1:
            xy = np.column_stack([self.centers.real, self.centers.imag])
            nn, _ = cKDTree(xy).query(xy, k=2)
            room = np.minimum(room, nn[:, 1])
        self.rho = 0.5 * room
        with np.errstate(divide="ignore"):
            self.tiny = (self.log_radius <= np.log(TINY_HOLE_RATIO * self.rho))

    def step(self, z, idx, s, rng):
        """
        Exact exit of the annulus s < |z - a| < rho around a tiny hole.

        Returns (new positions, absorbed mask); absorbed walks end on the hole.
        """
        a = self.centers[idx]
        rho = self.rho[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            p_hit = np.log(rho / s) / (np.log(rho) - self.log_radius)
        p_hit = np.where(np.isfinite(p_hit), p_hit, 1.0)
        hit = rng.random(z.size) < p_hit

        x = (z - a) / rho
        out = np.empty(z.size, dtype=complex)
        direction = np.where(s > 0, (z - a) / np.where(s > 0, s, 1.0), 1.0)
        out[hit] = a[hit] + self.radius * direction[hit]

        pending = np.flatnonzero(~hit)
        for attempt in range(MAX_REJECTIONS):
            if pending.size == 0:
                break
            xp = x[pending]
            U = np.exp(2j * np.pi * rng.random(pending.size))
            zeta = (U + xp) / (1.0 + np.conj(xp) * U)
            accept_p = np.clip(1.0 - p_hit[pending] * np.abs(zeta - xp) ** 2 / (1.0 - np.abs(xp) ** 2), 0.0, 1.0)
            accept = rng.random(pending.size) < accept_p
            if attempt == MAX_REJECTIONS - 1:
                accept[:] = True
            chosen = pending[accept]
            out[chosen] = a[chosen] + rho[chosen] * zeta[accept]
            pending = pending[~accept]
        return out, hit


def simulate_block(d, start, eps: float, max_steps: int, seed: int, block: int) -> WalkBatch:
    """All ``WALKS_PER_STREAM`` walks of one block."""
    rng = block_rng(seed, block)
    count = WALKS_PER_STREAM
    planar = dimension(d) == 2
    tiny = _TinyHoles(d) if isinstance(d, PerforatedDisk) and d.centers else None

    if planar:
        pos = np.full(count, complex(start))
        exits = np.full(count, complex(np.nan, np.nan))
    else:
        pos = np.tile(np.asarray(start, dtype=float), (count, 1))
        exits = np.full((count, 3), np.nan)
    steps = np.zeros(count, dtype=np.int64)
    active = np.arange(count)

    for _ in range(max_steps):
        if active.size == 0:
            break
        z = pos[active]
        annulus = np.zeros(active.size, dtype=bool)
        if tiny is not None and tiny.tiny.any():
            idx, s = nearest_hole(d, z)
            annulus = tiny.tiny[idx] & (s <= 0.5 * tiny.rho[idx])
            if tiny.radius > 0:
                annulus &= s > tiny.radius

        dist, nearest, _ = boundary_query(d, z)
        absorbed = (dist < eps) & ~annulus
        exits[active[absorbed]] = nearest[absorbed]

        moving = ~absorbed & ~annulus
        radius = dist[moving]
        if planar:
            pos[active[moving]] = z[moving] + radius * np.exp(2j * np.pi * rng.random(radius.size))
        else:
            g = rng.standard_normal((radius.size, 3))
            g /= np.linalg.norm(g, axis=1)[:, None]
            pos[active[moving]] = z[moving] + radius[:, None] * g

        finished = absorbed
        if annulus.any():
            moved, hit = tiny.step(z[annulus], idx[annulus], s[annulus], rng)
            rows = active[annulus]
            pos[rows] = moved
            exits[rows[hit]] = moved[hit]
            finished = finished.copy()
            finished[np.flatnonzero(annulus)[hit]] = True

        steps[active] += 1
        active = active[~finished]

    truncated = np.zeros(count, dtype=bool)
    truncated[active] = True
    return WalkBatch(exits, steps, truncated)


def _block_count(walks: int) -> int:
    return math.ceil(walks / WALKS_PER_STREAM)


def simulate_walks(d, start, p) -> WalkBatch:
    """Run ``p.walks`` walks; results are assembled in walk-index order."""
    eps = p.shell(d)

    def run(block):
        return simulate_block(d, start, eps, p.max_steps, p.seed, block)

    items = range(_block_count(p.walks))
    if p.workers > 1:
        with ThreadPoolExecutor(max_workers=p.workers) as pool:
            batches = list(pool.map(run, items))
    else:
        batches = [run(item) for item in items]

    # the last block is padded; its surplus walks are dropped
    batch = WalkBatch(
        np.concatenate([b.exits for b in batches])[:p.walks],
        np.concatenate([b.steps for b in batches])[:p.walks],
        np.concatenate([b.truncated for b in batches])[:p.walks],
    )
    logger.debug(
        f"WoS: {p.walks} walks, eps {eps:.2e}, mean steps {batch.steps.mean():.1f}, "
        f"truncated {int(batch.truncated.sum())}"
    )
    return batch


def wos_exit_sample(d, start, p, walk_index: int) -> Optional[object]:
    """
    Exit point of one walk, or None when the walk was truncated.

    The walk's whole block is replayed, so the result equals the exit the
    estimators see for the same walk index.
    """
    if walk_index < 0:
        raise PreconditionError("walk_index must be non-negative")
    _, _, inside = boundary_query(d, [start] if dimension(d) == 2 else [tuple(start)])
    if not inside[0]:
        raise PreconditionError(f"start point {start} is not inside the domain")

    block = walk_index // WALKS_PER_STREAM
    batch = simulate_block(d, start, p.shell(d), p.max_steps, p.seed, block)
    offset = walk_index % WALKS_PER_STREAM
    if batch.truncated[offset]:
        return None
    if dimension(d) == 2:
        return complex(batch.exits[offset])
    return Point3(*batch.exits[offset])
