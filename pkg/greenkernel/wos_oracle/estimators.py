"""
Monte Carlo estimators of Green's functions from walk exit points.

2D: g(z, w) = -log|z - w| + E[log|X - w|]
3D: g(x, w) = |x - w|^-1 - E[|X - w|^-1]
"""

import logging
import math

import numpy as np

from greenkernel.exceptions import PoleError, PreconditionError
from greenkernel.geometry.distance import contains
from greenkernel.geometry.domains import dimension
from greenkernel.wos_oracle.params import WosParams, WosResult
from greenkernel.wos_oracle.walker import simulate_walks

logger = logging.getLogger(__name__)


def _check_points(d, points, dim):
    if dimension(d) != dim:
        raise PreconditionError(f"{type(d).__name__} is not a {dim}D domain")
    probe = [points[0], points[1]] if dim == 2 else [tuple(points[0]), tuple(points[1])]
    inside = contains(d, probe)
    if not inside.all():
        raise PreconditionError("both the evaluation point and the pole must lie inside the domain")


def _summarize(values: np.ndarray, singular: float, sign: float, batch, p, eps) -> WosResult:
    used = values.size
    if used < 2:
        raise PreconditionError("fewer than two walks terminated")
    items = values.tolist()
    mean = math.fsum(items) / used
    variance = math.fsum((v - mean) ** 2 for v in items) / (used - 1)
    result = WosResult(
        estimate=singular + sign * mean,
        std_error=math.sqrt(variance / used),
        walks_used=used,
        truncated_walks=int(batch.truncated.sum()),
        meta={
            "mean_steps": float(batch.steps.mean()),
            "eps_shell": eps,
            "seed": p.seed,
        },
    )
    if result.warning:
        logger.warning(
            f"WoS truncated {result.truncated_walks} of {p.walks} walks; geometry may trap walks"
        )
    return result


def estimate_green_2d(d, z: complex, w: complex, p: WosParams = None) -> WosResult:
    """Raw (unclamped) estimate of g(z, w) with its standard error."""
    p = p or WosParams()
    z, w = complex(z), complex(w)
    if z == w:
        raise PoleError(f"evaluation at the pole {w}")
    _check_points(d, (z, w), 2)
    batch = simulate_walks(d, z, p)
    done = ~batch.truncated
    values = np.log(np.abs(batch.exits[done] - w))
    return _summarize(values, -math.log(abs(z - w)), 1.0, batch, p, p.shell(d))


def estimate_green_3d(d, x, w, p: WosParams = None) -> WosResult:
    p = p or WosParams()
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    gap = float(np.linalg.norm(x - w))
    if gap == 0:
        raise PoleError(f"evaluation at the pole {tuple(w)}")
    _check_points(d, (x, w), 3)
    batch = simulate_walks(d, x, p)
    done = ~batch.truncated
    values = 1.0 / np.linalg.norm(batch.exits[done] - w, axis=1)
    return _summarize(values, 1.0 / gap, -1.0, batch, p, p.shell(d))
