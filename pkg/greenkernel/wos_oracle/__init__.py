"""Walk-on-spheres Monte Carlo estimators."""

from greenkernel.wos_oracle.estimators import estimate_green_2d, estimate_green_3d
from greenkernel.wos_oracle.params import WosParams, WosResult
from greenkernel.wos_oracle.walker import WALKS_PER_STREAM, simulate_walks, wos_exit_sample

__all__ = [
    "WALKS_PER_STREAM", "WosParams", "WosResult", "estimate_green_2d",
    "estimate_green_3d", "simulate_walks", "wos_exit_sample",
]
