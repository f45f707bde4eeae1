"""
Walk-on-spheres parameters and results.
"""

from dataclasses import dataclass, field
from typing import Optional

from greenkernel.config import BaseConfig
from greenkernel.exceptions import PreconditionError
from greenkernel.geometry.domains import diameter

TRUNCATION_WARNING = 1e-3


@dataclass(frozen=True)
class WosParams:
    """
    :param walks: number of walks (>= 100).
    :param eps_shell: absorption shell width; None means 1e-4 x domain diameter.
    :param max_steps: steps after which a walk is truncated.
    :param seed: 64-bit seed of the counter-based streams.
    :param workers: threads over walk blocks; never changes the result.
    """

    walks: int = BaseConfig.WOS_WALKS
    eps_shell: Optional[float] = None
    max_steps: int = BaseConfig.WOS_MAX_STEPS
    seed: int = BaseConfig.WOS_SEED
    workers: int = 1

    def __post_init__(self):
        if self.walks < 100:
            raise PreconditionError(f"walks must be at least 100, got {self.walks}")
        if self.eps_shell is not None and not self.eps_shell > 0:
            raise PreconditionError(f"eps_shell must be positive, got {self.eps_shell}")
        if self.max_steps < 1:
            raise PreconditionError("max_steps must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise PreconditionError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise PreconditionError("workers must be positive")

    def shell(self, d) -> float:
        if self.eps_shell is not None:
            return self.eps_shell
        return BaseConfig.WOS_EPS_FACTOR * diameter(d)


@dataclass(frozen=True)
class WosResult:
    estimate: float
    std_error: float
    walks_used: int
    truncated_walks: int
    meta: dict = field(default_factory=dict)

    @property
    def truncated_fraction(self) -> float:
        total = self.walks_used + self.truncated_walks
        return self.truncated_walks / total if total else 0.0

    @property
    def warning(self) -> bool:
        """Set when at least 1e-3 of the walks were truncated."""
        return self.truncated_fraction >= TRUNCATION_WARNING

    def as_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "walks_used": self.walks_used,
            "truncated_walks": self.truncated_walks,
            "warning": self.warning,
            **self.meta,
        }
