"""
Evaluation grids for sup-norm discrepancies.

A grid is a uniform cover of a rectangle (box in 3D) plus boundary-adaptive
points: every boundary sample of the domains involved and its offsets at
each stated distance in 8 (2D) or 6 (3D) directions. A small disk around the
pole is excised.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from greenkernel.config import BaseConfig
from greenkernel.geometry.distance import boundary_sample_array
from greenkernel.geometry.domains import bounding_box, component_count, dimension

MAX_BOUNDARY_POINTS = 8192


@dataclass(frozen=True)
class GridSpec:
    bounds: Tuple[float, ...]
    pitch: float = BaseConfig.GRID_RESOLUTION
    pole_excision: float = BaseConfig.POLE_EXCISION
    boundary_offsets: Tuple[float, ...] = BaseConfig.BOUNDARY_OFFSETS
    boundary_samples: int = 256
    keep: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @property
    def dimension(self) -> int:
        return len(self.bounds) // 2

    @classmethod
    def covering(cls, domains: Sequence, pitch: float = BaseConfig.GRID_RESOLUTION, **kwargs) -> "GridSpec":
        """Grid over the union of the domains' bounding boxes, padded by two pitches."""
        boxes = np.array([bounding_box(d) for d in domains])
        lo = boxes[:, 0::2].min(axis=0) - 2 * pitch
        hi = boxes[:, 1::2].max(axis=0) + 2 * pitch
        bounds = tuple(float(v) for pair in zip(lo, hi) for v in pair)
        return cls(bounds=bounds, pitch=pitch, **kwargs)

    def uniform(self) -> np.ndarray:
        axes = [
            np.arange(self.bounds[2 * i], self.bounds[2 * i + 1] + 0.5 * self.pitch, self.pitch)
            for i in range(self.dimension)
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        if self.dimension == 2:
            return (mesh[0] + 1j * mesh[1]).ravel()
        return np.column_stack([m.ravel() for m in mesh])

    def _directions(self):
        if self.dimension == 2:
            return np.exp(0.25j * np.pi * np.arange(8))
        return np.vstack([np.eye(3), -np.eye(3)])

    def boundary_points(self, domains: Sequence) -> np.ndarray:
        parts = []
        directions = self._directions()
        for d in domains:
            components = component_count(d) if dimension(d) == 2 else 2
            m = max(4, min(self.boundary_samples, MAX_BOUNDARY_POINTS // components))
            samples, _ = boundary_sample_array(d, m)
            parts.append(samples)
            for offset in self.boundary_offsets:
                if self.dimension == 2:
                    parts.append((samples[:, None] + offset * directions[None, :]).ravel())
                else:
                    parts.append((samples[:, None, :] + offset * directions[None, :, :]).reshape(-1, 3))
        return np.concatenate(parts) if parts else self.uniform()[:0]

    def points(self, pole, domains: Sequence = ()) -> np.ndarray:
        pts = np.concatenate([self.uniform(), self.boundary_points(domains)])
        if self.dimension == 2:
            far = np.abs(pts - complex(pole)) > self.pole_excision
        else:
            far = np.linalg.norm(pts - np.asarray(pole, dtype=float), axis=1) > self.pole_excision
        pts = pts[far]
        if self.keep is not None:
            pts = pts[self.keep(pts)]
        return pts

    def metadata(self) -> dict:
        return {
            "bounds": list(self.bounds),
            "pitch": self.pitch,
            "pole_excision": self.pole_excision,
            "boundary_offsets": list(self.boundary_offsets),
            "boundary_samples": self.boundary_samples,
        }
