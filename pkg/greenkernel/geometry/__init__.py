"""Domain representations, boundary queries, Mobius maps and sampling."""

from greenkernel.geometry.distance import (
    BoundaryDistance,
    boundary_query,
    boundary_sample,
    boundary_sample_array,
    contains,
    distance_to_boundary,
)
from greenkernel.geometry.domains import (
    Annulus,
    Ball3,
    Circle,
    CircleDomain,
    Disk,
    PerforatedDisk,
    SlitDomain,
    TrigCurve,
    TubeDomain3,
    component_count,
    dimension,
)
from greenkernel.geometry.encoding import decode_domain, encode_domain
from greenkernel.geometry.mobius import MobiusMap, mobius_apply, mobius_image_domain, mobius_inverse
from greenkernel.geometry.points import INFINITY, Point3, chordal_distance
from greenkernel.geometry.sampling import AnnularRegion, net_points

__all__ = [
    "Annulus", "AnnularRegion", "Ball3", "BoundaryDistance", "Circle", "CircleDomain",
    "Disk", "INFINITY", "MobiusMap", "PerforatedDisk", "Point3", "SlitDomain",
    "TrigCurve", "TubeDomain3", "boundary_query", "boundary_sample",
    "boundary_sample_array", "chordal_distance", "component_count", "contains",
    "decode_domain", "dimension", "distance_to_boundary", "encode_domain",
    "mobius_apply", "mobius_image_domain", "mobius_inverse", "net_points",
]
