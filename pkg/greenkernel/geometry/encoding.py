"""
Canonical JSON encoding of domain descriptions.

    {"type": "disk", "center": [x, y], "radius": R}
    {"type": "annulus", "center": [x, y], "r_inner": r, "r_outer": R}
    {"type": "circle_domain", "outer": CURVE, "holes": [CURVE, ...]}
    {"type": "slit", "ambient": DISK, "segments": [[[x, y], [x, y]], ...]}
    {"type": "perforated", "ambient": DISK, "centers": [[x, y], ...], "log_radius": v | "-inf"}
    {"type": "ball3", "center": [x, y, z], "radius": R}
    {"type": "tube3", "ambient": BALL3, "polyline": [[x, y, z], ...],
     "tube_radius": r, "inner_radius": r0}

    CURVE = {"kind": "circle", "center": [x, y], "radius": R}
          | {"kind": "trig", "center": [x, y], "cos": [a0, ...], "sin": [b1, ...]}
"""

import math
import numbers

from greenkernel.exceptions import DomainError, SchemaError
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
)

_FIELDS = {
    "disk": {"center", "radius"},
    "annulus": {"center", "r_inner", "r_outer"},
    "circle_domain": {"outer", "holes"},
    "slit": {"ambient", "segments"},
    "perforated": {"ambient", "centers", "log_radius"},
    "ball3": {"center", "radius"},
    "tube3": {"ambient", "polyline", "tube_radius", "inner_radius"},
}
_OPTIONAL = {"tube3": {"inner_radius"}, "circle_domain": {"holes"}}
_CURVE_FIELDS = {"circle": {"center", "radius"}, "trig": {"center", "cos", "sin"}}


def _pair(value):
    return [float(value.real), float(value.imag)]


def encode_curve(curve) -> dict:
    if isinstance(curve, Circle):
        return {"kind": "circle", "center": _pair(curve.center), "radius": curve.radius}
    return {"kind": "trig", "center": _pair(curve.center), "cos": list(curve.cos), "sin": list(curve.sin)}


def encode_domain(d) -> dict:
    """DomainSpec -> JSON-ready dict."""
    if isinstance(d, Disk):
        return {"type": "disk", "center": _pair(d.center), "radius": d.radius}
    if isinstance(d, Annulus):
        return {"type": "annulus", "center": _pair(d.center), "r_inner": d.r_inner, "r_outer": d.r_outer}
    if isinstance(d, CircleDomain):
        return {
            "type": "circle_domain",
            "outer": encode_curve(d.outer),
            "holes": [encode_curve(h) for h in d.holes],
        }
    if isinstance(d, SlitDomain):
        return {
            "type": "slit",
            "ambient": encode_domain(d.ambient),
            "segments": [[_pair(p), _pair(q)] for p, q in d.segments],
        }
    if isinstance(d, PerforatedDisk):
        return {
            "type": "perforated",
            "ambient": encode_domain(d.ambient),
            "centers": [_pair(a) for a in d.centers],
            "log_radius": "-inf" if d.punctured else d.log_radius,
        }
    if isinstance(d, Ball3):
        return {"type": "ball3", "center": list(d.center), "radius": d.radius}
    if isinstance(d, TubeDomain3):
        return {
            "type": "tube3",
            "ambient": encode_domain(d.ambient),
            "polyline": [list(p) for p in d.polyline],
            "tube_radius": d.tube_radius,
            "inner_radius": d.inner_radius,
        }
    raise SchemaError(f"cannot encode {type(d).__name__}", field="type")


## ---------------------------- ##
##           Decoding            ##
## ---------------------------- ##

def _check_fields(obj, allowed, optional, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", field=where)
    for key in obj:
        if key not in allowed and key not in ("type", "kind"):
            raise SchemaError(f"unknown field '{key}' in {where}", field=key)
    for key in allowed - optional:
        if key not in obj:
            raise SchemaError(f"missing field '{key}' in {where}", field=key)


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise SchemaError(f"field '{name}' must be a number", field=name)
    return float(value)


def _vector(value, size, name):
    if not isinstance(value, (list, tuple)) or len(value) != size:
        raise SchemaError(f"field '{name}' must be a list of {size} numbers", field=name)
    return [_number(v, name) for v in value]


def _point2(value, name):
    x, y = _vector(value, 2, name)
    return complex(x, y)


def decode_curve(obj) -> object:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind not in _CURVE_FIELDS:
        raise SchemaError(f"unknown curve kind {kind!r}", field="kind")
    _check_fields(obj, _CURVE_FIELDS[kind], {"sin"}, f"{kind} curve")
    center = _point2(obj["center"], "center")
    if kind == "circle":
        return Circle(center, _number(obj["radius"], "radius"))
    cos = obj["cos"]
    sin = obj.get("sin", [])
    if not isinstance(cos, list) or not isinstance(sin, list):
        raise SchemaError("trig coefficients must be lists", field="cos")
    return TrigCurve(center, tuple(_number(v, "cos") for v in cos), tuple(_number(v, "sin") for v in sin))


def decode_domain(obj):
    """JSON dict -> DomainSpec; unknown fields and invariant violations raise SchemaError."""
    if not isinstance(obj, dict):
        raise SchemaError("domain must be an object", field="type")
    kind = obj.get("type")
    if kind not in _FIELDS:
        raise SchemaError(f"unknown domain type {kind!r}", field="type")
    _check_fields(obj, _FIELDS[kind], _OPTIONAL.get(kind, set()), kind)

    try:
        if kind == "disk":
            return Disk(_point2(obj["center"], "center"), _number(obj["radius"], "radius"))
        if kind == "annulus":
            return Annulus(
                _point2(obj["center"], "center"),
                _number(obj["r_inner"], "r_inner"),
                _number(obj["r_outer"], "r_outer"),
            )
        if kind == "circle_domain":
            holes = obj.get("holes", [])
            if not isinstance(holes, list):
                raise SchemaError("holes must be a list", field="holes")
            return CircleDomain(decode_curve(obj["outer"]), tuple(decode_curve(h) for h in holes))
        if kind == "slit":
            ambient = _decode_typed(obj["ambient"], "disk", "ambient")
            segments = obj["segments"]
            if not isinstance(segments, list):
                raise SchemaError("segments must be a list", field="segments")
            pairs = []
            for seg in segments:
                if not isinstance(seg, list) or len(seg) != 2:
                    raise SchemaError("each segment is a pair of points", field="segments")
                pairs.append((_point2(seg[0], "segments"), _point2(seg[1], "segments")))
            return SlitDomain(ambient, tuple(pairs))
        if kind == "perforated":
            ambient = _decode_typed(obj["ambient"], "disk", "ambient")
            centers = obj["centers"]
            if not isinstance(centers, list):
                raise SchemaError("centers must be a list", field="centers")
            log_radius = obj["log_radius"]
            if log_radius == "-inf":
                log_radius = -math.inf
            else:
                log_radius = _number(log_radius, "log_radius")
            return PerforatedDisk(ambient, tuple(_point2(a, "centers") for a in centers), log_radius)
        if kind == "ball3":
            return Ball3(tuple(_vector(obj["center"], 3, "center")), _number(obj["radius"], "radius"))
        # tube3
        ambient = _decode_typed(obj["ambient"], "ball3", "ambient")
        polyline = obj["polyline"]
        if not isinstance(polyline, list):
            raise SchemaError("polyline must be a list", field="polyline")
        return TubeDomain3(
            ambient,
            tuple(tuple(_vector(p, 3, "polyline")) for p in polyline),
            _number(obj["tube_radius"], "tube_radius"),
            _number(obj.get("inner_radius", 0.0), "inner_radius"),
        )
    except SchemaError:
        raise
    except DomainError as e:
        raise SchemaError(str(e), field=e.field) from e


def _decode_typed(obj, expected, name):
    if not isinstance(obj, dict) or obj.get("type") != expected:
        raise SchemaError(f"field '{name}' must be a {expected} object", field=name)
    return decode_domain(obj)
