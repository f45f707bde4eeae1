"""
Domain sequences with a declared kernel limit and base point.
"""

import logging
import math
import numbers
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from greenkernel.exceptions import DomainError, SchemaError
from greenkernel.geometry.distance import contains
from greenkernel.geometry.domains import Annulus, CircleDomain, Disk, PerforatedDisk, TrigCurve, dimension
from greenkernel.geometry.encoding import decode_domain, encode_domain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerRate:
    """scale * n^-power + offset."""

    scale: float
    power: float = 1.0
    offset: float = 0.0

    def __call__(self, n: int) -> float:
        return self.scale * n ** (-self.power) + self.offset

    def to_dict(self) -> dict:
        out = {"kind": "power", "scale": self.scale, "power": self.power}
        if self.offset:
            out["offset"] = self.offset
        return out


@dataclass(frozen=True)
class TableRate:
    """Rates declared per index, e.g. measured covering radii."""

    values: Tuple[Tuple[int, float], ...]

    def __call__(self, n: int) -> float:
        return dict(self.values)[n]

    def to_dict(self) -> dict:
        return {"kind": "table", "values": {str(n): v for n, v in self.values}}


@dataclass(frozen=True)
class DomainSequence:
    """
    n -> Omega_n with kernel limit ``limit`` with respect to ``pole``.

    :param boundary_rate: optional analytic upper bound, tending to 0, for
        the distance from the limit's boundary to the boundary of Omega_n.
    """

    name: str
    generator: Callable[[int], object]
    limit: object
    pole: object
    index_set: Tuple[int, ...]
    boundary_rate: Optional[Callable[[int], float]] = None
    _cache: Dict[int, object] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        index = tuple(int(n) for n in self.index_set)
        if not index:
            raise DomainError("a sequence needs at least one index", field="n_values")
        if any(b <= a for a, b in zip(index, index[1:])):
            raise DomainError("sequence indices must be strictly increasing", field="n_values")
        object.__setattr__(self, "index_set", index)
        if dimension(self.limit) == 2:
            object.__setattr__(self, "pole", complex(self.pole))
        else:
            object.__setattr__(self, "pole", tuple(float(c) for c in self.pole))

        probe = [self.pole]
        if not contains(self.limit, probe)[0]:
            raise DomainError(f"pole {self.pole} is not inside the limit domain", field="pole")
        for n in index:
            if not contains(self.domain(n), probe)[0]:
                raise DomainError(f"pole {self.pole} is not inside the domain with n={n}", field="pole")

    def domain(self, n: int):
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]

    def domains(self):
        return [(n, self.domain(n)) for n in self.index_set]


## ---------------------------- ##
##           Families            ##
## ---------------------------- ##

def thm_simply_sequence(n_values=(8, 16, 32, 64, 128)) -> DomainSequence:
    """
    Trig curves r(t) = 1 + cos(3t)/n converging to the unit disk, pole 0.

    n = 4 is left out of the defaults: the fundamental-solutions residual on
    r = 1 + cos(3t)/4 stays near 3e-3 with the default charges.
    """
    return DomainSequence(
        name="thm-simply",
        generator=lambda n: CircleDomain(TrigCurve(0j, (1.0, 0.0, 0.0, 1.0 / n))),
        limit=Disk(0j, 1.0),
        pole=0j,
        index_set=tuple(n_values),
        boundary_rate=PowerRate(1.0, 1.0),
    )


def thm_multiply_sequence(n_values=(4, 8, 16, 32, 64)) -> DomainSequence:
    """Annuli (1 + 1/n)/3 < |z| < 1 - 1/(2n) converging to 1/3 < |z| < 1, pole 0.7."""
    return DomainSequence(
        name="thm-multiply",
        generator=lambda n: Annulus(0j, (1.0 + 1.0 / n) / 3.0, 1.0 - 1.0 / (2.0 * n)),
        limit=Annulus(0j, 1.0 / 3.0, 1.0),
        pole=0.7,
        index_set=tuple(n_values),
        boundary_rate=PowerRate(0.5, 1.0),
    )


def ex_annulus_sequence(n_values=(4, 8, 16, 32)) -> DomainSequence:
    """Annuli 1/n < |z| < 1 converging to the punctured disk, pole 1/2."""
    return DomainSequence(
        name="ex-annulus",
        generator=lambda n: Annulus(0j, 1.0 / n, 1.0),
        limit=PerforatedDisk(Disk(0j, 1.0), (0j,), -math.inf),
        pole=0.5,
        index_set=tuple(n_values),
        boundary_rate=PowerRate(1.0, 1.0),
    )


SEQUENCE_FAMILIES = {
    "thm-simply": thm_simply_sequence,
    "thm-multiply": thm_multiply_sequence,
    "ex-annulus": ex_annulus_sequence,
}


## ---------------------------- ##
##             JSON              ##
## ---------------------------- ##

_SEQUENCE_FIELDS = {"type", "name", "limit", "pole", "domains", "boundary_rate", "family", "n_values"}


def rate_from_dict(obj):
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise SchemaError("boundary_rate must be an object or null", field="boundary_rate")
    kind = obj.get("kind")
    if kind == "power":
        unknown = set(obj) - {"kind", "scale", "power", "offset"}
        if unknown:
            raise SchemaError(f"unknown field '{sorted(unknown)[0]}' in boundary_rate", field=sorted(unknown)[0])
        if "scale" not in obj:
            raise SchemaError("missing field 'scale' in boundary_rate", field="scale")
        return PowerRate(float(obj["scale"]), float(obj.get("power", 1.0)), float(obj.get("offset", 0.0)))
    if kind == "table":
        unknown = set(obj) - {"kind", "values"}
        if unknown or not isinstance(obj.get("values"), dict):
            raise SchemaError("table rates need a 'values' object", field="values")
        return TableRate(tuple(sorted((int(k), float(v)) for k, v in obj["values"].items())))
    raise SchemaError(f"unknown boundary_rate kind {kind!r}", field="kind")


def _index_list(values):
    if not isinstance(values, list) or not values:
        raise SchemaError("n_values must be a nonempty list", field="n_values")
    if not all(isinstance(v, numbers.Integral) and not isinstance(v, bool) for v in values):
        raise SchemaError("n_values must be integers", field="n_values")
    return tuple(values)


def sequence_from_dict(obj) -> DomainSequence:
    """Explicit ({limit, pole, domains}) or named ({family, n_values}) sequence."""
    if not isinstance(obj, dict) or obj.get("type") != "sequence":
        raise SchemaError("a sequence document needs type 'sequence'", field="type")
    for key in obj:
        if key not in _SEQUENCE_FIELDS:
            raise SchemaError(f"unknown field '{key}' in sequence", field=key)

    try:
        if "family" in obj:
            family = SEQUENCE_FAMILIES.get(obj["family"])
            if family is None:
                raise SchemaError(f"unknown sequence family {obj['family']!r}", field="family")
            extra = set(obj) - {"type", "family", "n_values"}
            if extra:
                raise SchemaError(f"field '{sorted(extra)[0]}' is not allowed with 'family'", field=sorted(extra)[0])
            if "n_values" in obj:
                return family(_index_list(obj["n_values"]))
            return family()

        for key in ("limit", "pole", "domains"):
            if key not in obj:
                raise SchemaError(f"missing field '{key}' in sequence", field=key)
        limit = decode_domain(obj["limit"])
        domains = {}
        if not isinstance(obj["domains"], list):
            raise SchemaError("domains must be a list", field="domains")
        for item in obj["domains"]:
            if not isinstance(item, dict) or set(item) != {"n", "domain"}:
                raise SchemaError("each domains entry is {n, domain}", field="domains")
            domains[int(item["n"])] = decode_domain(item["domain"])
        pole = obj["pole"]
        if not isinstance(pole, list) or len(pole) not in (2, 3):
            raise SchemaError("pole must be a list of 2 or 3 numbers", field="pole")
        pole = complex(pole[0], pole[1]) if len(pole) == 2 else tuple(pole)
        return DomainSequence(
            name=obj.get("name", "sequence"),
            generator=domains.__getitem__,
            limit=limit,
            pole=pole,
            index_set=tuple(domains),
            boundary_rate=rate_from_dict(obj.get("boundary_rate")),
        )
    except SchemaError:
        raise
    except DomainError as e:
        raise SchemaError(str(e), field=e.field) from e


def sequence_to_dict(seq: DomainSequence) -> dict:
    if dimension(seq.limit) == 2:
        pole = [seq.pole.real, seq.pole.imag]
    else:
        pole = list(seq.pole)
    rate = seq.boundary_rate
    return {
        "type": "sequence",
        "name": seq.name,
        "limit": encode_domain(seq.limit),
        "pole": pole,
        "domains": [{"n": n, "domain": encode_domain(d)} for n, d in seq.domains()],
        "boundary_rate": rate.to_dict() if hasattr(rate, "to_dict") else None,
    }
