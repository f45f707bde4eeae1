"""
Reproduction requests and outcomes shared by every named reproduction.
"""

import numbers
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from greenkernel.convergence.report import ConvergenceReport
from greenkernel.exceptions import DomainError
from greenkernel.mfs_solver import MfsParams
from greenkernel.wos_oracle import WosParams

NAMES = (
    "thm-simply",
    "thm-multiply",
    "lemma-oneside",
    "lemma-slit",
    "bound-koebe",
    "bound-symm",
    "ex-annulus",
    "ex-net",
    "ex-tube3d",
)


@dataclass(frozen=True)
class ReproductionSpec:
    """
    :param name: one of ``NAMES``.
    :param n_values: sequence indices; None selects the reproduction's defaults.
    :param walks: walks per WoS evaluation; None selects the reproduction's default.
    :param charges: fundamental-solution charges per boundary component.
    :param method: forced evaluator for the approximating domains.
    :param output: directory for CSV/JSON files; None writes nothing.
    """

    name: str
    n_values: Optional[Tuple[int, ...]] = None
    seed: int = 0
    walks: Optional[int] = None
    eps_shell: Optional[float] = None
    charges: Optional[int] = None
    method: Optional[str] = None
    output: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if self.name not in NAMES:
            raise DomainError(f"unknown reproduction {self.name!r}; known: {', '.join(NAMES)}", field="name")
        if self.n_values is not None:
            values = tuple(self.n_values)
            if not values:
                raise DomainError("n_values must not be empty", field="n_values")
            if not all(isinstance(n, numbers.Integral) and not isinstance(n, bool) and n >= 1 for n in values):
                raise DomainError("n_values must be positive integers", field="n_values")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise DomainError("n_values must be strictly increasing", field="n_values")
            object.__setattr__(self, "n_values", tuple(int(n) for n in values))

    def wos_params(self, default_walks: int = None) -> WosParams:
        walks = self.walks or default_walks
        kwargs = {"seed": self.seed, "eps_shell": self.eps_shell, "workers": self.workers}
        if walks is not None:
            kwargs["walks"] = walks
        return WosParams(**kwargs)

    def mfs_params(self) -> Optional[MfsParams]:
        return MfsParams(charges_per_component=self.charges) if self.charges else None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "n_values": list(self.n_values) if self.n_values else None,
            "seed": self.seed,
            "walks": self.walks,
            "eps_shell": self.eps_shell,
            "charges": self.charges,
            "method": self.method,
        }


@dataclass
class ReproductionOutcome:
    name: str
    accepted: bool
    reports: Dict[str, ConvergenceReport] = field(default_factory=dict)
    tables: Dict[str, List[dict]] = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "accepted": self.accepted,
            "reports": {key: report.as_dict() for key, report in self.reports.items()},
            "tables": self.tables,
            "summary": self.summary,
        }


def finish(spec: ReproductionSpec, checks: Dict[str, bool], reports=None, tables=None, **summary) -> ReproductionOutcome:
    """Outcome accepted iff every named check holds."""
    checks = {key: bool(value) for key, value in checks.items()}
    accepted = all(checks.values())
    return ReproductionOutcome(
        name=spec.name,
        accepted=accepted,
        reports=reports or {},
        tables=tables or {},
        summary={"spec": spec.as_dict(), "checks": checks, "accepted": accepted, **summary},
    )
