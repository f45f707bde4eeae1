"""Kernel convergence verification and discrepancy measurements."""

from greenkernel.convergence.checks import (
    KernelCheckResult,
    kernel_check,
    koebe_bound_check,
    monotonicity_check,
    one_sided_sup,
    sup_discrepancy,
    symmetrization_check,
)
from greenkernel.convergence.experiments import pointwise_limit_experiment, slit_decay_experiment
from greenkernel.convergence.grids import GridSpec
from greenkernel.convergence.report import ConvergenceReport, ReportRow, build_report
from greenkernel.convergence.sequences import (
    SEQUENCE_FAMILIES,
    DomainSequence,
    PowerRate,
    TableRate,
    sequence_from_dict,
    sequence_to_dict,
)

__all__ = [
    "ConvergenceReport", "DomainSequence", "GridSpec", "KernelCheckResult",
    "PowerRate", "ReportRow", "SEQUENCE_FAMILIES", "TableRate", "build_report",
    "kernel_check", "koebe_bound_check", "monotonicity_check", "one_sided_sup",
    "pointwise_limit_experiment", "sequence_from_dict", "sequence_to_dict",
    "slit_decay_experiment", "sup_discrepancy", "symmetrization_check",
]
