"""
Uniform convergence for kernel-convergent sequences with boundedly many
boundary components, and the one-sided bound that holds for every
kernel-convergent sequence.
"""

import logging

from greenkernel.config import BaseConfig
from greenkernel.convergence import build_report, kernel_check
from greenkernel.convergence.sequences import thm_multiply_sequence, thm_simply_sequence
from greenkernel.reproductions.base import ReproductionSpec, finish

logger = logging.getLogger(__name__)

SUP_TARGET = 0.05
ONE_SIDED_FLOOR = -1e-8
CHECKPOINT_N = 64

FAMILIES = {
    "thm-simply": thm_simply_sequence,
    "thm-multiply": thm_multiply_sequence,
}


def _sequence(spec: ReproductionSpec, family: str):
    factory = FAMILIES[family]
    return factory(spec.n_values) if spec.n_values else factory()


def _report(spec: ReproductionSpec, seq):
    return build_report(
        seq,
        pitch=BaseConfig.GRID_RESOLUTION,
        method=spec.method,
        mfs_params=spec.mfs_params(),
        wos_params=spec.wos_params(),
    )


def _one_sided_ok(report) -> bool:
    return all(row.one_sided_M_n >= ONE_SIDED_FLOOR - row.err for row in report.rows)


def _tail_non_increasing(report, count: int = 3) -> bool:
    tail = report.rows[-count:]
    return all(b.sup_two_sided <= a.sup_two_sided + a.err + b.err for a, b in zip(tail, tail[1:]))


def uniform_convergence(spec: ReproductionSpec):
    """thm-simply / thm-multiply: two-sided sup below 0.05 and a passing kernel check."""
    seq = _sequence(spec, spec.name)
    check = kernel_check(seq, BaseConfig.GRID_RESOLUTION)
    report = _report(spec, seq)

    largest = report.rows[-1]
    below = largest.sup_two_sided < SUP_TARGET
    if CHECKPOINT_N in seq.index_set:
        below = below and report.row(CHECKPOINT_N).sup_two_sided < SUP_TARGET

    checks = {
        "sup_below_target": below,
        "tail_non_increasing": _tail_non_increasing(report),
        "one_sided_non_negative": _one_sided_ok(report),
        "kernel_check": check.passed,
    }
    return finish(spec, checks, reports={spec.name: report}, kernel_check=check.as_dict())


def one_sided_bound(spec: ReproductionSpec):
    """lemma-oneside: M_n >= 0 up to tolerance and M_n -> 0 on both families."""
    reports, checks = {}, {}
    for family in FAMILIES:
        report = _report(spec, _sequence(spec, family))
        reports[family] = report
        checks[f"{family}_non_negative"] = _one_sided_ok(report)
        checks[f"{family}_below_target"] = report.rows[-1].one_sided_M_n < SUP_TARGET
        logger.info(f"one-sided bound on {family}: M_n at largest n {report.rows[-1].one_sided_M_n:.4g}")
    return finish(spec, checks, reports=reports)
