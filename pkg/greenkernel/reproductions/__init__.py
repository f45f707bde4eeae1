"""Named reproductions of the convergence theorems, bounds and counterexamples."""

import logging

from greenkernel.reproductions import bounds, counterexamples, theorems
from greenkernel.reproductions.base import NAMES, ReproductionOutcome, ReproductionSpec
from greenkernel.reproductions.writer import write_outcome

logger = logging.getLogger(__name__)

REPRODUCTIONS = {
    "thm-simply": theorems.uniform_convergence,
    "thm-multiply": theorems.uniform_convergence,
    "lemma-oneside": theorems.one_sided_bound,
    "lemma-slit": bounds.slit_decay,
    "bound-koebe": bounds.koebe,
    "bound-symm": bounds.symmetrization,
    "ex-annulus": counterexamples.annulus_puncture,
    "ex-net": counterexamples.net_perforation,
    "ex-tube3d": counterexamples.ball_tube,
}


def run_reproduction(spec: ReproductionSpec) -> ReproductionOutcome:
    """
    Run one reproduction and write its files when ``spec.output`` is set.

    The outcome is deterministic given the request and its seed.
    """
    logger.info(f"reproduction {spec.name}: n values {spec.n_values or 'default'}, seed {spec.seed}")
    outcome = REPRODUCTIONS[spec.name](spec)
    if spec.output:
        write_outcome(outcome, spec.output)
    logger.info(f"reproduction {spec.name}: {'accepted' if outcome.accepted else 'rejected'}")
    return outcome


__all__ = ["NAMES", "REPRODUCTIONS", "ReproductionOutcome", "ReproductionSpec", "run_reproduction", "write_outcome"]
