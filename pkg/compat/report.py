"""
Full compatibility classification of a POVM pair and the hierarchy property suite.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from measurement import Povm, random_povm
from qmat import random_unitary
from sdpcore import DEFAULT_SOLVER, SolverSettings, restart_seeds
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import HierarchyViolation

from .relations import (
    JointMeasurabilityResult,
    NondisturbanceResult,
    commutes,
    jointly_measurable,
    nondisturbance,
)

logger = logging.getLogger(__name__)


@dataclass
class CompatReport:
    """Where a pair sits in the hierarchy commuting => nondisturbing => jointly measurable."""

    commuting: bool
    max_commutator_norm: float
    jointly_measurable: bool
    forward: NondisturbanceResult
    backward: NondisturbanceResult
    joint: Optional[JointMeasurabilityResult] = None
    first_kind: Dict[str, bool] = field(default_factory=dict)

    @property
    def nondisturbing_forward(self) -> bool:
        return self.forward.nondisturbing

    @property
    def nondisturbing_backward(self) -> bool:
        return self.backward.nondisturbing

    def hierarchy_errors(self) -> List[str]:
        errors = []
        if self.commuting and not (self.nondisturbing_forward and self.nondisturbing_backward):
            errors.append("commuting pair reported as disturbing")
        if (self.nondisturbing_forward or self.nondisturbing_backward) and not self.jointly_measurable:
            errors.append("nondisturbing pair reported as not jointly measurable")
        return errors

    def check(self) -> "CompatReport":
        errors = self.hierarchy_errors()
        if errors:
            raise HierarchyViolation("; ".join(errors))
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "commuting": self.commuting,
            "max_commutator_norm": self.max_commutator_norm,
            "jointly_measurable": self.jointly_measurable,
            "joint_povm": self.joint.joint.to_dict() if self.joint and self.joint.joint else None,
            "nondisturbing_forward": self.nondisturbing_forward,
            "nondisturbing_backward": self.nondisturbing_backward,
            "disturbance_forward": self.forward.to_dict(),
            "disturbance_backward": self.backward.to_dict(),
            "first_kind": dict(self.first_kind),
        }


def classify(a: Povm, b: Povm, settings: SolverSettings = DEFAULT_SOLVER,
             tolerances: Tolerances = DEFAULT_TOLERANCES, with_first_kind: bool = True) -> CompatReport:
    """
    Run every pairwise relation on (a, b) and check the hierarchy.

    Args:
        a: First POVM
        b: Second POVM
        settings: Solver settings shared by the SDPs
        tolerances: Decision thresholds
        with_first_kind: Also decide whether each operand is of the first kind

    Returns:
        CompatReport

    Raises:
        HierarchyViolation: If the verdicts contradict the hierarchy
    """
    comm = commutes(a, b, tolerances.commutator)
    forward = nondisturbance(a, b, settings, tolerances)
    backward = nondisturbance(b, a, settings, tolerances)
    jm = jointly_measurable(a, b, settings=settings)
    first = {}
    if with_first_kind:
        first = {
            "a": nondisturbance(a, a, settings, tolerances).nondisturbing,
            "b": nondisturbance(b, b, settings, tolerances).nondisturbing,
        }
    report = CompatReport(comm.commuting, comm.max_commutator_norm, jm.feasible, forward, backward, jm, first)
    return report.check()


def random_commuting_povm(dim: int, outcomes: int, rng: np.random.Generator,
                          basis: Optional[np.ndarray] = None) -> Povm:
    """A POVM diagonal in ``basis`` (random unitary when omitted)."""
    u = random_unitary(dim, rng) if basis is None else basis
    weights = rng.dirichlet(np.ones(outcomes), size=dim)
    return Povm([(u * weights[:, x]) @ u.conj().T for x in range(outcomes)])


@dataclass
class HierarchyStats:
    dim: int
    trials: int
    seed: int
    commuting: int = 0
    nondisturbing: int = 0
    jointly_measurable: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "trials": self.trials,
            "seed": self.seed,
            "commuting": self.commuting,
            "nondisturbing": self.nondisturbing,
            "jointly_measurable": self.jointly_measurable,
            "failures": list(self.failures),
            "passed": self.passed,
        }


def hierarchy_suite(dim: int, trials: int, seed: int = 0, outcomes: int = 2,
                    settings: SolverSettings = DEFAULT_SOLVER,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> HierarchyStats:
    """
    Property suite over random pairs: even trials draw commuting pairs, odd trials generic ones.

    Checks commuting => D = 0, D = 0 => jointly measurable and, for qubits,
    D = 0 => commuting.
    """
    stats = HierarchyStats(dim, trials, seed)
    for t, trial_seed in enumerate(restart_seeds(seed, trials)):
        rng = np.random.default_rng(trial_seed)
        if t % 2 == 0:
            u = random_unitary(dim, rng)
            a = random_commuting_povm(dim, outcomes, rng, u)
            b = random_commuting_povm(dim, outcomes, rng, u)
        else:
            a = random_povm(dim, outcomes, rng)
            b = random_povm(dim, outcomes, rng)
        comm = commutes(a, b, tolerances.commutator)
        nd = nondisturbance(a, b, settings, tolerances)
        jm = jointly_measurable(a, b, settings=settings)
        stats.commuting += comm.commuting
        stats.nondisturbing += nd.nondisturbing
        stats.jointly_measurable += jm.feasible
        problems = []
        if comm.commuting and not nd.nondisturbing:
            problems.append("commuting but disturbing")
        if nd.nondisturbing and not jm.feasible:
            problems.append("nondisturbing but not jointly measurable")
        if dim == 2 and nd.nondisturbing and not comm.commuting:
            problems.append("qubit pair nondisturbing without commuting")
        if problems:
            logger.warning("trial %d (seed %d): %s", t, trial_seed, ", ".join(problems))
            stats.failures.append({"trial": t, "seed": trial_seed, "problems": problems,
                                   "disturbance": nd.value, "commutator_norm": comm.max_commutator_norm})
    return stats
