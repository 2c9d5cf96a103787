"""
Pairwise compatibility relations between POVMs.

commuting  =>  nondisturbing (both ways)  =>  jointly measurable
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from measurement import Instrument, Povm
from qmat import commutator_norm, span_membership
from sdpcore import DEFAULT_SOLVER, SdpSolution, SdpStatus, SolverSettings, solve
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import DimensionMismatchError, SolverFailure

from .programs import clean_choi, joint_measurability_program, solve_disturbance

logger = logging.getLogger(__name__)


def _same_dim(a: Povm, b: Povm) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"POVM dimensions {a.dim} and {b.dim} differ")


@dataclass
class CommutationResult:
    commuting: bool
    max_commutator_norm: float

    def __bool__(self) -> bool:
        return self.commuting

    def to_dict(self) -> Dict[str, Any]:
        return {"commuting": self.commuting, "max_commutator_norm": self.max_commutator_norm}


def commutes(a: Povm, b: Povm, tol: float = DEFAULT_TOLERANCES.commutator) -> CommutationResult:
    """True iff max_{x,y} ||[A_x, B_y]|| < tol."""
    _same_dim(a, b)
    worst = max(commutator_norm(ax, by) for _, ax in a for _, by in b)
    return CommutationResult(worst < tol, worst)


@dataclass
class JointMeasurabilityResult:
    feasible: bool
    joint: Optional[Povm]
    solution: SdpSolution

    def __bool__(self) -> bool:
        return self.feasible

    def to_dict(self) -> Dict[str, Any]:
        return {
            "jointly_measurable": self.feasible,
            "joint_povm": self.joint.to_dict() if self.joint is not None else None,
            "solver": self.solution.to_dict(),
        }


def jointly_measurable(*povms: Povm, settings: SolverSettings = DEFAULT_SOLVER) -> JointMeasurabilityResult:
    """
    Decide joint measurability by SDP feasibility of a parent POVM.

    Args:
        *povms: Two or more POVMs of equal dimension
        settings: Solver settings

    Returns:
        JointMeasurabilityResult; the parent POVM has tuple labels
    """
    if len(povms) < 2:
        raise ValueError("joint measurability needs at least two POVMs")
    problem, parent = joint_measurability_program(povms)
    solution = solve(problem, settings)
    if solution.status == SdpStatus.NUMERICAL_FAILURE:
        raise SolverFailure("joint measurability SDP failed", solution.status.value, solution.diagnostics)
    if solution.status == SdpStatus.INFEASIBLE:
        return JointMeasurabilityResult(False, None, solution)
    labels = [tuple(p.labels[i] for p, i in zip(povms, idx)) for idx in parent]
    elements = [clean_choi(solution.value(var.name())) for var in parent.values()]
    return JointMeasurabilityResult(True, Povm(elements, labels), solution)


@dataclass
class NondisturbanceResult:
    """D_A(B): optimal value and a witnessing instrument for A."""

    value: float
    nondisturbing: bool
    instrument: Instrument
    per_term: List[float]
    certified: bool
    solution: SdpSolution

    def __bool__(self) -> bool:
        return self.nondisturbing

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "nondisturbing": self.nondisturbing,
            "per_term": list(self.per_term),
            "certified": self.certified,
            "solver": self.solution.to_dict(),
        }


def nondisturbance(a: Povm, b: Povm, settings: SolverSettings = DEFAULT_SOLVER,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> NondisturbanceResult:
    """
    Minimize sum_y ||Lambda^*(B_y) - B_y|| over instruments implementing ``a``.

    ``a`` does not disturb ``b`` iff the value is below the nondisturbance threshold.
    """
    _same_dim(a, b)
    result = solve_disturbance(a, [e.data for e in b.elements], settings, name="nondisturbance")
    value = result.value
    logger.debug("D_A(B) = %.3e (sdp %.3e)", value, result.sdp_objective)
    return NondisturbanceResult(value, value < tolerances.nondisturbance, result.instrument,
                                result.per_term, result.certified, result.solution)


def first_kind(a: Povm, settings: SolverSettings = DEFAULT_SOLVER,
               tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """A measurement of the first kind does not disturb itself."""
    return nondisturbance(a, a, settings, tolerances).nondisturbing


def repeatable_eigenvalue_check(a: Povm, tol: float = DEFAULT_TOLERANCES.completeness) -> bool:
    """Every element has eigenvalue 1 (necessary for repeatability)."""
    return all(e.max_eigenvalue() >= 1.0 - tol for _, e in a)


@dataclass
class SpanVerdict:
    """
    Outcome of the span-commutativity criterion.

    When every squared element of ``e`` lies in the span of ``e``, ``a`` does
    not disturb ``e`` exactly when all their elements commute.
    """

    applicable: bool
    nondisturbing: Optional[bool]
    max_span_residual: float
    max_commutator_norm: float
    witness: Optional[List[Any]] = field(default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "applicable": self.applicable,
            "nondisturbing": self.nondisturbing,
            "max_span_residual": self.max_span_residual,
            "max_commutator_norm": self.max_commutator_norm,
            "witness": self.witness,
        }


def span_commutativity_criterion(a: Povm, e: Povm, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SpanVerdict:
    """
    Exact nondisturbance verdict when e is closed under squaring in its span.

    Returns:
        SpanVerdict; ``nondisturbing`` is None when the criterion does not apply
    """
    _same_dim(a, e)
    basis = [m.data for m in e.elements]
    residuals = [span_membership(m.data @ m.data, basis, tolerances.span_residual).residual for m in e.elements]
    worst_residual = max(residuals)
    worst, witness = 0.0, None
    for x, ax in a:
        for z, ez in e:
            norm = commutator_norm(ax, ez)
            if norm > worst:
                worst, witness = norm, [x, z]
    if worst_residual >= tolerances.span_residual:
        return SpanVerdict(False, None, worst_residual, worst)
    commuting = worst < tolerances.commutator
    return SpanVerdict(True, commuting, worst_residual, worst, None if commuting else witness)
