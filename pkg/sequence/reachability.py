"""
Whether one POVM can be mapped onto another by the adjoint of a channel.

Lambda^* is unital and positive, so it cannot raise the largest or lower the
smallest eigenvalue of any element; relabelings violating that are rejected
without solving.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from compat import channel_program, clean_choi
from measurement import Channel, Povm
from sdpcore import DEFAULT_SOLVER, SdpStatus, SolverSettings, solve
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import DimensionMismatchError, SolverFailure

logger = logging.getLogger(__name__)


@dataclass
class ReachabilityResult:
    feasible: bool
    permutation: Optional[Tuple[int, ...]]
    channel: Optional[Channel]
    tried: int
    prefiltered: int
    details: List[Dict[str, Any]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.feasible

    def to_dict(self) -> Dict[str, Any]:
        return {
            "feasible": self.feasible,
            "permutation": list(self.permutation) if self.permutation is not None else None,
            "channel": self.channel.to_dict() if self.channel is not None else None,
            "tried": self.tried,
            "prefiltered": self.prefiltered,
            "details": list(self.details),
        }


def eigenvalue_obstruction(source: Povm, target: Povm, permutation: Tuple[int, ...],
                           tol: float = DEFAULT_TOLERANCES.psd) -> Optional[str]:
    """Reason why no channel maps source[x] to target[permutation[x]], or None."""
    for x, (label, q) in enumerate(source):
        image = target.elements[permutation[x]]
        if image.max_eigenvalue() > q.max_eigenvalue() + tol:
            return f"largest eigenvalue of element {label!r} would increase"
        if image.min_eigenvalue() < q.min_eigenvalue() - tol:
            return f"smallest eigenvalue of element {label!r} would decrease"
    return None


def channel_exists(source: Povm, target: Povm, allow_relabel: bool = False,
                   settings: SolverSettings = DEFAULT_SOLVER,
                   tolerances: Tolerances = DEFAULT_TOLERANCES, prefilter: bool = True) -> ReachabilityResult:
    """
    Search for a channel with Lambda^*(Q_x) = Q'_{pi(x)}.

    Args:
        source: POVM Q
        target: POVM Q' with the same number of outcomes
        allow_relabel: Try every permutation pi instead of the identity only
        settings: Solver settings
        tolerances: Prefilter tolerance
        prefilter: Skip permutations ruled out by the eigenvalue bounds without calling the solver

    Returns:
        ReachabilityResult with the first feasible permutation and its channel
    """
    if len(source) != len(target):
        raise ValueError(f"outcome counts differ: {len(source)} vs {len(target)}")
    if source.dim != target.dim:
        raise DimensionMismatchError(f"dimensions differ: {source.dim} vs {target.dim}")
    perms = list(itertools.permutations(range(len(source)))) if allow_relabel else [tuple(range(len(source)))]
    result = ReachabilityResult(False, None, None, 0, 0)
    for perm in perms:
        result.tried += 1
        reason = eigenvalue_obstruction(source, target, perm, tolerances.psd) if prefilter else None
        if reason is not None:
            result.prefiltered += 1
            result.details.append({"permutation": list(perm), "verdict": "infeasible", "reason": reason})
            continue
        problem, choi = channel_program(source, target, perm)
        solution = solve(problem, settings)
        if solution.status == SdpStatus.NUMERICAL_FAILURE:
            raise SolverFailure("channel feasibility SDP failed", solution.status.value, solution.diagnostics)
        if solution.status == SdpStatus.INFEASIBLE:
            result.details.append({"permutation": list(perm), "verdict": "infeasible", "reason": "solver certificate"})
            continue
        result.details.append({"permutation": list(perm), "verdict": "feasible"})
        result.feasible = True
        result.permutation = tuple(perm)
        result.channel = Channel(clean_choi(solution.value("C")))
        break
    logger.debug("channel search: feasible=%s after %d permutations (%d prefiltered)",
                 result.feasible, result.tried, result.prefiltered)
    return result
