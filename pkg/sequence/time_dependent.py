"""
Minimal macrorealism conditions for a triple with explicit time evolutions.

The head condition is optimized over all states and head instruments. The
middle condition only has to hold on states that can reach the middle slot,
which for a channel image {Lambda_12(rho)} is the operator identity
Lambda_12^*(Lambda_2^*(X) - X) = 0.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from compat import solve_disturbance
from measurement import Instrument
from qmat import op_norm
from sdpcore import DEFAULT_SOLVER, SolverSettings
from utils.config import DEFAULT_TOLERANCES, Tolerances

from .conditions import ConditionReport, all_satisfied
from .scenario import Scenario

logger = logging.getLogger(__name__)

STATE_SETS = ("full", "channel_image")


@dataclass
class TimeDependentReport:
    state_set: str
    conditions: List[ConditionReport]
    head_instrument: Optional[Instrument] = None

    @property
    def satisfied(self) -> bool:
        return all_satisfied(self.conditions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "state_set": self.state_set,
            "satisfied": self.satisfied,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def _herm_norm(x: np.ndarray) -> float:
    return op_norm(0.5 * (x + x.conj().T))


def time_dependent_check(sc: Scenario, state_set: str = "full", settings: SolverSettings = DEFAULT_SOLVER,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> TimeDependentReport:
    """
    Check both conditions of a three-slot scenario with evolutions.

    Args:
        sc: Scenario with three slots; missing evolutions act as the identity
        state_set: ``"full"`` (all states reach the middle slot) or ``"channel_image"``
            (only the image of the first evolution does)
        settings: Solver settings for the head SDP
        tolerances: Decision thresholds

    Returns:
        TimeDependentReport
    """
    if state_set not in STATE_SETS:
        raise ValueError(f"state_set must be one of {STATE_SETS}, got {state_set!r}")
    if sc.n != 3:
        raise ValueError(f"time-dependent check needs three slots, got {sc.n}")
    middle = sc.slots[1].instrument
    tail = [sc.evolve_adjoint(1, e.data) for e in sc.slots[2].povm.elements]

    targets = [sc.evolve_adjoint(0, middle.adjoint(y, x)) for y in middle.labels for x in tail]
    head = solve_disturbance(sc.slots[0].povm, targets, settings, name="time_dependent_head")
    conditions = [ConditionReport("td_nd[1->23]", head.value, tolerances.nondisturbance)]

    total = middle.total_choi()
    d = sc.dim
    defects = []
    for x in tail:
        residual = np.einsum("iajb,ab->ij", total.reshape(d, d, d, d), x) - x
        if state_set == "channel_image":
            residual = sc.evolve_adjoint(0, residual)
        defects.append(_herm_norm(residual))
    conditions.append(ConditionReport(f"td_nd[2->3;{state_set}]", max(defects), tolerances.identity))
    logger.debug("time-dependent check (%s): head %.3e, middle %.3e", state_set, head.value, max(defects))
    return TimeDependentReport(state_set, conditions, head.instrument)
