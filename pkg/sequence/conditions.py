"""
No-signalling-in-time (NSIT) and arrow-of-time (AoT) conditions on a probability table.

Both families compare a distribution in which one slot is switched off with
the marginal of a distribution in which that slot is measured and its outcome
discarded. Slot indices in condition ids are 1-based and ``s`` is the setting
string with the slot switched on.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from utils.config import DEFAULT_TOLERANCES

from .probtable import ProbTable, all_settings, settings_string


@dataclass
class ConditionReport:
    """One condition instance; satisfied iff defect < tolerance."""

    condition_id: str
    defect: float
    tolerance: float = DEFAULT_TOLERANCES.identity
    satisfied: bool = field(init=False)

    def __post_init__(self):
        self.satisfied = self.defect < self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.condition_id,
            "defect": self.defect,
            "tolerance": self.tolerance,
            "satisfied": self.satisfied,
        }


def all_satisfied(reports: Sequence[ConditionReport]) -> bool:
    return all(r.satisfied for r in reports)


def failed(reports: Sequence[ConditionReport]) -> List[ConditionReport]:
    return [r for r in reports if not r.satisfied]


def _discard_defect(t: ProbTable, settings: Sequence[int], slot: int) -> float:
    """max_q |p(.., 0 at slot, .. | s with slot off) - sum_{q_slot} p(q | s)|."""
    off = list(settings)
    off[slot] = 0
    marginal = t.marginal(settings, slot)
    reference = t.distribution(off)
    keys = set(marginal) | set(reference)
    return max(abs(marginal.get(k, 0.0) - reference.get(k, 0.0)) for k in keys)


def aot_check(t: ProbTable, tol: float = DEFAULT_TOLERANCES.identity) -> List[ConditionReport]:
    """
    Arrow-of-time instances: discarding the last measured slot cannot be seen in the earlier outcomes.

    For every slot i >= 2 and every setting string with s_i = 1 and all later
    slots off, the earlier joint distribution must not depend on s_i.
    """
    reports = []
    for i in range(1, t.n):
        for prefix in all_settings(i):
            s = tuple(prefix) + (1,) + (0,) * (t.n - i - 1)
            reports.append(ConditionReport(f"aot[i={i + 1};s={settings_string(s)}]",
                                           _discard_defect(t, s, i), tol))
    return sorted(reports, key=lambda r: r.condition_id)


def nsit_check(t: ProbTable, reduced: bool = False, tol: float = DEFAULT_TOLERANCES.identity) -> List[ConditionReport]:
    """
    No-signalling-in-time instances.

    Args:
        t: Probability table
        reduced: Only the minimal set: slot i measured and every later slot measured
            (2^(n-1) - 1 families; equivalent to the full set on tables obeying AoT)
        tol: Defect threshold

    Returns:
        Reports sorted by condition id
    """
    reports = []
    for i in range(t.n - 1):
        tail = t.n - i - 1
        if reduced:
            candidates = [tuple(prefix) + (1,) + (1,) * tail for prefix in all_settings(i)]
        else:
            candidates = [tuple(prefix) + (1,) + tuple(rest)
                          for prefix in all_settings(i) for rest in all_settings(tail) if any(rest)]
        for s in candidates:
            reports.append(ConditionReport(f"nsit[i={i + 1};s={settings_string(s)}]",
                                           _discard_defect(t, s, i), tol))
    return sorted(reports, key=lambda r: r.condition_id)


def nsit_verdicts_agree(t: ProbTable, tol: float = DEFAULT_TOLERANCES.identity) -> bool:
    """
    On an AoT-satisfying table the reduced and the full NSIT sets give the same verdict.

    Returns True when the table violates AoT (the equivalence does not apply).
    """
    if not all_satisfied(aot_check(t, tol)):
        return True
    return all_satisfied(nsit_check(t, True, tol)) == all_satisfied(nsit_check(t, False, tol))
