"""
State-independent NSIT conditions as nondisturbance conditions on a chain.

A fixed order Q_1..Q_n admits an implementation obeying every NSIT
condition for all states iff Q_k ND I_{k+1}^* ... I_{n-1}^* Q_n for every k.
With fixed instruments each condition is an operator identity; the head
condition can instead be decided by an SDP over the head instrument.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from compat import exact_disturbance_terms, solve_disturbance
from measurement import Instrument, Povm
from sdpcore import DEFAULT_SOLVER, SolverSettings
from utils.config import DEFAULT_TOLERANCES, SeesawConfig, Tolerances

from .conditions import ConditionReport, all_satisfied
from .search import SequenceSearch, _check_chain, sequence_seesaw, tail_povm

logger = logging.getLogger(__name__)


def identity_defect(instrument: Instrument, targets: Sequence[Any]) -> float:
    """max_e ||Lambda^*(e) - e|| for the total channel of ``instrument``."""
    return max(exact_disturbance_terms(instrument, targets))


def _chain_id(k: int, n: int) -> str:
    tail = "".join(str(i) for i in range(k + 2, n + 1))
    return f"nd[{k + 1}->{tail}]"


@dataclass
class ChainReport:
    """Conditions Q_k ND E_k along one fixed order."""

    order: Tuple[Any, ...]
    conditions: List[ConditionReport]
    head_value: Optional[float] = None
    head_instrument: Optional[Instrument] = None
    search: Optional[SequenceSearch] = None

    @property
    def satisfied(self) -> bool:
        return all_satisfied(self.conditions)

    def failed_ids(self) -> List[str]:
        return [c.condition_id for c in self.conditions if not c.satisfied]

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "order": list(self.order),
            "satisfied": self.satisfied,
            "conditions": [c.to_dict() for c in self.conditions],
        }
        if self.head_value is not None:
            out["head_value"] = self.head_value
        if self.head_instrument is not None:
            out["head_instrument"] = self.head_instrument.to_dict()
        if self.search is not None:
            out["search"] = self.search.to_dict()
        return out


def chain_conditions(povms: Sequence[Povm], instruments: Sequence[Optional[Instrument]],
                     optimize_head: bool = False, settings: SolverSettings = DEFAULT_SOLVER,
                     tolerances: Tolerances = DEFAULT_TOLERANCES,
                     order: Optional[Sequence[Any]] = None) -> ChainReport:
    """
    Evaluate the n-1 conditions of a fixed order.

    Args:
        povms: Q_1..Q_n
        instruments: I_1..I_{n-1} (a trailing instrument for Q_n is ignored);
            I_1 may be None when ``optimize_head`` is set
        optimize_head: Decide Q_1 ND E_1 by SDP over all instruments of Q_1
        settings: Solver settings for the head SDP
        tolerances: ``identity`` for operator identities, ``nondisturbance`` for the SDP
        order: Names of the POVMs, echoed in the report

    Returns:
        ChainReport with conditions listed head first
    """
    _check_chain(povms, instruments)
    n = len(povms)
    conditions = []
    head_value, head_instrument = None, None
    for k in range(n - 1):
        tail = [e.data for e in tail_povm(instruments[k + 1:n - 1], povms[-1]).elements]
        if k == 0 and optimize_head:
            result = solve_disturbance(povms[0], tail, settings, name="head_condition")
            head_value, head_instrument = result.value, result.instrument
            conditions.append(ConditionReport(_chain_id(k, n), result.value, tolerances.nondisturbance))
        else:
            if instruments[k] is None:
                raise ValueError(f"instrument {k + 1} is required")
            conditions.append(ConditionReport(_chain_id(k, n), identity_defect(instruments[k], tail),
                                              tolerances.identity))
    return ChainReport(tuple(order) if order is not None else tuple(range(1, n + 1)),
                       conditions, head_value, head_instrument)


def triple_conditions(q1: Povm, i2: Instrument, q3: Povm, settings: SolverSettings = DEFAULT_SOLVER,
                      tolerances: Tolerances = DEFAULT_TOLERANCES, search: bool = False,
                      seesaw_config: SeesawConfig = SeesawConfig(), threads: int = 1) -> ChainReport:
    """
    Minimal NSIT conditions of a triple for a given middle instrument.

    Q_2 ND Q_3 is checked as an operator identity and Q_1 ND I_2^* Q_3 by SDP.
    With ``search`` the report also carries a joint search over both instruments.
    """
    q2 = i2.induced_povm()
    report = chain_conditions([q1, q2, q3], [None, i2], optimize_head=True,
                              settings=settings, tolerances=tolerances)
    if search:
        report.search = sequence_seesaw([q1, q2, q3], seesaw_config, settings, tolerances, threads,
                                        initial=[report.head_instrument, i2])
    return report


@dataclass
class AllOrdersReport:
    """Head condition of every ordering of a set of POVMs with fixed instruments."""

    names: Tuple[Any, ...]
    orders: Dict[Tuple[Any, ...], ConditionReport] = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return all(r.satisfied for r in self.orders.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "names": list(self.names),
            "satisfied": self.satisfied,
            "orders": [{"order": list(k), **v.to_dict()} for k, v in sorted(self.orders.items(), key=lambda kv: str(kv[0]))],
        }


def _head_report(povms, instruments, order, names, tolerances) -> ConditionReport:
    seq = [povms[i] for i in order]
    tail = [e.data for e in tail_povm([instruments[i] for i in order[1:-1]], seq[-1]).elements]
    name = "->".join(str(names[i]) for i in order)
    return ConditionReport(f"head[{name}]", identity_defect(instruments[order[0]], tail), tolerances.identity)


def all_orders_conditions(povms: Sequence[Povm], instruments: Sequence[Instrument],
                          names: Optional[Sequence[Any]] = None, length: Optional[int] = None,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> AllOrdersReport:
    """
    Head condition for every ordering, with one fixed instrument per POVM.

    Args:
        povms: The POVMs
        instruments: One instrument per POVM, shared by all orderings
        names: Labels used in the report keys (default 0..n-1)
        length: Evaluate ordered selections of this length instead of full permutations
        tolerances: Identity tolerance

    Returns:
        AllOrdersReport keyed by tuples of names
    """
    if len(instruments) != len(povms):
        raise ValueError("one instrument per POVM is required")
    names = tuple(names) if names is not None else tuple(range(len(povms)))
    size = len(povms) if length is None else length
    report = AllOrdersReport(names)
    for order in itertools.permutations(range(len(povms)), size):
        r = _head_report(povms, instruments, order, names, tolerances)
        report.orders[tuple(names[i] for i in order)] = r
    return report


def adroitness_level(povms: Sequence[Povm], instruments: Sequence[Instrument],
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> int:
    """
    Largest k such that every ordered selection of length <= k satisfies its head condition.

    Every set is at least 1-term adroit.
    """
    level = 1
    for k in range(2, len(povms) + 1):
        if not all_orders_conditions(povms, instruments, length=k, tolerances=tolerances).satisfied:
            break
        level = k
    return level
