"""
Report types of the disturbance and macrorealism measures.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from measurement import Instrument
from sequence import SequenceSearch


@dataclass
class DisturbanceReport:
    """
    Value of sum_y ||Lambda^*(B_y) - B_y|| for a given or an optimal instrument.

    ``value`` always equals the sum of ``per_term`` (it is re-evaluated
    exactly at the returned instrument even when an SDP produced it).
    """

    value: float
    per_term: List[float]
    instrument: Optional[Instrument]
    certified: bool
    optimized: bool
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "per_term": list(self.per_term),
            "optimized": self.optimized,
            "certified": self.certified,
            "instrument": self.instrument.to_dict() if self.instrument is not None else None,
            "diagnostics": dict(self.diagnostics),
        }


@dataclass
class OrderValue:
    """Contribution of one ordering to a macrorealism measure."""

    order: Tuple[Any, ...]
    value: float
    seed: Optional[int] = None
    certified: Optional[bool] = None
    search: Optional[SequenceSearch] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"order": list(self.order), "value": self.value, "seed": self.seed}
        if self.certified is not None:
            out["certified"] = self.certified
        if self.search is not None:
            out["terms"] = list(self.search.terms)
            out["seesaw"] = self.search.result.to_dict()
        return out


@dataclass
class MrReport:
    """
    Sum of per-ordering disturbance values.

    Values coming from see-saw searches are upper bounds on the infima.
    """

    orders: List[OrderValue]
    seed: int
    upper_bound: bool = True
    experimental: bool = False

    @property
    def total(self) -> float:
        return float(sum(o.value for o in self.orders))

    def value_of(self, order: Tuple[Any, ...]) -> float:
        for o in self.orders:
            if tuple(o.order) == tuple(order):
                return o.value
        raise KeyError(order)

    def restart_statistics(self) -> Dict[str, Any]:
        traces = [t for o in self.orders if o.search is not None for t in o.search.result.traces]
        return {
            "restarts": len(traces),
            "failed": sum(1 for t in traces if t.failure is not None),
            "converged": sum(1 for t in traces if t.converged),
            "sweeps": sum(t.iterations for t in traces),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total": self.total,
            "seed": self.seed,
            "upper_bound": self.upper_bound,
            "experimental": self.experimental,
            "orders": [o.to_dict() for o in self.orders],
            "restart_statistics": self.restart_statistics(),
        }
