"""
Sequential-measurement scenarios: an initial state, an ordered list of
measurement slots and optional evolutions between consecutive slots.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from measurement import Channel, Instrument, Povm, lueders_instrument, validate_instrument
from qmat import DensityMatrix, matrix_to_json
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import CompletenessError, DimensionMismatchError


@dataclass(frozen=True)
class Slot:
    """A measurement in the sequence and the instrument realizing it."""

    povm: Povm
    instrument: Instrument


class Scenario:
    """
    Immutable sequential-measurement scenario.

    Args:
        slots: Ordered measurement slots
        state: Initial state (sub-normalized states accepted)
        evolutions: ``evolutions[i]`` acts between slot i and slot i+1; None entries mean no evolution
        tolerances: Used to check that every instrument implements its POVM
    """

    def __init__(self, slots: Sequence[Slot], state: Any, evolutions: Optional[Sequence[Optional[Channel]]] = None,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        if not slots:
            raise ValueError("a scenario needs at least one measurement slot")
        self.slots = tuple(slots)
        self.state = state if isinstance(state, DensityMatrix) else DensityMatrix(state, subnormalized=True)
        self.dim = self.state.dim
        evolutions = list(evolutions) if evolutions is not None else [None] * (len(self.slots) - 1)
        if len(evolutions) != len(self.slots) - 1:
            raise ValueError(f"{len(evolutions)} evolutions for {len(self.slots)} slots")
        self.evolutions = tuple(evolutions)
        for i, slot in enumerate(self.slots):
            if slot.povm.dim != self.dim or slot.instrument.dim != self.dim:
                raise DimensionMismatchError(f"slot {i + 1} does not act on dimension {self.dim}")
            report = validate_instrument(slot.instrument, slot.povm, tolerances)
            if not report.ok:
                raise CompletenessError(f"slot {i + 1}: " + "; ".join(report.violations))
        for i, channel in enumerate(self.evolutions):
            if channel is not None and channel.dim != self.dim:
                raise DimensionMismatchError(f"evolution {i + 1} acts on dimension {channel.dim}")

    @classmethod
    def from_povms(cls, povms: Sequence[Povm], state: Any,
                   instruments: Optional[Sequence[Optional[Instrument]]] = None,
                   evolutions: Optional[Sequence[Optional[Channel]]] = None,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> "Scenario":
        """Build a scenario; missing instruments default to Lueders."""
        instruments = list(instruments) if instruments is not None else [None] * len(povms)
        if len(instruments) < len(povms):
            instruments += [None] * (len(povms) - len(instruments))
        slots = [Slot(p, i if i is not None else lueders_instrument(p)) for p, i in zip(povms, instruments)]
        return cls(slots, state, evolutions, tolerances)

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def povms(self) -> List[Povm]:
        return [s.povm for s in self.slots]

    @property
    def instruments(self) -> List[Instrument]:
        return [s.instrument for s in self.slots]

    @property
    def has_evolutions(self) -> bool:
        return any(c is not None for c in self.evolutions)

    def with_state(self, state: Any) -> "Scenario":
        return Scenario(self.slots, state, self.evolutions)

    def evolve(self, index: int, rho: np.ndarray) -> np.ndarray:
        """Apply the evolution following slot ``index`` (0-based), if any."""
        channel = self.evolutions[index]
        return rho if channel is None else channel.apply(rho)

    def evolve_adjoint(self, index: int, x: np.ndarray) -> np.ndarray:
        channel = self.evolutions[index]
        return x if channel is None else channel.adjoint(x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "n": self.n,
            "slots": [{"povm": s.povm.to_dict(), "instrument": s.instrument.to_dict()} for s in self.slots],
            "evolutions": [c.to_dict() if c is not None else None for c in self.evolutions],
            "state": matrix_to_json(self.state.mat),
        }

    def __repr__(self) -> str:
        return f"Scenario(dim={self.dim}, n={self.n}, evolutions={self.has_evolutions})"
