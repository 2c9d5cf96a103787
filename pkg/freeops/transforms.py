"""
Transformations of POVMs that cannot increase the macrorealism measure,
each with the companion map carrying an instrument of the original POVM to
an instrument of the transformed one.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from compat import commutes
from measurement import (
    Channel,
    Instrument,
    Label,
    Povm,
    compose_instrument,
    total_channel,
    unitary_channel,
)
from qmat import HermMatrix
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)


class PostProcessing:
    """
    Classical post-processing kernel p(a|a').

    Args:
        kernel: Array of shape (outputs, inputs); column a' is the distribution p(.|a')
        labels: Output labels (defaults to 0..outputs-1)
        tol: Column-sum tolerance
    """

    def __init__(self, kernel: Any, labels: Optional[Sequence[Label]] = None, tol: float = 1e-12):
        k = np.asarray(kernel, dtype=float)
        if k.ndim != 2 or k.size == 0:
            raise ValueError("kernel must be a non-empty matrix")
        if np.any(k < -tol):
            raise ValueError("kernel entries must be nonnegative")
        sums = k.sum(axis=0)
        if np.any(np.abs(sums - 1.0) > tol):
            raise ValueError(f"kernel columns must sum to 1 (worst {float(np.max(np.abs(sums - 1.0))):.3e})")
        self.kernel = np.clip(k, 0.0, None)
        self.labels = tuple(range(k.shape[0])) if labels is None else tuple(labels)
        if len(self.labels) != k.shape[0]:
            raise ValueError("one label per kernel row required")

    @property
    def outputs(self) -> int:
        return self.kernel.shape[0]

    @property
    def inputs(self) -> int:
        return self.kernel.shape[1]

    @classmethod
    def identity(cls, n: int) -> "PostProcessing":
        return cls(np.eye(n))

    @classmethod
    def merge(cls, groups: Sequence[Sequence[int]], inputs: int,
              labels: Optional[Sequence[Label]] = None) -> "PostProcessing":
        """Deterministic kernel sending every input in ``groups[a]`` to output a."""
        k = np.zeros((len(groups), inputs))
        for a, group in enumerate(groups):
            for src in group:
                k[a, src] = 1.0
        return cls(k, labels)

    @classmethod
    def total(cls, inputs: int) -> "PostProcessing":
        """Every outcome merged into one."""
        return cls(np.ones((1, inputs)))

    @classmethod
    def random(cls, inputs: int, outputs: int, rng: np.random.Generator) -> "PostProcessing":
        return cls(rng.dirichlet(np.ones(outputs), size=inputs).T)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels), "kernel": self.kernel}


def _check_kernel(k: PostProcessing, outcomes: int) -> None:
    if k.inputs != outcomes:
        raise ValueError(f"kernel takes {k.inputs} inputs, measurement has {outcomes} outcomes")


def post_process(p: Povm, k: PostProcessing) -> Povm:
    """A~_a = sum_a' p(a|a') A_a'."""
    _check_kernel(k, len(p))
    arrays = p.arrays()
    return Povm([np.tensordot(k.kernel[a], arrays, axes=1) for a in range(k.outputs)], k.labels)


def post_process_instrument(instrument: Instrument, k: PostProcessing) -> Instrument:
    """I~^a = sum_a' p(a|a') I^a'; the total channel is unchanged."""
    _check_kernel(k, len(instrument))
    chois = np.array([m.data for m in instrument.chois])
    return Instrument([np.tensordot(k.kernel[a], chois, axes=1) for a in range(k.outputs)], k.labels)


@dataclass(frozen=True)
class DepolarizingParam:
    """Weight alpha of the original element in A~ = alpha A + (1 - alpha) tr(A) 1/d."""

    alpha: float
    dim: int

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.dim < 1:
            raise ValueError("dimension must be positive")


def depolarize_local(p: Povm, d: DepolarizingParam) -> Povm:
    if p.dim != d.dim:
        raise DimensionMismatchError(f"parameter for dimension {d.dim} applied to dimension {p.dim}")
    eye = np.eye(p.dim)
    return Povm([d.alpha * e.data + (1.0 - d.alpha) * e.trace() / p.dim * eye for e in p.elements], p.labels)


def depolarize_instrument(instrument: Instrument, d: DepolarizingParam,
                          channel: Optional[Channel] = None,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> Instrument:
    """
    I~^x = alpha I^x + (1 - alpha) tr(Q^x)/d Lambda_D.

    Args:
        instrument: Instrument of Q
        d: Depolarizing parameter
        channel: Lambda_D; defaults to the total channel of ``instrument``
        tolerances: Used when validating the default total channel

    Returns:
        Instrument implementing ``depolarize_local(Q, d)``
    """
    if instrument.dim != d.dim:
        raise DimensionMismatchError(f"parameter for dimension {d.dim} applied to dimension {instrument.dim}")
    base = (channel if channel is not None else total_channel(instrument, tolerances)).choi.data
    povm = instrument.induced_povm()
    return Instrument([d.alpha * m.data + (1.0 - d.alpha) * e.trace() / d.dim * base
                       for m, e in zip(instrument.chois, povm.elements)], instrument.labels)


MONOTONE_UNITARY = "guaranteed (unitary preprocessing)"
MONOTONE_QUBIT = "guaranteed (qubit channel)"
MONOTONE_UNKNOWN = "unknown"


@dataclass
class GlobalPreprocessing:
    """POVMs after Lambda^* and whether the measure is known not to increase."""

    povms: List[Povm]
    monotonicity: str
    guaranteed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "povms": [p.to_dict() for p in self.povms],
            "monotonicity": self.monotonicity,
            "guaranteed": self.guaranteed,
        }


def pre_process_global(ps: Sequence[Povm], ch: Channel) -> GlobalPreprocessing:
    """Apply Lambda^* to every element of every POVM."""
    for p in ps:
        if p.dim != ch.dim:
            raise DimensionMismatchError(f"channel of dimension {ch.dim} applied to dimension {p.dim}")
    povms = [Povm([HermMatrix(ch.adjoint(e.data)) for e in p.elements], p.labels) for p in ps]
    if ch.is_unitary():
        return GlobalPreprocessing(povms, MONOTONE_UNITARY, True)
    if ch.dim == 2:
        return GlobalPreprocessing(povms, MONOTONE_QUBIT, True)
    logger.warning("global preprocessing by a non-unitary %d-dimensional channel: monotonicity unknown", ch.dim)
    return GlobalPreprocessing(povms, MONOTONE_UNKNOWN, False)


def transport_unitary_instrument(instrument: Instrument, unitary: Any) -> Instrument:
    """
    I~^x(rho) = U^dagger I^x(U rho U^dagger) U.

    Implements U^dagger Q^x U, the POVM produced by ``pre_process_global``
    with ``unitary_channel(U)``.
    """
    u = np.asarray(unitary, dtype=np.complex128)
    return compose_instrument(instrument, before=unitary_channel(u), after=unitary_channel(u.conj().T))


def commutativity_preserved(a: Povm, b: Povm, ch: Channel, tol: float = 1e-9) -> bool:
    """True unless a commuting pair stops commuting after Lambda^*."""
    if not commutes(a, b, tol).commuting:
        return True
    mapped = pre_process_global([a, b], ch).povms
    return commutes(mapped[0], mapped[1], max(tol, 1e-8)).commuting
