"""
Quantum instruments: one completely positive map per outcome, summing to a channel.

Instruments are stored in the Schroedinger picture as Choi matrices
(see ``measurement.choi`` for the convention). Kraus operators are kept when
the instrument was built from them and recomputed on demand otherwise.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from qmat import HermMatrix, as_array, matrix_to_json, partial_trace_2, sqrtm_psd
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import CompletenessError, DimensionMismatchError, UnknownOutcomeError

from .channel import Channel, validate_channel
from .choi import (
    choi_adjoint_apply,
    choi_apply,
    choi_dim,
    choi_from_kraus,
    compose_chois,
    kraus_from_choi,
)
from .povm import Label, Povm, validate_povm

logger = logging.getLogger(__name__)

PICTURES = ("schroedinger", "heisenberg")


class Instrument:
    """
    Instrument on C^d given by per-outcome Choi matrices.

    Args:
        chois: One d^2 x d^2 Choi matrix per outcome
        labels: Outcome labels (defaults to 0..k-1)
        kraus: Optional Schroedinger Kraus lists matching ``chois``
    """

    def __init__(self, chois: Sequence[Any], labels: Optional[Sequence[Label]] = None,
                 kraus: Optional[Sequence[Sequence[np.ndarray]]] = None):
        mats = tuple(c if isinstance(c, HermMatrix) else HermMatrix(c) for c in chois)
        if not mats:
            raise ValueError("an instrument needs at least one outcome")
        dims = {choi_dim(m.data) for m in mats}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Choi matrices of mixed dimensions {sorted(dims)}")
        self.dim = dims.pop()
        self.chois = mats
        self.labels = tuple(range(len(mats))) if labels is None else tuple(labels)
        if len(self.labels) != len(mats) or len(set(self.labels)) != len(mats):
            raise ValueError("instrument labels must be unique and match the outcomes")
        self._index = {label: i for i, label in enumerate(self.labels)}
        self._kraus: List[Optional[List[np.ndarray]]] = (
            [list(k) for k in kraus] if kraus is not None else [None] * len(mats))

    def __len__(self) -> int:
        return len(self.chois)

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownOutcomeError(f"unknown outcome label {label!r}")

    def choi(self, label: Label) -> HermMatrix:
        return self.chois[self.index(label)]

    def kraus(self, label: Label) -> List[np.ndarray]:
        """Schroedinger Kraus operators of one branch."""
        i = self.index(label)
        if self._kraus[i] is None:
            self._kraus[i] = kraus_from_choi(self.chois[i].data)
        return self._kraus[i]

    def apply(self, label: Label, rho: Any) -> np.ndarray:
        """Unnormalized post-measurement state of one branch."""
        return choi_apply(self.choi(label).data, as_array(rho))

    def adjoint(self, label: Label, x: Any) -> np.ndarray:
        return choi_adjoint_apply(self.choi(label).data, as_array(x))

    def induced_povm(self) -> Povm:
        """POVM with elements tr_2 M^x."""
        return Povm([partial_trace_2(m, self.dim, self.dim) for m in self.chois], self.labels)

    def total_choi(self) -> np.ndarray:
        return np.sum([m.data for m in self.chois], axis=0)

    def relabel(self, labels: Sequence[Label]) -> "Instrument":
        return Instrument(self.chois, labels, kraus=self._kraus if all(self._kraus) else None)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels), "choi": [matrix_to_json(m) for m in self.chois]}

    def __repr__(self) -> str:
        return f"Instrument(dim={self.dim}, outcomes={len(self)})"


@dataclass
class InstrumentReport:
    ok: bool
    min_choi_eigenvalues: Dict[Label, float]
    completeness_defect: float
    violations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "min_choi_eigenvalues": {str(k): v for k, v in self.min_choi_eigenvalues.items()},
            "completeness_defect": self.completeness_defect,
            "violations": list(self.violations),
        }


def validate_instrument(instrument: Instrument, povm: Optional[Povm] = None,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> InstrumentReport:
    """
    Check complete positivity per branch, trace preservation of the total map,
    and optionally that the instrument implements ``povm``.
    """
    violations = []
    min_eigs = {}
    for label, m in zip(instrument.labels, instrument.chois):
        w = m.eigvalsh()
        min_eigs[label] = float(w[0])
        if w[0] < -tolerances.psd * max(1.0, float(np.max(np.abs(w)))):
            violations.append(f"branch {label!r} is not completely positive (min eigenvalue {w[0]:.3e})")
    induced = instrument.induced_povm()
    defect = float(np.max(np.abs(induced.arrays().sum(axis=0) - np.eye(instrument.dim))))
    if defect > tolerances.completeness:
        violations.append(f"total map is not trace preserving (defect {defect:.3e})")
    if povm is not None:
        if set(povm.labels) != set(instrument.labels):
            violations.append("instrument and POVM outcome labels differ")
        else:
            worst = max(float(np.max(np.abs(induced.element(x).data - povm.element(x).data)))
                        for x in povm.labels)
            if worst > tolerances.completeness:
                violations.append(f"instrument does not implement the POVM (deviation {worst:.3e})")
    return InstrumentReport(not violations, min_eigs, defect, violations)


def lueders_instrument(p: Povm) -> Instrument:
    """rho -> sqrt(E_x) rho sqrt(E_x) for every outcome."""
    report = validate_povm(p)
    if not report.ok:
        raise CompletenessError("; ".join(report.violations))
    kraus = [[sqrtm_psd(e)] for _, e in p]
    return Instrument([choi_from_kraus(k) for k in kraus], p.labels, kraus=kraus)


def instrument_from_kraus(kraus_per_outcome: Sequence[Sequence[Any]], picture: str = "schroedinger",
                          labels: Optional[Sequence[Label]] = None,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> Instrument:
    """
    Build an instrument from Kraus lists.

    Args:
        kraus_per_outcome: One list of d x d operators per outcome
        picture: ``"schroedinger"`` for rho -> sum K rho K^dagger, or
            ``"heisenberg"`` for maps given as X -> sum K X K^dagger on observables
        labels: Outcome labels
        tolerances: Completeness tolerance

    Returns:
        Instrument stored in the Schroedinger picture
    """
    if picture not in PICTURES:
        raise ValueError(f"picture must be one of {PICTURES}, got {picture!r}")
    ops = [[np.asarray(k, dtype=np.complex128) for k in group] for group in kraus_per_outcome]
    if picture == "heisenberg":
        ops = [[k.conj().T for k in group] for group in ops]
    d = ops[0][0].shape[0]
    total = np.zeros((d, d), dtype=np.complex128)
    for group in ops:
        for k in group:
            if k.shape != (d, d):
                raise DimensionMismatchError(f"Kraus operator of shape {k.shape}, expected {(d, d)}")
            total += k.conj().T @ k
    defect = float(np.max(np.abs(total - np.eye(d))))
    if defect > tolerances.completeness:
        raise CompletenessError(f"Kraus operators are not complete (defect {defect:.3e})")
    return Instrument([choi_from_kraus(g) for g in ops], labels, kraus=ops)


def adjoint_apply(instrument: Instrument, outcome: Label, x: Any) -> HermMatrix:
    """Heisenberg action (I^x)^*(X) = tr_2[M^x (1 (x) X^T)]."""
    arr = as_array(x)
    if arr.shape != (instrument.dim, instrument.dim):
        raise DimensionMismatchError(f"operator of shape {arr.shape} on a {instrument.dim}-dimensional instrument")
    return HermMatrix(instrument.adjoint(outcome, arr))


def total_channel(instrument: Instrument, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Channel:
    """
    Lambda = sum_x I^x, checked to be CP and trace preserving.

    Raises:
        CompletenessError: The sum is not a channel within ``tolerances``
    """
    kraus = [k for label in instrument.labels for k in instrument.kraus(label)]
    channel = Channel(instrument.total_choi(), kraus=kraus)
    report = validate_channel(channel, tolerances)
    if not report.ok:
        raise CompletenessError("total channel: " + "; ".join(report.violations))
    return channel


def sequential_povm(instrument: Instrument, tail: Povm) -> Povm:
    """Joint POVM {(I^x)^*(B_y)} with product labels (x, y)."""
    if tail.dim != instrument.dim:
        raise DimensionMismatchError(f"instrument dimension {instrument.dim} vs POVM dimension {tail.dim}")
    elements = []
    labels: List[Tuple[Label, Label]] = []
    for x in instrument.labels:
        for y, b in tail:
            elements.append(HermMatrix(instrument.adjoint(x, b.data)))
            labels.append((x, y))
    return Povm(elements, labels)


def measure_prepare_instrument(povm: Povm, states: Sequence[Any]) -> Instrument:
    """Branch x: rho -> tr(E_x rho) sigma_x."""
    if len(states) != len(povm):
        raise ValueError("one prepared state per outcome required")
    chois = []
    kraus = []
    for (_, e), sigma in zip(povm, states):
        root = sqrtm_psd(e)
        s = as_array(sigma)
        w, v = np.linalg.eigh(s)
        ops = []
        for value, vec in zip(w, v.T):
            if value <= 1e-15:
                continue
            for j in range(povm.dim):
                ops.append(np.sqrt(value) * np.outer(vec, root[j, :]))
        if not ops:
            ops.append(np.zeros((povm.dim, povm.dim), dtype=np.complex128))
        kraus.append(ops)
        chois.append(choi_from_kraus(ops))
    return Instrument(chois, povm.labels, kraus=kraus)


def compose_instrument(instrument: Instrument, before: Optional[Channel] = None,
                       after: Optional[Channel] = None) -> Instrument:
    """Instrument x -> after o I^x o before (channels optional)."""
    chois = []
    for m in instrument.chois:
        c = m.data
        if before is not None:
            c = compose_chois(c, before.choi.data)
        if after is not None:
            c = compose_chois(after.choi.data, c)
        chois.append(c)
    return Instrument(chois, instrument.labels)


def mix_instruments(first: Instrument, second: Instrument, weight: float) -> Instrument:
    """(1 - weight) * first + weight * second, branch by branch."""
    if first.labels != second.labels or first.dim != second.dim:
        raise DimensionMismatchError("instruments must share labels and dimension")
    return Instrument([(1.0 - weight) * a.data + weight * b.data
                       for a, b in zip(first.chois, second.chois)], first.labels)
