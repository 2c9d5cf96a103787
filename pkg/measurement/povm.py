"""
POVMs: labeled families of positive operators summing to the identity.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from qmat import HermMatrix, as_array, op_norm
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import DimensionMismatchError, UnknownOutcomeError

Label = Hashable


class Povm:
    """
    Finite labeled POVM.

    Construction does not enforce positivity or completeness, so that
    malformed inputs can be reported by ``validate_povm``; every POVM built
    by the library itself satisfies both.

    Args:
        elements: Hermitian matrices of equal dimension
        labels: Outcome labels (defaults to 0..k-1)
    """

    def __init__(self, elements: Sequence[Any], labels: Optional[Sequence[Label]] = None):
        mats = tuple(e if isinstance(e, HermMatrix) else HermMatrix(e) for e in elements)
        if not mats:
            raise ValueError("a POVM needs at least one element")
        dim = mats[0].dim
        for m in mats:
            if m.dim != dim:
                raise DimensionMismatchError(f"POVM elements of dimension {dim} and {m.dim}")
        labels = tuple(range(len(mats))) if labels is None else tuple(labels)
        if len(labels) != len(mats):
            raise ValueError(f"{len(labels)} labels for {len(mats)} elements")
        if len(set(labels)) != len(labels):
            raise ValueError("POVM labels must be unique")
        self._elements = mats
        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}

    @property
    def dim(self) -> int:
        return self._elements[0].dim

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self._labels

    @property
    def elements(self) -> Tuple[HermMatrix, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Tuple[Label, HermMatrix]]:
        return iter(zip(self._labels, self._elements))

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownOutcomeError(f"unknown outcome label {label!r}")

    def element(self, label: Label) -> HermMatrix:
        return self._elements[self.index(label)]

    def arrays(self) -> np.ndarray:
        """Elements stacked into a (k, d, d) complex array."""
        return np.stack([e.data for e in self._elements])

    def relabel(self, labels: Sequence[Label]) -> "Povm":
        return Povm(self._elements, labels)

    def is_projective(self, tol: float = 1e-9) -> bool:
        return all(np.allclose(e.data @ e.data, e.data, atol=tol) for e in self._elements)

    def to_dict(self) -> Dict[str, Any]:
        from qmat import matrix_to_json
        return {"labels": list(self._labels), "elements": [matrix_to_json(e) for e in self._elements]}

    def __repr__(self) -> str:
        return f"Povm(dim={self.dim}, outcomes={len(self)})"


@dataclass
class PovmReport:
    """Outcome of ``validate_povm``."""

    ok: bool
    min_eigenvalues: Dict[Label, float]
    completeness_defect: float
    completeness_trace_defect: float
    violations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "min_eigenvalues": {str(k): v for k, v in self.min_eigenvalues.items()},
            "completeness_defect": self.completeness_defect,
            "completeness_trace_defect": self.completeness_trace_defect,
            "violations": list(self.violations),
        }


def validate_povm(p: Povm, tolerances: Tolerances = DEFAULT_TOLERANCES) -> PovmReport:
    """
    Check positivity of every element and completeness.

    Args:
        p: POVM to check
        tolerances: PSD and completeness tolerances

    Returns:
        PovmReport; never raises for invalid content
    """
    violations = []
    min_eigs = {}
    for label, e in p:
        w = e.eigvalsh()
        min_eigs[label] = float(w[0])
        if w[0] < -tolerances.psd * max(1.0, float(np.max(np.abs(w)))):
            violations.append(f"element {label!r} is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    total = p.arrays().sum(axis=0) - np.eye(p.dim)
    entrywise = float(np.max(np.abs(total)))
    defect = op_norm(total)
    trace_defect = float(np.sum(np.abs(np.linalg.eigvalsh(total))))
    if entrywise > tolerances.completeness:
        violations.append(f"elements do not sum to the identity (defect {defect:.3e})")
    return PovmReport(not violations, min_eigs, defect, trace_defect, violations)


def _eigen_label(value: float) -> Label:
    nearest = round(value)
    if abs(value - nearest) < 1e-9:
        return int(nearest)
    return round(float(value), 12)


def pvm_from_observable(observable: Any, labels: Optional[Sequence[Label]] = None,
                        tol: float = 1e-9) -> Povm:
    """
    Spectral projectors of a Hermitian observable, largest eigenvalue first.

    Args:
        observable: Hermitian matrix
        labels: Outcome labels (defaults to the eigenvalues)
        tol: Eigenvalues closer than this are merged

    Returns:
        Projective POVM
    """
    w, v = np.linalg.eigh(as_array(observable))
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    groups: List[List[int]] = []
    for i, value in enumerate(w):
        if groups and abs(w[groups[-1][0]] - value) < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    projectors = [v[:, g] @ v[:, g].conj().T for g in groups]
    if labels is None:
        labels = [_eigen_label(w[g[0]]) for g in groups]
    return Povm(projectors, labels)


def povm_from_projectors(projectors: Sequence[Any], labels: Optional[Sequence[Label]] = None) -> Povm:
    return Povm(projectors, labels)


def trivial_povm(dim: int, weights: Sequence[float] = (1.0,), labels: Optional[Sequence[Label]] = None) -> Povm:
    """POVM whose elements are multiples of the identity."""
    if abs(sum(weights) - 1.0) > 1e-12 or min(weights) < 0:
        raise ValueError("weights must form a probability distribution")
    return Povm([w * np.eye(dim) for w in weights], labels)


def coin_flip_povm(dim: int) -> Povm:
    """Two outcomes, each with element 1/2."""
    return trivial_povm(dim, (0.5, 0.5))
