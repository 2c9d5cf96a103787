"""
Quantum channels stored as Choi matrices (same convention as instruments).
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from qmat import HermMatrix, as_array, matrix_to_json, op_norm
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import DimensionMismatchError

from .choi import (
    choi_adjoint_apply,
    choi_apply,
    choi_dim,
    choi_from_kraus,
    compose_chois,
    kraus_from_choi,
)


class Channel:
    """
    Completely positive trace-preserving map on C^d.

    Args:
        choi: d^2 x d^2 Choi matrix
        kraus: Kraus operators already known for this Choi matrix
    """

    def __init__(self, choi: Any, kraus: Optional[Sequence[Any]] = None):
        self.choi = choi if isinstance(choi, HermMatrix) else HermMatrix(choi)
        self.dim = choi_dim(self.choi.data)
        self._kraus: Optional[List[np.ndarray]] = (
            None if kraus is None else [np.asarray(k, dtype=np.complex128) for k in kraus])

    @classmethod
    def from_kraus(cls, kraus: Sequence[Any]) -> "Channel":
        ops = [np.asarray(k, dtype=np.complex128) for k in kraus]
        return cls(choi_from_kraus(ops), kraus=ops)

    def kraus(self) -> List[np.ndarray]:
        if self._kraus is None:
            self._kraus = kraus_from_choi(self.choi.data)
        return self._kraus

    def apply(self, rho: Any) -> np.ndarray:
        """Schroedinger picture; accepts any square matrix."""
        return choi_apply(self.choi.data, as_array(rho))

    def adjoint(self, x: Any) -> np.ndarray:
        """Heisenberg picture; accepts any square matrix."""
        return choi_adjoint_apply(self.choi.data, as_array(x))

    def adjoint_herm(self, x: Any) -> HermMatrix:
        return HermMatrix(self.adjoint(x))

    def then(self, after: "Channel") -> "Channel":
        """Channel ``after o self``."""
        if after.dim != self.dim:
            raise DimensionMismatchError(f"cannot compose dimensions {self.dim} and {after.dim}")
        return Channel(compose_chois(after.choi.data, self.choi.data))

    def is_unitary(self, tol: float = 1e-9) -> bool:
        ops = self.kraus()
        if len(ops) != 1:
            return False
        k = ops[0]
        return bool(np.allclose(k.conj().T @ k, np.eye(self.dim), atol=tol))

    def to_dict(self) -> Dict[str, Any]:
        return {"choi": matrix_to_json(self.choi)}

    def __repr__(self) -> str:
        return f"Channel(dim={self.dim})"


@dataclass
class ChannelReport:
    ok: bool
    min_choi_eigenvalue: float
    trace_preservation_defect: float
    violations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
            "trace_preservation_defect": self.trace_preservation_defect,
            "violations": list(self.violations),
        }


def validate_channel(channel: Channel, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ChannelReport:
    """CP via Choi positivity, TP via tr_2 M = 1 (unital adjoint)."""
    violations = []
    w = channel.choi.eigvalsh()
    if w[0] < -tolerances.psd * max(1.0, float(np.max(np.abs(w)))):
        violations.append(f"Choi matrix not positive semidefinite (min eigenvalue {w[0]:.3e})")
    unit = channel.adjoint(np.eye(channel.dim)) - np.eye(channel.dim)
    defect = float(np.max(np.abs(unit)))
    if defect > tolerances.completeness:
        violations.append(f"channel is not trace preserving (defect {defect:.3e})")
    return ChannelReport(not violations, float(w[0]), op_norm(0.5 * (unit + unit.conj().T)), violations)


def identity_channel(dim: int) -> Channel:
    return Channel.from_kraus([np.eye(dim)])


def unitary_channel(unitary: Any) -> Channel:
    """rho -> U rho U^dagger."""
    u = np.asarray(unitary, dtype=np.complex128)
    if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-10):
        raise ValueError("matrix is not unitary")
    return Channel.from_kraus([u])


def depolarizing_channel(dim: int, alpha: float = 0.0) -> Channel:
    """rho -> alpha rho + (1 - alpha) tr(rho) 1/d; alpha=0 is completely depolarizing."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    kraus = []
    if alpha > 0:
        kraus.append(np.sqrt(alpha) * np.eye(dim))
    weight = np.sqrt((1.0 - alpha) / dim)
    for i in range(dim):
        for j in range(dim):
            op = np.zeros((dim, dim), dtype=np.complex128)
            op[i, j] = weight
            kraus.append(op)
    return Channel.from_kraus(kraus)


def replacement_channel(state: Any) -> Channel:
    """rho -> tr(rho) sigma."""
    sigma = as_array(state)
    d = sigma.shape[0]
    w, v = np.linalg.eigh(sigma)
    kraus = []
    for value, vec in zip(w, v.T):
        if value <= 1e-15:
            continue
        for j in range(d):
            kraus.append(np.sqrt(value) * np.outer(vec, np.eye(d)[j]))
    return Channel.from_kraus(kraus)
