"""
Linear-algebra routines on Hermitian matrices.

Tensor index convention: row-major, first factor major, so that
``kron(a, b)[i*db + k, j*db + l] = a[i, j] * b[k, l]``. The Choi-matrix
constraints in ``measurement`` and ``compat`` rely on this convention.
"""
from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np

from utils.config import DEFAULT_TOLERANCES
from utils.errors import DimensionMismatchError

from .hermitian import ArrayLike, HermMatrix, as_array

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def op_norm(x: ArrayLike) -> float:
    """Operator norm of a Hermitian matrix: largest absolute eigenvalue."""
    w = np.linalg.eigvalsh(as_array(x))
    return float(np.max(np.abs(w))) if w.size else 0.0


def min_eigenvalue(x: ArrayLike) -> float:
    return float(np.linalg.eigvalsh(as_array(x))[0])


def is_psd(x: ArrayLike, tol: float = None) -> bool:
    """PSD test with slack scaled by max(1, ||x||)."""
    tol = DEFAULT_TOLERANCES.psd if tol is None else tol
    w = np.linalg.eigvalsh(as_array(x))
    return bool(w[0] >= -tol * max(1.0, float(np.max(np.abs(w)))))


def kron(a: ArrayLike, b: ArrayLike) -> HermMatrix:
    """Kronecker product of two Hermitian matrices."""
    return HermMatrix(np.kron(as_array(a), as_array(b)))


def partial_trace_2(x: Union[HermMatrix, np.ndarray], dim_a: int, dim_b: int):
    """
    Trace out the second tensor factor.

    Args:
        x: Matrix on C^dim_a (x) C^dim_b; HermMatrix or plain ndarray
        dim_a: Dimension of the kept factor
        dim_b: Dimension of the traced factor

    Returns:
        HermMatrix when given a HermMatrix, otherwise an ndarray
    """
    arr = as_array(x)
    if arr.shape != (dim_a * dim_b, dim_a * dim_b):
        raise DimensionMismatchError(
            f"matrix of shape {arr.shape} is not on a {dim_a}x{dim_b} product space")
    reduced = np.einsum("ikjk->ij", arr.reshape(dim_a, dim_b, dim_a, dim_b))
    return HermMatrix(reduced) if isinstance(x, HermMatrix) else reduced


def direct_sum(*blocks: ArrayLike) -> HermMatrix:
    """Block-diagonal embedding of the given Hermitian blocks."""
    arrays = [as_array(b) for b in blocks]
    total = sum(a.shape[0] for a in arrays)
    out = np.zeros((total, total), dtype=np.complex128)
    offset = 0
    for a in arrays:
        n = a.shape[0]
        out[offset:offset + n, offset:offset + n] = a
        offset += n
    return HermMatrix(out)


def commutator(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    a, b = as_array(a), as_array(b)
    return a @ b - b @ a


def commutator_norm(a: ArrayLike, b: ArrayLike) -> float:
    """Operator norm of [a, b] (a normal matrix for Hermitian a, b)."""
    c = commutator(a, b)
    if c.size == 0:
        return 0.0
    return float(np.linalg.norm(c, ord=2))


def sqrtm_psd(x: ArrayLike) -> np.ndarray:
    """Principal square root with eigenvalues clamped at zero."""
    w, v = np.linalg.eigh(as_array(x))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


@dataclass(frozen=True)
class SpanResult:
    """Least-squares projection of a matrix onto a real span."""

    member: bool
    residual: float
    coefficients: np.ndarray

    def __bool__(self) -> bool:
        return self.member


def span_membership(x: ArrayLike, basis: Sequence[ArrayLike], tol: float = None) -> SpanResult:
    """
    Decide whether ``x`` lies in the real span of ``basis``.

    Args:
        x: Hermitian matrix to test
        basis: Hermitian spanning family (need not be independent)
        tol: Frobenius residual threshold

    Returns:
        SpanResult with membership flag, residual and coefficients
    """
    tol = DEFAULT_TOLERANCES.span_residual if tol is None else tol
    target = as_array(x)
    mats: List[np.ndarray] = [as_array(b) for b in basis]
    for m in mats:
        if m.shape != target.shape:
            raise DimensionMismatchError(f"basis element of shape {m.shape} vs {target.shape}")
    if not mats:
        residual = float(np.linalg.norm(target))
        return SpanResult(residual < tol, residual, np.zeros(0))

    def _realvec(m: np.ndarray) -> np.ndarray:
        return np.concatenate([m.real.reshape(-1), m.imag.reshape(-1)])

    design = np.stack([_realvec(m) for m in mats], axis=1)
    rhs = _realvec(target)
    coeffs, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    residual = float(np.linalg.norm(design @ coeffs - rhs))
    return SpanResult(residual < tol, residual, coeffs)
