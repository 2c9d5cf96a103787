"""
Choi-matrix conversions for completely positive maps on C^d.

For a map with Schroedinger Kraus operators K_k the stored Choi matrix is

    M = sum_k vec(K_k^dagger) vec(K_k^dagger)^dagger      (row-major vec)

which is the full transpose of (Id (x) I)|Omega><Omega|. It satisfies
tr_2 M = sum_k K_k^dagger K_k (the induced POVM element) and

    I^*(B) = tr_2[M (1 (x) B^T)] = sum_k K_k^dagger B K_k.

For real symmetric B the transpose is invisible and the contraction reads
tr_2[M (1 (x) B)].
"""
from typing import List, Sequence

import numpy as np

from utils.errors import DimensionMismatchError


def choi_dim(choi: np.ndarray) -> int:
    n = choi.shape[0]
    d = int(round(np.sqrt(n)))
    if d * d != n or choi.shape != (n, n):
        raise DimensionMismatchError(f"Choi matrix of shape {choi.shape} is not d^2 x d^2")
    return d


def choi_from_kraus(kraus: Sequence[np.ndarray]) -> np.ndarray:
    """Choi matrix of rho -> sum_k K rho K^dagger."""
    kraus = [np.asarray(k, dtype=np.complex128) for k in kraus]
    d = kraus[0].shape[1]
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for k in kraus:
        if k.shape != (d, d):
            raise DimensionMismatchError(f"Kraus operator of shape {k.shape}, expected {(d, d)}")
        w = k.conj().T.reshape(-1)
        m += np.outer(w, w.conj())
    return m


def kraus_from_choi(choi: np.ndarray, tol: float = 1e-12) -> List[np.ndarray]:
    """
    Minimal Kraus decomposition from the eigendecomposition of the Choi matrix.

    Eigenvalues below ``tol * max(1, largest)`` are dropped; negative noise is clamped.
    """
    d = choi_dim(choi)
    w, v = np.linalg.eigh(0.5 * (choi + choi.conj().T))
    cutoff = tol * max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    kraus = []
    for value, vec in zip(w[::-1], v.T[::-1]):
        if value <= cutoff:
            break
        k_dag = np.sqrt(value) * vec.reshape(d, d)
        kraus.append(k_dag.conj().T)
    if not kraus:
        kraus.append(np.zeros((d, d), dtype=np.complex128))
    return kraus


def choi_adjoint_apply(choi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Heisenberg action I^*(X) = tr_2[M (1 (x) X^T)]."""
    d = choi_dim(choi)
    return np.einsum("iajb,ab->ij", choi.reshape(d, d, d, d), np.asarray(x, dtype=np.complex128))


def choi_apply(choi: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Schroedinger action I(rho) = sum_k K rho K^dagger."""
    d = choi_dim(choi)
    return np.einsum("ij,iajb->ab", np.asarray(rho, dtype=np.complex128), choi.reshape(d, d, d, d).conj())


def choi_to_superop(choi: np.ndarray) -> np.ndarray:
    """Liouville matrix S with vec(I(rho)) = S vec(rho), row-major vec."""
    d = choi_dim(choi)
    return choi.reshape(d, d, d, d).conj().transpose(1, 3, 0, 2).reshape(d * d, d * d)


def superop_to_choi(superop: np.ndarray) -> np.ndarray:
    d = choi_dim(superop)
    return superop.reshape(d, d, d, d).transpose(2, 0, 3, 1).conj().reshape(d * d, d * d)


def compose_chois(after: np.ndarray, before: np.ndarray) -> np.ndarray:
    """Choi matrix of ``after o before`` (``before`` acts first on states)."""
    return superop_to_choi(choi_to_superop(after) @ choi_to_superop(before))
