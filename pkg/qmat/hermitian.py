"""
Immutable Hermitian matrices and density matrices.

Entries are stored as a read-only complex128 array that has been exactly
symmetrized, ``(X + X^dagger) / 2``, after checking that the input deviated
from Hermiticity by less than the tolerance.
"""
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from utils.config import DEFAULT_TOLERANCES
from utils.errors import DimensionMismatchError, HermiticityError

ArrayLike = Union["HermMatrix", np.ndarray, Sequence]


def as_array(x: ArrayLike) -> np.ndarray:
    """Complex ndarray view of a HermMatrix or array-like."""
    if isinstance(x, HermMatrix):
        return x.data
    return np.asarray(x, dtype=np.complex128)


class HermMatrix:
    """
    Complex Hermitian matrix with dimension metadata.

    Args:
        data: Square array-like
        tol: Maximum accepted entrywise deviation from Hermiticity
    """

    __slots__ = ("_data",)
    __array_priority__ = 100

    def __init__(self, data: ArrayLike, tol: Optional[float] = None):
        arr = np.array(as_array(data), dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        tol = DEFAULT_TOLERANCES.hermiticity if tol is None else tol
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation >= tol:
            raise HermiticityError(f"matrix is not Hermitian (deviation {deviation:.3e} >= {tol:.1e})")
        arr = 0.5 * (arr + arr.conj().T)
        arr.flags.writeable = False
        self._data = arr

    @classmethod
    def identity(cls, dim: int) -> "HermMatrix":
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> "HermMatrix":
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diag(cls, values: Iterable[float]) -> "HermMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=float)))

    @classmethod
    def projector(cls, vector: Sequence[complex]) -> "HermMatrix":
        """Rank-one projector onto the normalized ``vector``."""
        v = np.asarray(vector, dtype=np.complex128).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    @property
    def re(self) -> np.ndarray:
        return self._data.real

    @property
    def im(self) -> np.ndarray:
        return self._data.imag

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._data.copy() if copy else self._data
        return self._data.astype(dtype)

    def trace(self) -> float:
        return float(np.trace(self._data).real)

    def eigvalsh(self) -> np.ndarray:
        return np.linalg.eigvalsh(self._data)

    def eigh(self):
        return np.linalg.eigh(self._data)

    def min_eigenvalue(self) -> float:
        return float(self.eigvalsh()[0])

    def max_eigenvalue(self) -> float:
        return float(self.eigvalsh()[-1])

    def is_psd(self, tol: Optional[float] = None) -> bool:
        """Minimum eigenvalue >= -tol * max(1, ||X||)."""
        tol = DEFAULT_TOLERANCES.psd if tol is None else tol
        w = self.eigvalsh()
        scale = max(1.0, float(np.max(np.abs(w))))
        return bool(w[0] >= -tol * scale)

    def allclose(self, other: ArrayLike, atol: float = 1e-10) -> bool:
        other = as_array(other)
        return other.shape == self._data.shape and bool(np.allclose(self._data, other, rtol=0.0, atol=atol))

    def _check(self, other: "HermMatrix") -> None:
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, HermMatrix):
            self._check(other)
            return HermMatrix(self._data + other._data)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, HermMatrix):
            self._check(other)
            return HermMatrix(self._data - other._data)
        return NotImplemented

    def __neg__(self):
        return HermMatrix(-self._data)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, np.integer, np.floating)):
            return HermMatrix(self._data * float(scalar))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, float, np.integer, np.floating)):
            return HermMatrix(self._data / float(scalar))
        return NotImplemented

    def __matmul__(self, other) -> np.ndarray:
        return self._data @ as_array(other)

    def __rmatmul__(self, other) -> np.ndarray:
        return as_array(other) @ self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermMatrix):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash((self.dim, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"HermMatrix(dim={self.dim})"


class DensityMatrix:
    """
    Quantum state: a PSD HermMatrix of unit trace.

    Args:
        mat: Matrix data
        subnormalized: Accept trace <= 1 instead of trace == 1
        tol: Trace tolerance
    """

    def __init__(self, mat: ArrayLike, subnormalized: bool = False, tol: float = 1e-9):
        self.mat = mat if isinstance(mat, HermMatrix) else HermMatrix(mat)
        self.subnormalized = subnormalized
        if not self.mat.is_psd():
            raise ValueError(f"state is not positive semidefinite (min eigenvalue {self.mat.min_eigenvalue():.3e})")
        tr = self.mat.trace()
        if subnormalized:
            if tr > 1.0 + tol:
                raise ValueError(f"sub-normalized state has trace {tr:.12g} > 1")
        elif abs(tr - 1.0) > tol:
            raise ValueError(f"state trace is {tr:.12g}, expected 1")

    @classmethod
    def from_ket(cls, vector: Sequence[complex]) -> "DensityMatrix":
        return cls(HermMatrix.projector(vector))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)

    @property
    def dim(self) -> int:
        return self.mat.dim

    @property
    def data(self) -> np.ndarray:
        return self.mat.data

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, trace={self.mat.trace():.6g})"
