"""
Seeded random matrices for property tests and counterexample searches.
"""
from typing import Optional

import numpy as np

from .hermitian import DensityMatrix, HermMatrix


def ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    q, r = np.linalg.qr(ginibre(dim, dim, rng))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> HermMatrix:
    g = ginibre(dim, dim, rng)
    return HermMatrix(scale * 0.5 * (g + g.conj().T))


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Random state from the induced measure of the given rank (full by default)."""
    g = ginibre(dim, rank or dim, rng)
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_pure_state(dim: int, rng: np.random.Generator) -> DensityMatrix:
    return random_density(dim, rng, rank=1)
