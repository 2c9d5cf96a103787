"""
Real symmetric embedding of complex Hermitian matrices.

    H  ->  [[Re H, -Im H],
            [Im H,  Re H]]

H is PSD iff the embedding is PSD; the spectrum of the embedding is the
spectrum of H with every eigenvalue doubled. Works for numpy arrays and for
cvxpy expressions alike.
"""
from typing import Any

import cvxpy as cp
import numpy as np

from qmat import as_array


def realify(h: Any):
    """Embed a Hermitian matrix or cvxpy expression as a real symmetric block matrix."""
    if isinstance(h, cp.Expression):
        n = h.shape[0]
        if h.is_complex():
            re, im = cp.real(h), cp.imag(h)
            return cp.bmat([[re, -im], [im, re]])
        zero = np.zeros((n, n))
        return cp.bmat([[h, zero], [zero, h]])
    arr = as_array(h)
    re, im = arr.real, arr.imag
    return np.block([[re, -im], [im, re]])


def psd_constraint(expr: Any) -> cp.Constraint:
    """
    ``expr >= 0`` in the semidefinite order, stated on the realified matrix.

    The realified block is symmetrized explicitly, so the constraint is exact
    for any expression whose value is Hermitian.
    """
    block = realify(expr)
    return 0.5 * (block + block.T) >> 0
