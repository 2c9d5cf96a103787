from .hermitian import DensityMatrix, HermMatrix, as_array
from .linalg import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SpanResult,
    commutator,
    commutator_norm,
    direct_sum,
    is_psd,
    ket,
    kron,
    min_eigenvalue,
    op_norm,
    partial_trace_2,
    span_membership,
    sqrtm_psd,
)
from .codec import matrix_from_json, matrix_to_json, operator_from_json, parse_scalar
from .sampling import ginibre, random_density, random_hermitian, random_pure_state, random_unitary

__all__ = [
    'DensityMatrix',
    'HermMatrix',
    'as_array',
    'PAULI_I',
    'PAULI_X',
    'PAULI_Y',
    'PAULI_Z',
    'SpanResult',
    'commutator',
    'commutator_norm',
    'direct_sum',
    'is_psd',
    'ket',
    'kron',
    'min_eigenvalue',
    'op_norm',
    'partial_trace_2',
    'span_membership',
    'sqrtm_psd',
    'matrix_from_json',
    'matrix_to_json',
    'parse_scalar',
    'ginibre',
    'random_density',
    'random_hermitian',
    'random_pure_state',
    'random_unitary',
]
