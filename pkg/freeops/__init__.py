from .transforms import (
    MONOTONE_QUBIT,
    MONOTONE_UNITARY,
    MONOTONE_UNKNOWN,
    DepolarizingParam,
    GlobalPreprocessing,
    PostProcessing,
    commutativity_preserved,
    depolarize_instrument,
    depolarize_local,
    post_process,
    post_process_instrument,
    pre_process_global,
    transport_unitary_instrument,
)
from .monotonicity import (
    DEFAULT_ALPHAS,
    SUITE_KINDS,
    MonotonicityStats,
    TrialRecord,
    monotonicity_suite,
    optimal_order_instruments,
    transported_value,
)

__all__ = [
    'MONOTONE_QUBIT',
    'MONOTONE_UNITARY',
    'MONOTONE_UNKNOWN',
    'DepolarizingParam',
    'GlobalPreprocessing',
    'PostProcessing',
    'commutativity_preserved',
    'depolarize_instrument',
    'depolarize_local',
    'post_process',
    'post_process_instrument',
    'pre_process_global',
    'transport_unitary_instrument',
    'DEFAULT_ALPHAS',
    'SUITE_KINDS',
    'MonotonicityStats',
    'TrialRecord',
    'monotonicity_suite',
    'optimal_order_instruments',
    'transported_value',
]
