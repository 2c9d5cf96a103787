from .programs import (
    DisturbanceSolution,
    InstrumentVariable,
    channel_program,
    clean_choi,
    disturbance_program,
    exact_disturbance_terms,
    joint_measurability_program,
    kraus_adjoint,
    solve_disturbance,
)
from .relations import (
    CommutationResult,
    JointMeasurabilityResult,
    NondisturbanceResult,
    SpanVerdict,
    commutes,
    first_kind,
    jointly_measurable,
    nondisturbance,
    repeatable_eigenvalue_check,
    span_commutativity_criterion,
)
from .report import CompatReport, HierarchyStats, classify, hierarchy_suite, random_commuting_povm

__all__ = [
    'DisturbanceSolution',
    'InstrumentVariable',
    'channel_program',
    'clean_choi',
    'disturbance_program',
    'exact_disturbance_terms',
    'joint_measurability_program',
    'kraus_adjoint',
    'solve_disturbance',
    'CommutationResult',
    'JointMeasurabilityResult',
    'NondisturbanceResult',
    'SpanVerdict',
    'commutes',
    'first_kind',
    'jointly_measurable',
    'nondisturbance',
    'repeatable_eigenvalue_check',
    'span_commutativity_criterion',
    'CompatReport',
    'HierarchyStats',
    'classify',
    'hierarchy_suite',
    'random_commuting_povm',
]
