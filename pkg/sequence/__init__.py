from .scenario import Scenario, Slot
from .probtable import NO_MEASUREMENT, ProbTable, all_settings, prob_table, settings_string
from .conditions import ConditionReport, aot_check, all_satisfied, failed, nsit_check, nsit_verdicts_agree
from .search import SequenceSearch, block_problem, chain_objective, chain_terms, sequence_seesaw, tail_povm
from .chains import (
    AllOrdersReport,
    ChainReport,
    adroitness_level,
    all_orders_conditions,
    chain_conditions,
    identity_defect,
    triple_conditions,
)
from .time_dependent import STATE_SETS, TimeDependentReport, time_dependent_check
from .reachability import ReachabilityResult, channel_exists, eigenvalue_obstruction

__all__ = [
    'Scenario',
    'Slot',
    'NO_MEASUREMENT',
    'ProbTable',
    'all_settings',
    'prob_table',
    'settings_string',
    'ConditionReport',
    'aot_check',
    'all_satisfied',
    'failed',
    'nsit_check',
    'nsit_verdicts_agree',
    'SequenceSearch',
    'block_problem',
    'chain_objective',
    'chain_terms',
    'sequence_seesaw',
    'tail_povm',
    'AllOrdersReport',
    'ChainReport',
    'adroitness_level',
    'all_orders_conditions',
    'chain_conditions',
    'identity_defect',
    'triple_conditions',
    'STATE_SETS',
    'TimeDependentReport',
    'time_dependent_check',
    'ReachabilityResult',
    'channel_exists',
    'eigenvalue_obstruction',
]
