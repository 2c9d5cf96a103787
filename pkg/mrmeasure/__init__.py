from .reports import DisturbanceReport, MrReport, OrderValue
from .disturbance import disturbance, disturbance_fixed, disturbance_seq_fixed, marginal_tail
from .macrorealism import chain_objective, mr_pair, mr_sequence, mr_triple

__all__ = [
    'DisturbanceReport',
    'MrReport',
    'OrderValue',
    'disturbance',
    'disturbance_fixed',
    'disturbance_seq_fixed',
    'marginal_tail',
    'chain_objective',
    'mr_pair',
    'mr_sequence',
    'mr_triple',
]
