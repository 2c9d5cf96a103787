from .realify import psd_constraint, realify
from .problem import (
    DEFAULT_SOLVER,
    SdpProblem,
    SdpSolution,
    SdpStatus,
    SolverSettings,
    VariableKind,
    solve,
)
from .seesaw import RestartTrace, SeesawResult, restart_seeds, seesaw
from .export import export_sdpa

__all__ = [
    'psd_constraint',
    'realify',
    'DEFAULT_SOLVER',
    'SdpProblem',
    'SdpSolution',
    'SdpStatus',
    'SolverSettings',
    'VariableKind',
    'solve',
    'RestartTrace',
    'SeesawResult',
    'restart_seeds',
    'seesaw',
    'export_sdpa',
]
