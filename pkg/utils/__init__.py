from .config import (
    DEFAULT_TOLERANCES,
    TOOL_NAME,
    TOOL_VERSION,
    RunConfig,
    SeesawConfig,
    Tolerances,
    thread_count,
)
from .errors import (
    CatalogError,
    CompletenessError,
    ConfigError,
    DimensionMismatchError,
    HermiticityError,
    HierarchyViolation,
    InputParseError,
    NondisturbError,
    SolverFailure,
    UnknownOutcomeError,
)
from .log import configure_logging
from .serialization import dumps, round_float, to_jsonable

__all__ = [
    'DEFAULT_TOLERANCES',
    'TOOL_NAME',
    'TOOL_VERSION',
    'RunConfig',
    'SeesawConfig',
    'Tolerances',
    'thread_count',
    'CatalogError',
    'CompletenessError',
    'ConfigError',
    'DimensionMismatchError',
    'HermiticityError',
    'HierarchyViolation',
    'InputParseError',
    'NondisturbError',
    'SolverFailure',
    'UnknownOutcomeError',
    'configure_logging',
    'dumps',
    'round_float',
    'to_jsonable',
]
