from .schema import (
    BUILTIN_SCENARIOS,
    COMMAND_SCHEMAS,
    DOCUMENT_TYPES,
    document_kind,
    get_schema,
    load_document,
    parse_channel,
    parse_document,
    parse_instrument,
    parse_params,
    parse_povm,
    parse_povm_list,
    parse_scenario,
)
from .executor import EXIT_CODES, CommandExecutor

__all__ = [
    'BUILTIN_SCENARIOS',
    'COMMAND_SCHEMAS',
    'DOCUMENT_TYPES',
    'document_kind',
    'get_schema',
    'load_document',
    'parse_channel',
    'parse_document',
    'parse_instrument',
    'parse_params',
    'parse_povm',
    'parse_povm_list',
    'parse_scenario',
    'EXIT_CODES',
    'CommandExecutor',
]
