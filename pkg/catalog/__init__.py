from .constructions import (
    HollowTriangle,
    QutritTriple,
    ReachabilityInstance,
    WeakGrid,
    build_block_projectors,
    build_hollow_triangle,
    build_noncommuting_pair,
    build_qutrit_triple,
    build_reachability_instances,
    build_repeatable_observable,
    build_trivial_povms,
    build_two_time_scenario,
    build_weak_povm,
    literal_matrix,
    nilpotent_map,
)
from .registry import (
    CatalogEntry,
    CatalogVerification,
    Claim,
    ClaimResult,
    build_entry,
    list_entries,
    verify_claims,
)

__all__ = [
    'HollowTriangle',
    'QutritTriple',
    'ReachabilityInstance',
    'WeakGrid',
    'build_block_projectors',
    'build_hollow_triangle',
    'build_noncommuting_pair',
    'build_qutrit_triple',
    'build_reachability_instances',
    'build_repeatable_observable',
    'build_trivial_povms',
    'build_two_time_scenario',
    'build_weak_povm',
    'literal_matrix',
    'nilpotent_map',
    'CatalogEntry',
    'CatalogVerification',
    'Claim',
    'ClaimResult',
    'build_entry',
    'list_entries',
    'verify_claims',
]
