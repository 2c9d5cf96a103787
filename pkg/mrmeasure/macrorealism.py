"""
Permutation-summed macrorealism measures.

For each ordering of the POVMs the fixed-order chain objective is minimized
over the instruments of every measurement but the last; the measure is the
sum over orderings. For two POVMs each ordering is a single SDP.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Any, List, Optional, Sequence

from measurement import Povm
from sdpcore import DEFAULT_SOLVER, SolverSettings, restart_seeds
from sequence import chain_objective, sequence_seesaw
from utils.config import DEFAULT_TOLERANCES, SeesawConfig, Tolerances
from utils.errors import DimensionMismatchError

from .disturbance import disturbance
from .reports import MrReport, OrderValue

logger = logging.getLogger(__name__)

__all__ = ['chain_objective', 'mr_pair', 'mr_sequence', 'mr_triple']


def mr_pair(a: Povm, b: Povm, settings: SolverSettings = DEFAULT_SOLVER,
            names: Sequence[Any] = ("A", "B")) -> MrReport:
    """D_A(B) + D_B(A), both certified SDP optima."""
    forward = disturbance(a, b, settings)
    backward = disturbance(b, a, settings)
    orders = [
        OrderValue(tuple(names), forward.value, certified=forward.certified),
        OrderValue(tuple(reversed(names)), backward.value, certified=backward.certified),
    ]
    return MrReport(orders, seed=0, upper_bound=False)


def mr_sequence(povms: Sequence[Povm], names: Optional[Sequence[Any]] = None,
                config: SeesawConfig = SeesawConfig(), settings: SolverSettings = DEFAULT_SOLVER,
                tolerances: Tolerances = DEFAULT_TOLERANCES, threads: int = 1) -> MrReport:
    """
    Sum of the minimized chain objective over all n! orderings.

    Args:
        povms: Two or more POVMs of equal dimension
        names: Labels used in the report (default A, B, C, ...)
        config: See-saw parameters; each ordering gets its own seed spawned from ``config.seed``
        settings: Solver settings
        tolerances: See-saw stopping tolerances
        threads: Orderings searched concurrently when > 1

    Returns:
        MrReport with one entry per ordering, in permutation order
    """
    if len(povms) < 2:
        raise ValueError("a macrorealism measure needs at least two POVMs")
    if len({p.dim for p in povms}) != 1:
        raise DimensionMismatchError("all POVMs must share one dimension")
    names = tuple(names) if names is not None else tuple(chr(ord("A") + i) for i in range(len(povms)))
    perms = list(itertools.permutations(range(len(povms))))
    seeds = restart_seeds(config.seed, len(perms))
    if len(povms) > 3:
        logger.warning("macrorealism measure for %d POVMs is experimental", len(povms))

    def run(index: int) -> OrderValue:
        perm = perms[index]
        search = sequence_seesaw([povms[i] for i in perm], replace(config, seed=seeds[index]),
                                 settings, tolerances)
        order = tuple(names[i] for i in perm)
        logger.info("order %s: %.6g", "->".join(str(x) for x in order), search.value)
        return OrderValue(order, search.value, seed=seeds[index], search=search)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            orders: List[OrderValue] = list(pool.map(run, range(len(perms))))
    else:
        orders = [run(i) for i in range(len(perms))]
    return MrReport(orders, seed=config.seed, upper_bound=True, experimental=len(povms) > 3)


def mr_triple(a: Povm, b: Povm, c: Povm, config: SeesawConfig = SeesawConfig(),
              settings: SolverSettings = DEFAULT_SOLVER, tolerances: Tolerances = DEFAULT_TOLERANCES,
              threads: int = 1, names: Sequence[Any] = ("A", "B", "C")) -> MrReport:
    """Six orderings, each minimized over the instrument pair by see-saw."""
    return mr_sequence([a, b, c], names, config, settings, tolerances, threads)
