"""
Alternating (see-saw) minimization over blocks of variables.

Each block update is a convex problem with the other blocks held fixed, so
the objective never increases along an accepted update. The result is an
upper bound on the joint infimum, not a certified optimum.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from utils.config import DEFAULT_TOLERANCES
from utils.errors import SolverFailure

logger = logging.getLogger(__name__)

Point = List[Any]
BlockUpdate = Callable[[Point], Any]


@dataclass
class RestartTrace:
    """Objective values of one restart: entry 0 is the initial point, then one per sweep."""

    restart: int
    seed: int
    values: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    rejected_updates: int = 0
    failure: Optional[str] = None

    @property
    def best_value(self) -> float:
        return min(self.values) if self.values else math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "restart": self.restart,
            "seed": self.seed,
            "values": list(self.values),
            "iterations": self.iterations,
            "converged": self.converged,
            "rejected_updates": self.rejected_updates,
            "failure": self.failure,
        }


@dataclass
class SeesawResult:
    best_value: float
    best_point: Point
    best_restart: int
    traces: List[RestartTrace]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "best_value": self.best_value,
            "best_restart": self.best_restart,
            "restart_values": [t.best_value if t.failure is None else None for t in self.traces],
            "traces": [t.to_dict() for t in self.traces],
        }


def restart_seeds(rng_seed: int, restarts: int) -> List[int]:
    """Deterministic per-restart seeds spawned from one root seed."""
    children = np.random.SeedSequence(rng_seed).spawn(restarts)
    return [int(c.generate_state(1)[0]) for c in children]


def _run_restart(restart: int, seed: int, blocks: Sequence[BlockUpdate],
                 objective: Callable[[Point], float],
                 initial_point: Callable[[int, np.random.Generator], Point],
                 max_iters: int, tol: float, regression_tol: float):
    trace = RestartTrace(restart=restart, seed=seed)
    rng = np.random.default_rng(seed)
    point = list(initial_point(restart, rng))
    current = float(objective(point))
    trace.values.append(current)

    for sweep in range(max_iters):
        start = current
        for i, update in enumerate(blocks):
            candidate = list(point)
            candidate[i] = update(point)
            value = float(objective(candidate))
            if value <= current + regression_tol:
                point, current = candidate, value
            else:
                trace.rejected_updates += 1
                logger.debug("restart %d sweep %d: block %d update rejected (%.12g > %.12g)",
                             restart, sweep, i, value, current)
        trace.values.append(current)
        trace.iterations = sweep + 1
        if len(blocks) == 1 or start - current < tol:
            trace.converged = True
            break
    logger.debug("restart %d finished after %d sweeps at %.12g", restart, trace.iterations, current)
    return trace, point


def seesaw(blocks: Sequence[BlockUpdate], objective: Callable[[Point], float],
           initial_point: Callable[[int, np.random.Generator], Point],
           max_iters: int = 200, restarts: int = 5, rng_seed: int = 0,
           tol: float = DEFAULT_TOLERANCES.seesaw_improvement,
           regression_tol: float = DEFAULT_TOLERANCES.seesaw_regression,
           threads: int = 1) -> SeesawResult:
    """
    Minimize ``objective`` by cycling through ``blocks``.

    Args:
        blocks: ``blocks[i](point)`` returns the optimal i-th component with the rest fixed
        objective: Exact evaluation of the objective at a point
        initial_point: ``initial_point(restart, rng)`` returns the starting point
        max_iters: Maximum number of sweeps per restart
        restarts: Number of independent restarts
        rng_seed: Root seed; restart seeds are spawned from it
        tol: A sweep improving by less than this ends the restart
        regression_tol: Updates that raise the objective by more than this are rejected
        threads: Restarts solved concurrently when > 1

    Returns:
        SeesawResult with the best point over successful restarts and every trace
    """
    seeds = restart_seeds(rng_seed, restarts)

    def job(r: int):
        try:
            return _run_restart(r, seeds[r], blocks, objective, initial_point, max_iters, tol, regression_tol)
        except SolverFailure as e:
            logger.warning("restart %d skipped: %s", r, e)
            return RestartTrace(restart=r, seed=seeds[r], failure=str(e)), None

    if threads > 1 and restarts > 1:
        with ThreadPoolExecutor(max_workers=min(threads, restarts)) as pool:
            outcomes = list(pool.map(job, range(restarts)))
    else:
        outcomes = [job(r) for r in range(restarts)]

    traces = [t for t, _ in outcomes]
    best_restart, best_point, best_value = -1, None, math.inf
    for trace, point in outcomes:
        if point is None:
            continue
        if trace.values[-1] < best_value:
            best_restart, best_point, best_value = trace.restart, point, trace.values[-1]
    if best_point is None:
        raise SolverFailure("every see-saw restart failed", "numerical_failure",
                            {"failures": [t.failure for t in traces]})
    return SeesawResult(best_value, best_point, best_restart, traces)
