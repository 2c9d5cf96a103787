"""
Fixed-order chain objective and the alternating search over its instruments.

For POVMs Q_1..Q_n and instruments I_1..I_{n-1} the chain objective is

    sum_k D_{Q_k}(E_k, I_k),   E_k = I_{k+1}^* ... I_{n-1}^* Q_n,

which vanishes exactly when every condition Q_k ND E_k holds for the given
instruments. Each instrument enters affinely once the others are fixed, so a
block update is one SDP.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from compat import InstrumentVariable, exact_disturbance_terms, kraus_adjoint
from measurement import Instrument, Povm, lueders_instrument, mix_instruments, random_instrument, sequential_povm
from sdpcore import DEFAULT_SOLVER, SdpProblem, SeesawResult, SolverSettings, seesaw, solve
from utils.config import DEFAULT_TOLERANCES, SeesawConfig, Tolerances
from utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)


def tail_povm(instruments: Sequence[Instrument], last: Povm) -> Povm:
    """Sequential POVM I_1^* I_2^* ... last, with nested tuple labels."""
    tail = last
    for instrument in reversed(list(instruments)):
        tail = sequential_povm(instrument, tail)
    return tail


def _check_chain(povms: Sequence[Povm], instruments: Sequence[Optional[Instrument]]) -> None:
    if len(povms) < 2:
        raise ValueError("a chain needs at least two POVMs")
    dim = povms[0].dim
    for p in povms:
        if p.dim != dim:
            raise DimensionMismatchError("all POVMs of a chain must share one dimension")
    if len(instruments) < len(povms) - 1:
        raise ValueError(f"{len(instruments)} instruments for a chain of {len(povms)} POVMs")


def chain_terms(povms: Sequence[Povm], instruments: Sequence[Instrument]) -> List[float]:
    """D_{Q_k}(E_k, I_k) for k = 1..n-1, evaluated exactly."""
    _check_chain(povms, instruments)
    n = len(povms)
    terms = []
    for k in range(n - 1):
        tail = tail_povm(instruments[k + 1:n - 1], povms[-1])
        terms.append(float(sum(exact_disturbance_terms(instruments[k], [e.data for e in tail.elements]))))
    return terms


def chain_objective(povms: Sequence[Povm], instruments: Sequence[Instrument]) -> float:
    return float(sum(chain_terms(povms, instruments)))


def block_problem(povms: Sequence[Povm], instruments: Sequence[Instrument], k: int):
    """
    SDP for instrument k (0-based) with every other instrument fixed.

    Terms after k do not depend on I_k and are left out.

    Returns:
        (problem, instrument variable)
    """
    n = len(povms)
    problem = SdpProblem(f"chain_block[{k + 1}]")
    var = InstrumentVariable(problem, povms[k])
    tail = [e.data for e in tail_povm(instruments[k + 1:n - 1], povms[-1]).elements]
    bounds = []

    def bound(expr) -> None:
        lam = problem.scalar(f"lambda[{len(bounds)}]", nonneg=True)
        problem.norm_bound(expr, lam)
        bounds.append(lam)

    for e in tail:
        bound(var.total_adjoint(e) - e)
    for j in range(k):
        between = list(range(j + 1, k))
        head = [op for x in instruments[j].labels for op in instruments[j].kraus(x)]
        for combo in itertools.product(*[instruments[m].labels for m in between]):
            for x in range(len(povms[k])):
                for e in tail:
                    expr = var.adjoint(x, e)
                    for m, label in reversed(list(zip(between, combo))):
                        expr = kraus_adjoint(instruments[m].kraus(label), expr)
                    bound(kraus_adjoint(head, expr) - expr)
    problem.minimize(sum(bounds[1:], bounds[0]))
    return problem, var


@dataclass
class SequenceSearch:
    """Best instruments found for a fixed order (an upper bound on the infimum)."""

    value: float
    instruments: List[Instrument]
    terms: List[float]
    result: SeesawResult

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "terms": list(self.terms),
            "instruments": [i.to_dict() for i in self.instruments],
            "seesaw": self.result.to_dict(),
        }


def sequence_seesaw(povms: Sequence[Povm], config: SeesawConfig = SeesawConfig(),
                    settings: SolverSettings = DEFAULT_SOLVER,
                    tolerances: Tolerances = DEFAULT_TOLERANCES, threads: int = 1,
                    initial: Optional[Sequence[Instrument]] = None) -> SequenceSearch:
    """
    Minimize the chain objective over instruments of Q_1..Q_{n-1}.

    Restart 0 starts from ``initial`` (Lueders instruments when omitted);
    later restarts mix it with random instruments. Blocks are swept from the
    tail of the chain towards its head.

    Args:
        povms: Ordered POVMs Q_1..Q_n
        config: Restarts, sweeps, seed and perturbation weight
        settings: Solver settings for every block SDP
        tolerances: See-saw stopping tolerances
        threads: Restarts solved concurrently when > 1
        initial: Starting instruments for Q_1..Q_{n-1}

    Returns:
        SequenceSearch
    """
    _check_chain(povms, [None] * (len(povms) - 1))
    n = len(povms)
    heads = list(povms[:n - 1])
    start = list(initial) if initial is not None else [lueders_instrument(p) for p in heads]

    def ordered(point: List[Instrument]) -> List[Instrument]:
        return list(reversed(point))

    def make_block(k: int):
        def update(point: List[Instrument]) -> Instrument:
            problem, var = block_problem(povms, ordered(point), k)
            solution = solve(problem, settings).require_optimal(problem.name)
            return var.to_instrument(solution)
        return update

    def initial_point(restart: int, rng: np.random.Generator) -> List[Instrument]:
        if restart == 0:
            chosen = start
        else:
            chosen = [mix_instruments(s, random_instrument(p, rng), config.perturbation)
                      for s, p in zip(start, heads)]
        return list(reversed(chosen))

    blocks = [make_block(k) for k in reversed(range(n - 1))]
    result = seesaw(blocks, lambda point: chain_objective(povms, ordered(point)), initial_point,
                    max_iters=config.max_iters, restarts=config.restarts, rng_seed=config.seed,
                    tol=tolerances.seesaw_improvement, regression_tol=tolerances.seesaw_regression,
                    threads=threads)
    best = ordered(result.best_point)
    terms = chain_terms(povms, best)
    logger.debug("chain of %d: best value %.6g from restart %d", n, result.best_value, result.best_restart)
    return SequenceSearch(float(sum(terms)), best, terms, result)
