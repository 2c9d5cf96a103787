"""
Randomized property suites for the free operations.

For the proof-backed kinds the measure after the transformation is bounded
by evaluating the transported instruments of the pre-image optimum exactly,
so the comparison involves a single optimization per ordering. The
``global_channel`` kind compares two independent pair optima and only
searches for counterexamples.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from compat import commutes, random_commuting_povm
from measurement import Instrument, Povm, random_channel, random_povm, unitary_channel
from mrmeasure import disturbance, mr_pair
from qmat import random_unitary
from sdpcore import DEFAULT_SOLVER, SolverSettings, restart_seeds
from sequence import chain_objective, sequence_seesaw
from utils.config import DEFAULT_TOLERANCES, SeesawConfig, Tolerances
from utils.errors import ConfigError

from .transforms import (
    DepolarizingParam,
    PostProcessing,
    commutativity_preserved,
    depolarize_instrument,
    depolarize_local,
    post_process,
    post_process_instrument,
    pre_process_global,
    transport_unitary_instrument,
)

logger = logging.getLogger(__name__)

SUITE_KINDS = ("post_processing", "unitary", "depolarizing", "qubit_channel", "global_channel")
DEFAULT_ALPHAS = (0.25, 0.5, 0.75)

# per-ordering instruments: ordering -> instruments of its first n-1 POVMs
OrderInstruments = Dict[Tuple[int, ...], List[Instrument]]
InstrumentMap = Callable[[int, Instrument], Instrument]


@dataclass
class TrialRecord:
    trial: int
    seed: int
    before: float
    after: float
    ok: bool
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.before - self.after

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "before": self.before,
            "after": self.after,
            "margin": self.margin,
            "ok": self.ok,
            "details": dict(self.details),
        }


@dataclass
class MonotonicityStats:
    """Outcome of one suite; ``proof_backed`` is False for counterexample searches."""

    kind: str
    trials: int
    seed: int
    dim: int
    povm_count: int
    proof_backed: bool
    records: List[TrialRecord] = field(default_factory=list)

    @property
    def failures(self) -> List[TrialRecord]:
        return [r for r in self.records if not r.ok]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def min_margin(self) -> float:
        return min((r.margin for r in self.records), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "trials": self.trials,
            "seed": self.seed,
            "dim": self.dim,
            "povm_count": self.povm_count,
            "proof_backed": self.proof_backed,
            "failures": len(self.failures),
            "passed": self.passed,
            "min_margin": self.min_margin,
            "records": [r.to_dict() for r in self.records],
        }


def optimal_order_instruments(povms: Sequence[Povm], search: SeesawConfig,
                              settings: SolverSettings = DEFAULT_SOLVER,
                              tolerances: Tolerances = DEFAULT_TOLERANCES) -> OrderInstruments:
    """
    Instruments minimizing the chain objective of every ordering.

    Pairs use the SDP optimum directly; longer tuples use the see-saw.
    """
    out: OrderInstruments = {}
    for perm in itertools.permutations(range(len(povms))):
        ordered = [povms[i] for i in perm]
        if len(povms) == 2:
            out[perm] = [disturbance(ordered[0], ordered[1], settings).instrument]
        else:
            out[perm] = sequence_seesaw(ordered, search, settings, tolerances).instruments
    return out


def transported_value(povms: Sequence[Povm], instruments: OrderInstruments,
                      transform: Optional[InstrumentMap] = None) -> float:
    """Sum over orderings of the chain objective at the (transported) instruments."""
    total = 0.0
    for perm, chain in instruments.items():
        if transform is not None:
            chain = [transform(i, inst) for i, inst in zip(perm, chain)]
        total += chain_objective([povms[i] for i in perm], chain)
    return float(total)


def _post_processing(povms: List[Povm], rng: np.random.Generator, trial: int, alphas, tolerances: Tolerances):
    kernels = [PostProcessing.random(len(p), int(rng.integers(1, len(p) + 2)), rng) for p in povms]
    mapped = [post_process(p, k) for p, k in zip(povms, kernels)]
    return mapped, (lambda i, inst: post_process_instrument(inst, kernels[i])), \
        {"outputs": [k.outputs for k in kernels]}


def _unitary(povms: List[Povm], rng: np.random.Generator, trial: int, alphas, tolerances: Tolerances):
    u = random_unitary(povms[0].dim, rng)
    pre = pre_process_global(povms, unitary_channel(u))
    return pre.povms, (lambda i, inst: transport_unitary_instrument(inst, u)), {}


def _depolarizing(povms: List[Povm], rng: np.random.Generator, trial: int, alphas, tolerances: Tolerances):
    alpha = float(alphas[trial % len(alphas)])
    position = int(rng.integers(len(povms)))
    param = DepolarizingParam(alpha, povms[0].dim)
    mapped = list(povms)
    mapped[position] = depolarize_local(povms[position], param)

    def transform(i: int, inst: Instrument) -> Instrument:
        return depolarize_instrument(inst, param, tolerances=tolerances) if i == position else inst

    return mapped, transform, {"alpha": alpha, "position": position}


_FEASIBLE_POINT_KINDS = {
    "post_processing": _post_processing,
    "unitary": _unitary,
    "depolarizing": _depolarizing,
}


def _feasible_point_trial(kind: str, trial: int, seed: int, dim: int, povm_count: int, outcomes: int,
                          alphas: Sequence[float], slack: float, search: SeesawConfig,
                          settings: SolverSettings, tolerances: Tolerances) -> TrialRecord:
    rng = np.random.default_rng(seed)
    povms = [random_povm(dim, outcomes, rng) for _ in range(povm_count)]
    instruments = optimal_order_instruments(povms, search, settings, tolerances)
    before = transported_value(povms, instruments)
    # optimal instruments are solver output, complete only to solver accuracy
    point_tolerances = tolerances.with_overrides(
        completeness=max(tolerances.completeness, tolerances.nondisturbance))
    mapped, transform, details = _FEASIBLE_POINT_KINDS[kind](povms, rng, trial, alphas, point_tolerances)
    after = transported_value(mapped, instruments, transform)
    return TrialRecord(trial, seed, before, after, after <= before + slack, details)


def _qubit_channel_trial(trial: int, seed: int, outcomes: int, slack: float,
                         settings: SolverSettings, tolerances: Tolerances) -> TrialRecord:
    rng = np.random.default_rng(seed)
    u = random_unitary(2, rng)
    a = random_commuting_povm(2, outcomes, rng, u)
    b = random_commuting_povm(2, outcomes, rng, u)
    channel = random_channel(2, rng)
    preserved = commutativity_preserved(a, b, channel, tolerances.commutator)
    mapped = pre_process_global([a, b], channel).povms
    before = mr_pair(a, b, settings).total
    after = mr_pair(mapped[0], mapped[1], settings).total
    still = commutes(mapped[0], mapped[1], max(tolerances.commutator, 1e-8))
    details = {"commutativity_preserved": preserved, "max_commutator_norm": still.max_commutator_norm}
    return TrialRecord(trial, seed, before, after, preserved and after <= before + slack, details)


def _global_channel_trial(trial: int, seed: int, dim: int, outcomes: int, slack: float,
                          settings: SolverSettings) -> TrialRecord:
    rng = np.random.default_rng(seed)
    a, b = random_povm(dim, outcomes, rng), random_povm(dim, outcomes, rng)
    channel = random_channel(dim, rng)
    mapped = pre_process_global([a, b], channel)
    before = mr_pair(a, b, settings).total
    after = mr_pair(mapped.povms[0], mapped.povms[1], settings).total
    record = TrialRecord(trial, seed, before, after, after <= before + slack,
                         {"monotonicity": mapped.monotonicity})
    if not record.ok:
        logger.warning("global preprocessing counterexample: trial %d (seed %d), %.6g -> %.6g",
                       trial, seed, before, after)
    return record


def monotonicity_suite(kind: str, trials: int, seed: int = 0, dim: int = 2, povm_count: int = 2,
                       outcomes: int = 2, alphas: Sequence[float] = DEFAULT_ALPHAS, slack: Optional[float] = None,
                       search: SeesawConfig = SeesawConfig(restarts=1, max_iters=20),
                       settings: SolverSettings = DEFAULT_SOLVER,
                       tolerances: Tolerances = DEFAULT_TOLERANCES, threads: int = 1) -> MonotonicityStats:
    """
    Run one free-operation suite on random POVM tuples.

    Args:
        kind: One of ``SUITE_KINDS``
        trials: Number of random instances
        seed: Root seed; every trial gets a spawned child seed
        dim: Hilbert-space dimension (forced to 2 for ``qubit_channel``)
        povm_count: 2 (pairs, SDP optima) or 3 (triples, see-saw optima); pairs only for channel kinds
        outcomes: Outcomes per random POVM
        alphas: Depolarizing weights, cycled over trials
        slack: Allowed increase before a trial counts as a failure
            (defaults to ``tolerances.monotonicity_margin``)
        search: See-saw parameters for the pre-image optimum of triples
        settings: Solver settings
        tolerances: Numerical tolerances
        threads: Trials run concurrently when > 1

    Returns:
        MonotonicityStats with one record per trial
    """
    if kind not in SUITE_KINDS:
        raise ConfigError(f"unknown monotonicity suite '{kind}' (expected one of {', '.join(SUITE_KINDS)})")
    if trials < 1:
        raise ConfigError("trials must be positive")
    if povm_count < 2:
        raise ConfigError("monotonicity suites need at least two POVMs")
    if kind in ("qubit_channel", "global_channel") and povm_count != 2:
        raise ConfigError(f"suite '{kind}' runs on pairs only")
    if kind == "qubit_channel":
        dim = 2
    if slack is None:
        slack = tolerances.monotonicity_margin
    seeds = restart_seeds(seed, trials)

    def run(t: int) -> TrialRecord:
        if kind == "qubit_channel":
            return _qubit_channel_trial(t, seeds[t], outcomes, slack, settings, tolerances)
        if kind == "global_channel":
            return _global_channel_trial(t, seeds[t], dim, outcomes, slack, settings)
        return _feasible_point_trial(kind, t, seeds[t], dim, povm_count, outcomes, alphas, slack,
                                     search, settings, tolerances)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run, range(trials)))
    else:
        records = [run(t) for t in range(trials)]
    stats = MonotonicityStats(kind, trials, seed, dim, povm_count, kind != "global_channel", records)
    logger.info("%s suite: %d/%d trials ok, min margin %.3g", kind, trials - len(stats.failures),
                trials, stats.min_margin)
    return stats
