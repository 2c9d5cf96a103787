"""
SDP building blocks shared by compat, sequence and mrmeasure.

An instrument implementing a POVM ``A`` is parametrized by Choi variables
M^x >= 0 with tr_2 M^x = A_x. Its Heisenberg action on a constant operator B
is the affine expression tr_2[M^x (1 (x) B^T)].
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from measurement import Instrument, Povm
from qmat import as_array, op_norm
from sdpcore import DEFAULT_SOLVER, SdpProblem, SdpSolution, SolverSettings, solve
from utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)


def kraus_adjoint(kraus: Sequence[np.ndarray], x: Any):
    """sum_k K^dagger X K for a constant or a cvxpy expression X."""
    terms = [k.conj().T @ x @ k for k in kraus]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


def clean_choi(value: np.ndarray) -> np.ndarray:
    """Hermitize a solver Choi value and clamp negative eigenvalues."""
    herm = 0.5 * (value + value.conj().T)
    w, v = np.linalg.eigh(herm)
    return (v * np.clip(w, 0.0, None)) @ v.conj().T


class InstrumentVariable:
    """
    Choi-matrix variables of an unknown instrument implementing ``povm``.

    Args:
        problem: Problem receiving the variables and constraints
        povm: POVM the instrument must implement
        prefix: Variable name prefix
    """

    def __init__(self, problem: SdpProblem, povm: Povm, prefix: str = "M"):
        self.povm = povm
        self.dim = povm.dim
        d = self.dim
        self.chois: List[cp.Variable] = []
        for i, (_, element) in enumerate(povm):
            m = problem.herm_psd(f"{prefix}[{i}]", d * d)
            problem.equal(cp.partial_trace(m, [d, d], axis=1), element.data)
            self.chois.append(m)
        self._names = [f"{prefix}[{i}]" for i in range(len(povm))]

    def adjoint(self, index: int, x: np.ndarray):
        """Heisenberg action of branch ``index`` on a constant operator."""
        d = self.dim
        return cp.partial_trace(self.chois[index] @ np.kron(np.eye(d), np.asarray(x).T), [d, d], axis=1)

    def total_adjoint(self, x: np.ndarray):
        total = self.adjoint(0, x)
        for i in range(1, len(self.chois)):
            total = total + self.adjoint(i, x)
        return total

    def to_instrument(self, solution: SdpSolution) -> Instrument:
        return Instrument([clean_choi(solution.value(n)) for n in self._names], self.povm.labels)


@dataclass
class DisturbanceSolution:
    """Optimal instrument for min_I sum_y ||Lambda_I^*(B_y) - B_y||."""

    value: float
    sdp_objective: float
    per_term: List[float]
    instrument: Optional[Instrument]
    solution: SdpSolution

    @property
    def certified(self) -> bool:
        return self.solution.certified


def exact_disturbance_terms(instrument: Instrument, targets: Sequence[Any]) -> List[float]:
    """||Lambda^*(B) - B|| for every target, evaluated without optimization."""
    total = instrument.total_choi()
    d = instrument.dim
    out = []
    for b in targets:
        b = as_array(b)
        image = np.einsum("iajb,ab->ij", total.reshape(d, d, d, d), b)
        out.append(op_norm(0.5 * ((image - b) + (image - b).conj().T)))
    return out


def disturbance_program(a: Povm, targets: Sequence[Any], name: str = "disturbance"):
    """
    Assemble min sum_y l_y  s.t. -l_y 1 <= Lambda^*(B_y) - B_y <= l_y 1 over instruments of ``a``.

    Returns:
        (problem, instrument variable)
    """
    problem = SdpProblem(name)
    block = InstrumentVariable(problem, a)
    bounds = []
    for j, b in enumerate(targets):
        b = as_array(b)
        if b.shape != (a.dim, a.dim):
            raise DimensionMismatchError(f"target of shape {b.shape} for a {a.dim}-dimensional POVM")
        lam = problem.scalar(f"lambda[{j}]", nonneg=True)
        problem.norm_bound(block.total_adjoint(b) - b, lam)
        bounds.append(lam)
    problem.minimize(sum(bounds[1:], bounds[0]) if bounds else cp.Constant(0.0))
    return problem, block


def solve_disturbance(a: Povm, targets: Sequence[Any], settings: SolverSettings = DEFAULT_SOLVER,
                      name: str = "disturbance") -> DisturbanceSolution:
    """Solve ``disturbance_program`` and re-evaluate the optimum exactly."""
    problem, block = disturbance_program(a, targets, name)
    solution = solve(problem, settings).require_optimal(name)
    instrument = block.to_instrument(solution)
    terms = exact_disturbance_terms(instrument, targets)
    return DisturbanceSolution(float(sum(terms)), solution.objective, terms, instrument, solution)


def joint_measurability_program(povms: Sequence[Povm], name: str = "joint_measurability"):
    """
    Feasibility of a parent POVM G_{x1..xn} >= 0 whose marginals are ``povms``.

    Returns:
        (problem, {outcome tuple: variable})
    """
    dim = povms[0].dim
    for p in povms:
        if p.dim != dim:
            raise DimensionMismatchError("POVMs of different dimension")
    problem = SdpProblem(name)
    outcomes = list(itertools.product(*[range(len(p)) for p in povms]))
    parent: Dict[Tuple[int, ...], cp.Variable] = {}
    for idx in outcomes:
        parent[idx] = problem.herm_psd("G" + str(list(idx)), dim)
    for k, p in enumerate(povms):
        for x, (_, element) in enumerate(p):
            parts = [parent[idx] for idx in outcomes if idx[k] == x]
            problem.equal(sum(parts[1:], parts[0]), element.data)
    return problem, parent


def channel_program(source: Povm, target: Povm, permutation: Sequence[int], name: str = "channel"):
    """
    Feasibility of a channel with Lambda^*(Q_x) = Q'_{pi(x)}.

    The channel is a Choi variable C >= 0 with tr_2 C = 1.
    """
    d = source.dim
    problem = SdpProblem(name)
    choi = problem.herm_psd("C", d * d)
    problem.equal(cp.partial_trace(choi, [d, d], axis=1), np.eye(d))
    for x, (_, q) in enumerate(source):
        image = cp.partial_trace(choi @ np.kron(np.eye(d), q.data.T), [d, d], axis=1)
        problem.equal(image, target.elements[permutation[x]].data)
    return problem, choi
