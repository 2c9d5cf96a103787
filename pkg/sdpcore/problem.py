"""
Assembly and solution of semidefinite programs over complex Hermitian variables.

Problems are built with cvxpy. Every positive-semidefiniteness requirement is
stated on the realified matrix (``sdpcore.realify``), and the raw solver
result is inspected directly so that the duality gap can be reported.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import cvxpy as cp
import numpy as np

from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import SolverFailure

from .realify import psd_constraint

logger = logging.getLogger(__name__)


class SdpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


class VariableKind(str, Enum):
    HERM_PSD = "herm_psd"
    HERM = "herm"
    SCALAR = "scalar"
    NONNEG_SCALAR = "nonneg_scalar"


@dataclass(frozen=True)
class SolverSettings:
    """Conic solver choice and stopping tolerances."""

    solver: str = "CLARABEL"
    feasibility_tol: float = DEFAULT_TOLERANCES.solver_feasibility
    gap_tol: float = DEFAULT_TOLERANCES.solver_gap
    max_iters: Optional[int] = None
    verbose: bool = False

    @classmethod
    def from_tolerances(cls, tolerances: Tolerances, solver: str = "CLARABEL") -> "SolverSettings":
        return cls(solver=solver, feasibility_tol=tolerances.solver_feasibility, gap_tol=tolerances.solver_gap)

    def solver_options(self) -> Dict[str, Any]:
        inner_gap = min(1e-8, 0.1 * self.gap_tol)
        if self.solver == "CLARABEL":
            opts = {"tol_feas": self.feasibility_tol, "tol_gap_abs": inner_gap, "tol_gap_rel": inner_gap}
            if self.max_iters:
                opts["max_iter"] = self.max_iters
            return opts
        if self.solver == "SCS":
            opts = {"eps_abs": self.feasibility_tol, "eps_rel": self.feasibility_tol}
            if self.max_iters:
                opts["max_iters"] = self.max_iters
            return opts
        return {}


DEFAULT_SOLVER = SolverSettings()


class SdpProblem:
    """
    Builder for a minimization SDP.

    Variables are declared by name; constraints are cvxpy constraints over
    those variables. After the first call to ``to_cvxpy`` the problem is frozen.

    Args:
        name: Label used in logs and exports
    """

    def __init__(self, name: str = "sdp"):
        self.name = name
        self._variables: Dict[str, cp.Variable] = {}
        self._kinds: Dict[str, VariableKind] = {}
        self._constraints: List[cp.Constraint] = []
        self._objective: Optional[cp.Expression] = None
        self._compiled: Optional[cp.Problem] = None

    def _declare(self, name: str, var: cp.Variable, kind: VariableKind) -> cp.Variable:
        if self._compiled is not None:
            raise RuntimeError(f"problem '{self.name}' is frozen")
        if name in self._variables:
            raise ValueError(f"variable '{name}' already declared")
        self._variables[name] = var
        self._kinds[name] = kind
        return var

    def herm_psd(self, name: str, dim: int) -> cp.Variable:
        """Hermitian PSD matrix variable."""
        var = self._declare(name, cp.Variable((dim, dim), hermitian=True, name=name), VariableKind.HERM_PSD)
        self._constraints.append(psd_constraint(var))
        return var

    def herm(self, name: str, dim: int) -> cp.Variable:
        return self._declare(name, cp.Variable((dim, dim), hermitian=True, name=name), VariableKind.HERM)

    def scalar(self, name: str, nonneg: bool = False) -> cp.Variable:
        kind = VariableKind.NONNEG_SCALAR if nonneg else VariableKind.SCALAR
        return self._declare(name, cp.Variable(nonneg=nonneg, name=name), kind)

    def variable(self, name: str) -> cp.Variable:
        return self._variables[name]

    @property
    def variable_kinds(self) -> Dict[str, VariableKind]:
        return dict(self._kinds)

    def add(self, constraint: cp.Constraint) -> None:
        if self._compiled is not None:
            raise RuntimeError(f"problem '{self.name}' is frozen")
        self._constraints.append(constraint)

    def equal(self, lhs: Any, rhs: Any) -> None:
        self.add(lhs == rhs)

    def psd(self, expr: Any) -> None:
        """expr >= 0 for a Hermitian-valued expression."""
        self.add(psd_constraint(expr))

    def norm_bound(self, expr: Any, bound: Any) -> None:
        """-bound * 1 <= expr <= bound * 1 (so ||expr|| <= bound)."""
        n = expr.shape[0]
        eye = np.eye(n)
        self.psd(bound * eye - expr)
        self.psd(bound * eye + expr)

    def minimize(self, objective: Any) -> None:
        if self._compiled is not None:
            raise RuntimeError(f"problem '{self.name}' is frozen")
        self._objective = objective

    def to_cvxpy(self) -> cp.Problem:
        if self._compiled is None:
            objective = cp.Minimize(self._objective if self._objective is not None else cp.Constant(0.0))
            self._compiled = cp.Problem(objective, list(self._constraints))
        return self._compiled

    def __repr__(self) -> str:
        return f"SdpProblem(name={self.name!r}, variables={len(self._variables)}, constraints={len(self._constraints)})"


@dataclass
class SdpSolution:
    """Result of ``solve``."""

    status: SdpStatus
    objective: float
    values: Dict[str, Any]
    duality_gap: float
    certified: bool
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    # wall-clock figures; logged, never serialized
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status == SdpStatus.OPTIMAL

    def value(self, name: str) -> Any:
        return self.values[name]

    def require_optimal(self, context: str = "") -> "SdpSolution":
        """Raise SolverFailure unless the solver reported an optimum."""
        if not self.optimal:
            where = f" ({context})" if context else ""
            raise SolverFailure(f"SDP not solved to optimality{where}: {self.status.value}",
                                self.status.value, self.diagnostics)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "objective": self.objective,
            "duality_gap": self.duality_gap,
            "certified": self.certified,
            "diagnostics": self.diagnostics,
        }


def _raw_gap(raw: Any) -> float:
    primal = getattr(raw, "obj_val", None)
    dual = getattr(raw, "obj_val_dual", None)
    if primal is not None and dual is not None:
        return abs(float(primal) - float(dual))
    if isinstance(raw, dict):
        info = raw.get("info", raw)
        if isinstance(info, dict) and info.get("gap") is not None:
            return abs(float(info["gap"]))
    return math.nan


def _raw_status(raw: Any) -> str:
    if isinstance(raw, dict):
        return str(raw.get("info", {}).get("status", "unknown"))
    return str(getattr(raw, "status", "unknown"))


def solve(problem: SdpProblem, settings: SolverSettings = DEFAULT_SOLVER) -> SdpSolution:
    """
    Solve the problem and classify the outcome.

    Infeasibility is taken from the solver's certificate. Inaccurate or
    failed solves are reported as ``numerical_failure`` with the raw status in
    the diagnostics; values are never fabricated.

    Args:
        problem: Assembled problem
        settings: Solver and tolerances

    Returns:
        SdpSolution
    """
    prob = problem.to_cvxpy()
    diagnostics: Dict[str, Any] = {"solver": settings.solver, "problem": problem.name}
    try:
        data, chain, inverse_data = prob.get_problem_data(settings.solver)
        raw = chain.solver.solve_via_data(data, False, settings.verbose, settings.solver_options())
        prob.unpack_results(raw, chain, inverse_data)
    except (cp.error.SolverError, ValueError, ArithmeticError) as e:
        logger.warning("solver error on %s: %s", problem.name, e)
        diagnostics["error"] = str(e)
        return SdpSolution(SdpStatus.NUMERICAL_FAILURE, math.nan, {}, math.nan, False, diagnostics)

    gap = _raw_gap(raw)
    diagnostics["raw_status"] = _raw_status(raw)
    diagnostics["cvxpy_status"] = prob.status
    timing: Dict[str, float] = {}
    if prob.solver_stats is not None:
        diagnostics["iterations"] = prob.solver_stats.num_iters
        if prob.solver_stats.solve_time is not None:
            timing["solve_time"] = float(prob.solver_stats.solve_time)
            logger.debug("%s solved in %.4fs", problem.name, timing["solve_time"])

    if prob.status == cp.OPTIMAL:
        objective = float(prob.value)
        values = {name: (None if var.value is None else np.array(var.value))
                  for name, var in problem._variables.items()}
        certified = bool(np.isfinite(gap) and gap <= settings.gap_tol * max(1.0, abs(objective)))
        logger.debug("%s optimal: objective=%.12g gap=%.3e", problem.name, objective, gap)
        return SdpSolution(SdpStatus.OPTIMAL, objective, values, gap, certified, diagnostics, timing)

    if prob.status == cp.INFEASIBLE:
        logger.debug("%s infeasible (certificate)", problem.name)
        return SdpSolution(SdpStatus.INFEASIBLE, math.inf, {}, gap, True, diagnostics, timing)

    logger.warning("%s ended with status %s", problem.name, prob.status)
    return SdpSolution(SdpStatus.NUMERICAL_FAILURE, math.nan, {}, gap, False, diagnostics, timing)
