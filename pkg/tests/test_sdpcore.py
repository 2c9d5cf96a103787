import math

import cvxpy as cp
import numpy as np
import pytest

from qmat import PAULI_Y, PAULI_Z
from sdpcore import (
    SdpProblem,
    SdpStatus,
    SolverSettings,
    export_sdpa,
    realify,
    restart_seeds,
    seesaw,
    solve,
)
from utils.errors import SolverFailure


def ground_state_problem() -> SdpProblem:
    """min tr(rho Z) over qubit states: value -1"""
    problem = SdpProblem("ground_state")
    rho = problem.herm_psd("rho", 2)
    problem.equal(cp.real(cp.trace(rho)), 1.0)
    problem.minimize(cp.real(cp.trace(rho @ PAULI_Z)))
    return problem


class TestRealify:
    def test_spectrum_doubled(self):
        h = 0.5 * np.eye(2) + 0.3 * PAULI_Y
        block = realify(h)
        np.testing.assert_allclose(block, block.T)
        expected = np.sort(np.repeat(np.linalg.eigvalsh(h), 2))
        np.testing.assert_allclose(np.linalg.eigvalsh(block), expected, atol=1e-12)


class TestSolve:
    def test_optimal(self):
        solution = solve(ground_state_problem())
        assert solution.status == SdpStatus.OPTIMAL
        assert solution.objective == pytest.approx(-1.0, abs=1e-6)
        rho = solution.value("rho")
        assert np.real(rho[1, 1]) == pytest.approx(1.0, abs=1e-5)

    def test_scs_fallback(self):
        solution = solve(ground_state_problem(), SolverSettings(solver="SCS", feasibility_tol=1e-7))
        assert solution.optimal
        assert solution.objective == pytest.approx(-1.0, abs=1e-4)

    def test_infeasible_certificate(self):
        problem = SdpProblem("negative_trace")
        x = problem.herm_psd("x", 2)
        problem.equal(cp.real(cp.trace(x)), -1.0)
        solution = solve(problem)
        assert solution.status == SdpStatus.INFEASIBLE
        assert solution.objective == math.inf
        with pytest.raises(SolverFailure):
            solution.require_optimal("negative trace")

    def test_norm_bound(self):
        """min t s.t. -t <= Z - X <= t with X = diag(a, a): t = 1 at a = 0"""
        problem = SdpProblem("norm")
        a = problem.scalar("a")
        t = problem.scalar("t", nonneg=True)
        problem.norm_bound(PAULI_Z - a * np.eye(2), t)
        problem.minimize(t)
        solution = solve(problem)
        assert solution.objective == pytest.approx(1.0, abs=1e-6)

    def test_frozen_after_compile(self):
        problem = ground_state_problem()
        problem.to_cvxpy()
        with pytest.raises(RuntimeError):
            problem.herm("late", 2)

    def test_duplicate_variable(self):
        problem = SdpProblem()
        problem.herm("x", 2)
        with pytest.raises(ValueError):
            problem.herm("x", 2)

    def test_solution_dict(self):
        out = solve(ground_state_problem()).to_dict()
        assert out["status"] == "optimal"
        assert out["diagnostics"]["solver"] == "CLARABEL"

    def test_timing_not_serialized(self):
        solution = solve(ground_state_problem())
        out = solution.to_dict()
        assert "solve_time" not in out["diagnostics"]
        assert "timing" not in out
        assert all(v >= 0 for v in solution.timing.values())
        assert solve(ground_state_problem()).to_dict() == out


class TestSeesaw:
    @staticmethod
    def run(**kwargs):
        """f(x, y) = (x - y)^2 + (x - 1)^2, minimized at x = y = 1"""
        blocks = [lambda p: (p[1] + 1.0) / 2.0, lambda p: p[0]]

        def objective(p):
            return (p[0] - p[1]) ** 2 + (p[0] - 1.0) ** 2

        def initial(restart, rng):
            return list(rng.uniform(-5, 5, size=2))

        return seesaw(blocks, objective, initial, **kwargs)

    def test_converges(self):
        result = self.run(restarts=3, rng_seed=4)
        assert result.best_value < 1e-6
        np.testing.assert_allclose(result.best_point, [1.0, 1.0], atol=1e-3)

    def test_traces_monotone(self):
        result = self.run(restarts=4, rng_seed=9)
        for trace in result.traces:
            diffs = np.diff(trace.values)
            assert np.all(diffs <= 1e-9)
            assert trace.converged

    def test_reproducible(self):
        first, second = self.run(restarts=3, rng_seed=11), self.run(restarts=3, rng_seed=11)
        assert first.best_value == second.best_value
        assert [t.values for t in first.traces] == [t.values for t in second.traces]

    def test_threads_match_serial(self):
        serial = self.run(restarts=4, rng_seed=2)
        parallel = self.run(restarts=4, rng_seed=2, threads=2)
        assert serial.best_value == parallel.best_value

    def test_failed_restart_skipped(self):
        def failing_initial(restart, rng):
            if restart == 0:
                raise SolverFailure("no start point")
            return [0.0, 3.0]

        result = seesaw([lambda p: (p[1] + 1.0) / 2.0, lambda p: p[0]],
                        lambda p: (p[0] - p[1]) ** 2 + (p[0] - 1.0) ** 2, failing_initial, restarts=2)
        assert result.traces[0].failure == "no start point"
        assert result.best_restart == 1

    def test_all_restarts_failed(self):
        def broken(point):
            raise SolverFailure("broken block")

        with pytest.raises(SolverFailure):
            seesaw([broken], lambda p: 0.0, lambda r, rng: [0.0], restarts=2)

    def test_restart_seeds(self):
        seeds = restart_seeds(0, 5)
        assert seeds == restart_seeds(0, 5)
        assert len(set(seeds)) == 5
        assert seeds != restart_seeds(1, 5)


class TestExport:
    def test_sdpa_header(self):
        text = export_sdpa(ground_state_problem())
        lines = text.splitlines()
        assert lines[0].startswith('"ground_state')
        blocks = int(lines[2])
        assert len(lines[3].split()) == blocks
        assert len(lines[4].split()) == int(lines[1])
