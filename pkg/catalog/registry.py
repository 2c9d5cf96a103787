"""
Catalog of constructions with machine-checkable claims.

Each entry materializes its measurements and carries a list of claims;
``verify_claims`` evaluates them (concurrently when asked) and reports every
claim with the value it was decided on.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from compat import commutes, jointly_measurable, nondisturbance, repeatable_eigenvalue_check, span_commutativity_criterion
from freeops import pre_process_global
from measurement import depolarizing_channel, lueders_instrument, pvm_from_observable, sequential_povm, validate_povm
from mrmeasure import mr_pair
from qmat import PAULI_X, PAULI_Z, random_hermitian
from sdpcore import DEFAULT_SOLVER, SolverSettings
from sequence import all_satisfied, aot_check, channel_exists, identity_defect, nsit_check, prob_table, triple_conditions
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import CatalogError

from .constructions import (
    WeakGrid,
    build_hollow_triangle,
    build_noncommuting_pair,
    build_qutrit_triple,
    build_reachability_instances,
    build_repeatable_observable,
    build_trivial_povms,
    build_two_time_scenario,
    build_weak_povm,
    nilpotent_map,
)

logger = logging.getLogger(__name__)

CLAIM_DISTURBANCE_FLOOR = 1e-3

# check() -> (passed, value, details)
ClaimCheck = Callable[[], Tuple[bool, Optional[float], Dict[str, Any]]]


@dataclass
class Claim:
    claim_id: str
    description: str
    expected: str
    check: ClaimCheck


@dataclass
class ClaimResult:
    claim_id: str
    description: str
    expected: str
    passed: bool
    value: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.claim_id,
            "description": self.description,
            "expected": self.expected,
            "passed": self.passed,
            "value": self.value,
            "details": dict(self.details),
        }


@dataclass
class CatalogEntry:
    """A construction, its materialized objects and the claims made about it."""

    entry_id: str
    title: str
    params: Dict[str, Any]
    objects: Dict[str, Any]
    claims: List[Claim]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.entry_id,
            "title": self.title,
            "params": dict(self.params),
            "objects": {k: v.to_dict() if hasattr(v, "to_dict") else v for k, v in self.objects.items()},
            "claims": [{"id": c.claim_id, "description": c.description, "expected": c.expected}
                       for c in self.claims],
        }


@dataclass
class CatalogVerification:
    entry_id: str
    results: List[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.entry_id,
            "passed": self.passed,
            "failed": [r.claim_id for r in self.results if not r.passed],
            "claims": [r.to_dict() for r in self.results],
        }


def _nd(a, b, settings, tolerances) -> ClaimCheck:
    def check():
        result = nondisturbance(a, b, settings, tolerances)
        return result.nondisturbing, result.value, {"certified": result.certified}
    return check


def _disturbs(a, b, settings, tolerances, floor: float = CLAIM_DISTURBANCE_FLOOR) -> ClaimCheck:
    def check():
        result = nondisturbance(a, b, settings, tolerances)
        return result.value > floor, result.value, {"certified": result.certified, "floor": floor}
    return check


def _span_disturbs(a, e, tolerances) -> ClaimCheck:
    def check():
        verdict = span_commutativity_criterion(a, e, tolerances)
        return verdict.applicable and verdict.nondisturbing is False, verdict.max_commutator_norm, verdict.to_dict()
    return check


def _noncommuting(a, b, floor: float = 0.1) -> ClaimCheck:
    def check():
        result = commutes(a, b)
        return result.max_commutator_norm > floor, result.max_commutator_norm, {"floor": floor}
    return check


def _max_nsit_defect(sc) -> float:
    return max(r.defect for r in nsit_check(prob_table(sc)))


def _two_time(settings: SolverSettings, tolerances: Tolerances, **_) -> CatalogEntry:
    from_x = build_two_time_scenario("x")
    from_z = build_two_time_scenario("z")
    prepared = build_two_time_scenario("x", measure_prepare=True)
    evolved = build_two_time_scenario("x", explicit_evolution=True)

    def defect_is(sc, target: float) -> ClaimCheck:
        def check():
            value = _max_nsit_defect(sc)
            return abs(value - target) < 1e-12, value, {}
        return check

    def aot_holds():
        reports = aot_check(prob_table(from_x), tolerances.identity)
        return all_satisfied(reports), max(r.defect for r in reports), {}

    claims = [
        Claim("nsit-violated-from-x", "from |1>_x the earlier sigma_z measurement shifts p(q2) by 1/2", "defect 0.5",
              defect_is(from_x, 0.5)),
        Claim("nsit-holds-from-z", "from |1>_z the earlier measurement cannot be detected", "defect 0",
              defect_is(from_z, 0.0)),
        Claim("measure-prepare-holds-from-x", "preparing |1>_x after sigma_z hides the measurement", "defect 0",
              defect_is(prepared, 0.0)),
        Claim("explicit-evolution-agrees", "sigma_z, rotation, sigma_z reproduces the sigma_x statistics",
              "defect 0.5", defect_is(evolved, 0.5)),
        Claim("aot-holds", "arrow-of-time conditions hold for the physical table", "true", aot_holds),
    ]
    return CatalogEntry("qubit-two-time", "Qubit sigma_z then sigma_x two-time scenario", {},
                        {"scenario": from_x}, claims)


def _repeatable(settings: SolverSettings, tolerances: Tolerances, d: int = 5, **_) -> CatalogEntry:
    a = build_repeatable_observable(d)

    def valid():
        report = validate_povm(a, tolerances)
        return report.ok, report.completeness_defect, {}

    def eigenvalue_one():
        return repeatable_eigenvalue_check(a, tolerances.completeness), None, {}

    claims = [
        Claim("valid-povm", "elements are PSD and sum to the identity", "true", valid),
        Claim("eigenvalue-one", "every element has eigenvalue 1", "true", eigenvalue_one),
        Claim("noncommuting", "the elements do not commute", "commutator norm > 0.1", _noncommuting(a, a)),
        Claim("first-kind", "the observable does not disturb itself", "D < tol", _nd(a, a, settings, tolerances)),
    ]
    return CatalogEntry("repeatable-observable", "Repeatable observable with noncommuting elements",
                        {"d": d}, {"A": a}, claims)


def _pair(settings: SolverSettings, tolerances: Tolerances, d: int = 5, **_) -> CatalogEntry:
    a, merged = build_noncommuting_pair(d)
    claims = [
        Claim("a-nd-a-prime", "A does not disturb A'", "D < tol", _nd(a, merged, settings, tolerances)),
        Claim("a-prime-nd-a", "A' does not disturb A", "D < tol", _nd(merged, a, settings, tolerances)),
        Claim("noncommuting", "A and A' do not commute", "commutator norm > 0.1", _noncommuting(a, merged)),
    ]
    return CatalogEntry("noncommuting-nondisturbing-pair", "Two-way nondisturbing pair that does not commute",
                        {"d": d}, {"A": a, "A'": merged}, claims)


def _hollow_d5(settings: SolverSettings, tolerances: Tolerances, d: int = 5, **_) -> CatalogEntry:
    tri = build_hollow_triangle(d)
    claims = [
        Claim("a-first-kind", "A does not disturb A", "D < tol", _nd(tri.a, tri.a, settings, tolerances)),
        Claim("b-first-kind", "B does not disturb B", "D < tol", _nd(tri.b, tri.b, settings, tolerances)),
        Claim("a-nd-b", "A does not disturb B", "D < tol", _nd(tri.a, tri.b, settings, tolerances)),
        Claim("b-nd-a", "B does not disturb A", "D < tol", _nd(tri.b, tri.a, settings, tolerances)),
        Claim("span-criterion-disturbs", "E is closed under squaring and A does not commute with it",
              "applicable, disturbing", _span_disturbs(tri.a, tri.joint, tolerances)),
        Claim("a-disturbs-joint", "every instrument of A disturbs the joint POVM of B then A",
              f"D > {CLAIM_DISTURBANCE_FLOOR}", _disturbs(tri.a, tri.joint, settings, tolerances)),
    ]
    return CatalogEntry("hollow-triangle-d5", "Hollow triangle of nondisturbance in dimension d >= 5",
                        {"d": d}, {"A": tri.a, "B": tri.b, "E": tri.joint}, claims)


def _qutrit(settings: SolverSettings, tolerances: Tolerances, **_) -> CatalogEntry:
    tri = build_qutrit_triple()
    joint_bc = sequential_povm(lueders_instrument(tri.b), tri.c)

    def induced_matches():
        induced = tri.instrument_a.induced_povm()
        worst = max(float(np.max(np.abs(x.data - y.data))) for x, y in zip(induced.elements, tri.a.elements))
        return worst < 1e-10, worst, {}

    def nilpotent():
        rng = np.random.default_rng(20)
        worst = 0.0
        for _ in range(20):
            x = random_hermitian(3, rng).data
            image = tri.channel.adjoint(x)
            worst = max(worst, float(np.max(np.abs(image - nilpotent_map(x)))),
                        float(np.max(np.abs(tri.channel.adjoint(image) - image))))
        return worst < 1e-10, worst, {"samples": 20}

    def c_from_channel():
        p1, p2 = np.diag([1.0, 0, 0]), np.diag([0, 1.0, 0])
        images = [tri.channel.adjoint(p1 / 3 + p2 / 2), tri.channel.adjoint(2 * p1 / 3 + p2 / 2)]
        worst = max(float(np.max(np.abs(m - c.data))) for m, c in zip(images, tri.c.elements))
        return worst < 1e-12, worst, {}

    def a_nd_c_fixed():
        value = identity_defect(tri.instrument_a, [e.data for e in tri.c.elements])
        return value < tolerances.identity, value, {}

    def b_a_c():
        report = triple_conditions(tri.b, tri.instrument_a, tri.c, settings, tolerances)
        worst = max(r.defect for r in report.conditions)
        return report.satisfied, worst, {"failed": report.failed_ids()}

    def jm():
        result = jointly_measurable(tri.a, tri.b, tri.c, settings=settings)
        return result.feasible, None, {}

    claims = [
        Claim("induced-povm-matches", "the Kraus instrument implements the printed A", "max deviation < 1e-10",
              induced_matches),
        Claim("nilpotent-channel", "the total channel maps a to diag(a11, a22, (a11+a22)/2) and is idempotent",
              "max deviation < 1e-10", nilpotent),
        Claim("c-from-channel", "C is the channel image of diagonal combinations of P1 and P2",
              "max deviation < 1e-12", c_from_channel),
        Claim("a-nd-b", "A does not disturb B", "D < tol", _nd(tri.a, tri.b, settings, tolerances)),
        Claim("b-nd-a", "B does not disturb A", "D < tol", _nd(tri.b, tri.a, settings, tolerances)),
        Claim("b-nd-c", "B does not disturb C", "D < tol", _nd(tri.b, tri.c, settings, tolerances)),
        Claim("c-nd-b", "C does not disturb B", "D < tol", _nd(tri.c, tri.b, settings, tolerances)),
        Claim("a-nd-c-fixed", "the catalog instrument of A leaves C invariant", "defect < tol", a_nd_c_fixed),
        Claim("c-disturbs-a", "every instrument of C disturbs A", "D > tol",
              _disturbs(tri.c, tri.a, settings, tolerances, tolerances.nondisturbance)),
        Claim("a-disturbs-b-then-c-span", "A does not commute with the joint POVM of B then C",
              "applicable, disturbing", _span_disturbs(tri.a, joint_bc, tolerances)),
        Claim("a-disturbs-b-then-c", "every instrument of A disturbs the joint POVM of B then C",
              f"D > {CLAIM_DISTURBANCE_FLOOR}", _disturbs(tri.a, joint_bc, settings, tolerances)),
        Claim("b-a-c-nondisturbing", "the sequence B, A, C with the catalog instrument is nondisturbing", "true",
              b_a_c),
        Claim("jointly-measurable", "A, B and C have a joint POVM", "true", jm),
    ]
    objects = {"A": tri.a, "B": tri.b, "C": tri.c, "I_A": tri.instrument_a, "Lambda": tri.channel}
    return CatalogEntry("qutrit-hollow-triangle", "Qutrit triple with a nilpotent-channel instrument", {},
                        objects, claims)


def _weak(settings: SolverSettings, tolerances: Tolerances, s: float = 1e-3, half_width: float = 2.0,
          bins: int = 5, **_) -> CatalogEntry:
    grid = WeakGrid(half_width, bins)
    w = build_weak_povm(PAULI_Z, s, grid)
    pvm = pvm_from_observable(PAULI_Z)

    def complete():
        report = validate_povm(w, tolerances)
        return report.ok, report.completeness_defect, {}

    def strong_limit():
        worst = 0.0
        for _, p in pvm:
            vec = np.linalg.eigh(p.data)[1][:, -1]
            probs = [float(np.real(vec.conj() @ e.data @ vec)) for e in w.elements]
            worst = max(worst, 1.0 - max(probs))
        return worst < 1e-6, worst, {"s": s}

    def commuting():
        result = commutes(w, pvm)
        return result.commuting, result.max_commutator_norm, {}

    def single_bin():
        trivial = build_weak_povm(PAULI_Z, s, WeakGrid(half_width, 1))
        return len(trivial) == 1 and trivial.elements[0].allclose(np.eye(2)), None, {}

    claims = [
        Claim("complete", "bin elements sum to the identity", "true", complete),
        Claim("strong-limit", "small s concentrates each eigenvalue in one bin", "total variation < 1e-6",
              strong_limit),
        Claim("commutes-with-observable", "the readout commutes with the measured observable", "true", commuting),
        Claim("nondisturbing-on-pvm", "the readout does not disturb the projective measurement", "D < tol",
              _nd(w, pvm, settings, tolerances)),
        Claim("single-bin-trivial", "one bin gives the trivial POVM", "true", single_bin),
    ]
    return CatalogEntry("weak-measurement", "Gaussian weak measurement of sigma_z",
                        {"s": s, "half_width": half_width, "bins": bins}, {"W": w}, claims)


def _reachability(settings: SolverSettings, tolerances: Tolerances, **_) -> CatalogEntry:
    claims = []
    for inst in build_reachability_instances():
        def verdict(inst=inst):
            result = channel_exists(inst.source, inst.target, True, settings, tolerances)
            return result.feasible == inst.feasible, None, result.to_dict()
        claims.append(Claim(inst.name, f"a channel {'exists' if inst.feasible else 'does not exist'}",
                            "feasible" if inst.feasible else "infeasible", verdict))
        if not inst.feasible:
            def certificate(inst=inst):
                result = channel_exists(inst.source, inst.target, True, settings, tolerances, prefilter=False)
                return not result.feasible, None, result.to_dict()
            claims.append(Claim(f"{inst.name}-certificate", "the solver certifies infeasibility without the prefilter",
                                "infeasible", certificate))
    return CatalogEntry("channel-reachability", "POVM pairs with and without connecting channels", {},
                        {i.name: {"source": i.source, "target": i.target} for i in build_reachability_instances()},
                        claims)


def _trivial(settings: SolverSettings, tolerances: Tolerances, **_) -> CatalogEntry:
    one, coin = build_trivial_povms(2)
    sz, sx = pvm_from_observable(PAULI_Z), pvm_from_observable(PAULI_X)

    def mr_zero():
        value = mr_pair(coin, sx, settings).total
        return value < tolerances.nondisturbance, value, {}

    def depolarized():
        mapped = pre_process_global([sz, sx], depolarizing_channel(2, 0.0)).povms
        value = mr_pair(mapped[0], mapped[1], settings).total
        return value < tolerances.nondisturbance, value, {}

    claims = [
        Claim("one-outcome-nd", "the one-outcome POVM disturbs nothing", "D < tol",
              _nd(one, sx, settings, tolerances)),
        Claim("coin-nd", "the coin flip disturbs nothing", "D < tol", _nd(coin, sx, settings, tolerances)),
        Claim("coin-mr-zero", "the macrorealism measure of the coin flip and sigma_x vanishes", "MR < tol", mr_zero),
        Claim("depolarized-mr-zero", "complete depolarization makes every pair trivial", "MR < tol", depolarized),
    ]
    return CatalogEntry("trivial-povms", "Trivial POVMs", {}, {"one": one, "coin": coin}, claims)


ENTRY_BUILDERS: Dict[str, Callable[..., CatalogEntry]] = {
    "qubit-two-time": _two_time,
    "repeatable-observable": _repeatable,
    "noncommuting-nondisturbing-pair": _pair,
    "hollow-triangle-d5": _hollow_d5,
    "qutrit-hollow-triangle": _qutrit,
    "weak-measurement": _weak,
    "channel-reachability": _reachability,
    "trivial-povms": _trivial,
}


def list_entries() -> List[str]:
    return list(ENTRY_BUILDERS)


def build_entry(entry_id: str, settings: SolverSettings = DEFAULT_SOLVER,
                tolerances: Tolerances = DEFAULT_TOLERANCES, **params: Any) -> CatalogEntry:
    """
    Materialize a catalog entry.

    Args:
        entry_id: One of ``list_entries()``
        settings: Solver settings used by the claims
        tolerances: Tolerances used by the claims
        **params: Construction parameters (``d`` for the dimension-family entries,
            ``s``/``half_width``/``bins`` for the weak measurement)

    Returns:
        CatalogEntry
    """
    if entry_id not in ENTRY_BUILDERS:
        raise CatalogError(f"unknown catalog entry '{entry_id}'")
    return ENTRY_BUILDERS[entry_id](settings, tolerances, **params)


def verify_claims(entry: CatalogEntry, threads: int = 1) -> CatalogVerification:
    """Evaluate every claim of ``entry``; claims are independent and may run concurrently."""

    def run(claim: Claim) -> ClaimResult:
        passed, value, details = claim.check()
        if not passed:
            logger.warning("%s: claim %s failed (value %s)", entry.entry_id, claim.claim_id, value)
        return ClaimResult(claim.claim_id, claim.description, claim.expected, bool(passed), value, details)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, entry.claims))
    else:
        results = [run(c) for c in entry.claims]
    return CatalogVerification(entry.entry_id, results)
