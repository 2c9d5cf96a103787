"""
Disturbance of a POVM by a measurement: for a fixed instrument, optimized
over all instruments, and against the outcomes of a subsequent pair.
"""
import logging
from typing import Sequence

from compat import exact_disturbance_terms, solve_disturbance
from measurement import Instrument, Povm, sequential_povm, total_channel, validate_instrument
from qmat import HermMatrix
from sdpcore import DEFAULT_SOLVER, SolverSettings
from utils.config import DEFAULT_TOLERANCES, Tolerances
from utils.errors import CompletenessError, DimensionMismatchError

from .reports import DisturbanceReport

logger = logging.getLogger(__name__)


def _require_implements(instrument: Instrument, povm: Povm, tolerances: Tolerances) -> None:
    if instrument.dim != povm.dim:
        raise DimensionMismatchError(f"instrument of dimension {instrument.dim} for a {povm.dim}-dimensional POVM")
    report = validate_instrument(instrument, povm, tolerances)
    if not report.ok:
        raise CompletenessError("; ".join(report.violations))


def _exact(instrument: Instrument, targets: Sequence) -> DisturbanceReport:
    terms = exact_disturbance_terms(instrument, targets)
    return DisturbanceReport(float(sum(terms)), terms, instrument, certified=True, optimized=False)


def disturbance_fixed(a: Povm, i: Instrument, b: Povm,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> DisturbanceReport:
    """D_A(B, I): exact evaluation through the total channel of ``i``."""
    _require_implements(i, a, tolerances)
    if b.dim != a.dim:
        raise DimensionMismatchError(f"POVM dimensions {a.dim} and {b.dim} differ")
    return _exact(i, [e.data for e in b.elements])


def disturbance(a: Povm, b: Povm, settings: SolverSettings = DEFAULT_SOLVER) -> DisturbanceReport:
    """D_A(B): infimum over all instruments implementing ``a``, solved as one SDP."""
    if b.dim != a.dim:
        raise DimensionMismatchError(f"POVM dimensions {a.dim} and {b.dim} differ")
    result = solve_disturbance(a, [e.data for e in b.elements], settings)
    logger.debug("D_A(B) = %.6g (certified=%s)", result.value, result.certified)
    return DisturbanceReport(result.value, result.per_term, result.instrument, result.certified, True,
                             result.solution.to_dict())


def disturbance_seq_fixed(a: Povm, ia: Instrument, ib: Instrument, c: Povm,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> DisturbanceReport:
    """D_A(B, C, I_A, I_B): one term per outcome pair (y, z) of I_B^* C."""
    _require_implements(ia, a, tolerances)
    if ib.dim != a.dim or c.dim != a.dim:
        raise DimensionMismatchError("all measurements must share one dimension")
    return _exact(ia, [e.data for e in sequential_povm(ib, c).elements])


def marginal_tail(ib: Instrument, c: Povm, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Povm:
    """Lambda_B^*(C): the tail with the middle outcome discarded."""
    channel = total_channel(ib, tolerances)
    return Povm([HermMatrix(channel.adjoint(e.data)) for e in c.elements], c.labels)
