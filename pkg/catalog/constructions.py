"""
Explicit measurement constructions with known compatibility structure.

Matrices with surd entries are written as literal grids and parsed with
``qmat.parse_scalar`` so that the stored values match the exact fractions.
"""
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from freeops import PostProcessing, post_process
from measurement import (
    Channel,
    Instrument,
    Povm,
    coin_flip_povm,
    instrument_from_kraus,
    lueders_instrument,
    measure_prepare_instrument,
    pvm_from_observable,
    sequential_povm,
    total_channel,
    trivial_povm,
    unitary_channel,
)
from qmat import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, DensityMatrix, direct_sum, ket, parse_scalar
from sequence import Scenario

R1 = 0.5 * (PAULI_I + PAULI_X)
R2 = 0.5 * (PAULI_I + PAULI_Z)


def literal_matrix(rows: Sequence[Sequence[str]], scale: str = "1") -> np.ndarray:
    """Matrix from rows of numeric literals such as ``"-sqrt(2)"``, times ``scale``."""
    factor = parse_scalar(scale)
    return factor * np.array([[parse_scalar(x, f"$[{i}][{j}]") for j, x in enumerate(row)]
                              for i, row in enumerate(rows)], dtype=np.complex128)


def _split(d: int) -> Tuple[int, int]:
    """(size of the projector block, multiplicity of the qubit factor) for dimension d."""
    if d < 5:
        raise ValueError(f"the repeatable noncommuting observable needs d >= 5, got {d}")
    head = 3 if d % 2 == 1 else 4
    return head, (d - head) // 2


def build_repeatable_observable(d: int = 5) -> Povm:
    """
    Three-outcome POVM whose elements each have eigenvalue 1 but do not commute.

    A_1 = P_1 + R_1/2, A_2 = P_2 + R_2/2, A_3 = P_3 + (1 - R_1/2 - R_2/2) on
    H = H_k (+) (H_2 (x) H_m), with k = 3 for odd d and k = 4 (rank-2 P_3) for even d.
    """
    head, m = _split(d)
    p = [np.diag(v).astype(np.complex128) for v in np.eye(head)[:3]]
    if head == 4:
        p[2] = np.diag([0, 0, 1, 1]).astype(np.complex128)
    eye_m = np.eye(m)
    r1, r2 = np.kron(R1, eye_m), np.kron(R2, eye_m)
    tail = np.eye(2 * m) - 0.5 * r1 - 0.5 * r2
    return Povm([direct_sum(p[0], 0.5 * r1), direct_sum(p[1], 0.5 * r2), direct_sum(p[2], tail)], (1, 2, 3))


def build_block_projectors(d: int = 5) -> Povm:
    """B_1 = 1 (+) 0, B_2 = 0 (+) 1 on the same split as ``build_repeatable_observable``."""
    head, m = _split(d)
    tail = 2 * m
    return Povm([direct_sum(np.eye(head), np.zeros((tail, tail))),
                 direct_sum(np.zeros((head, head)), np.eye(tail))], (1, 2))


def build_noncommuting_pair(d: int = 5) -> Tuple[Povm, Povm]:
    """(A, A') with A'_1 = A_1 and A'_2 = A_2 + A_3: mutually nondisturbing, not commuting."""
    a = build_repeatable_observable(d)
    merged = post_process(a, PostProcessing.merge([[0], [1, 2]], 3, labels=(1, 2)))
    return a, merged


class HollowTriangle(NamedTuple):
    """A, B and E = {B_j A_i B_j}, the unique sequential POVM of B then A for projective B."""

    a: Povm
    b: Povm
    joint: Povm


def build_hollow_triangle(d: int = 5) -> HollowTriangle:
    a = build_repeatable_observable(d)
    b = build_block_projectors(d)
    return HollowTriangle(a, b, sequential_povm(lueders_instrument(b), a))


QUTRIT_A = (
    literal_matrix([["2", "0", "-sqrt(2)"], ["0", "4", "0"], ["-sqrt(2)", "0", "3"]], "1/4"),
    literal_matrix([["2", "0", "sqrt(2)"], ["0", "0", "0"], ["sqrt(2)", "0", "1"]], "1/4"),
)
QUTRIT_B = (np.diag([1.0, 0.0, 1.0]), np.diag([0.0, 1.0, 0.0]))
QUTRIT_C = (literal_matrix([["4", "0", "0"], ["0", "6", "0"], ["0", "0", "5"]], "1/12"),
            literal_matrix([["8", "0", "0"], ["0", "6", "0"], ["0", "0", "7"]], "1/12"))

# Heisenberg-picture Kraus operators of the nilpotent channel
QUTRIT_KRAUS = (
    literal_matrix([["sqrt(2)", "0", "0"], ["0", "0", "0"], ["-1", "0", "0"]], "1/2"),
    literal_matrix([["0", "0", "0"], ["0", "-sqrt(10)", "0"], ["0", "2*sqrt(10)", "0"]], "1/10"),
    literal_matrix([["0", "0", "0"], ["0", "sqrt(2)", "0"], ["0", "0", "0"]], "1/2"),
    literal_matrix([["0", "0", "0"], ["0", "4*sqrt(10)", "0"], ["0", "2*sqrt(10)", "0"]], "1/20"),
    literal_matrix([["sqrt(2)", "0", "0"], ["0", "0", "0"], ["1", "0", "0"]], "1/2"),
)
QUTRIT_KRAUS_SPLIT = ((0, 1, 2, 3), (4,))


class QutritTriple(NamedTuple):
    a: Povm
    b: Povm
    c: Povm
    instrument_a: Instrument
    channel: Channel


def nilpotent_map(x: np.ndarray) -> np.ndarray:
    """a -> diag(a_11, a_22, (a_11 + a_22)/2)."""
    x = np.asarray(x)
    return np.diag([x[0, 0], x[1, 1], 0.5 * (x[0, 0] + x[1, 1])]).astype(np.complex128)


def build_qutrit_triple() -> QutritTriple:
    """
    Binary qutrit POVMs A, B, C, the instrument of A built from the five
    Kraus operators (outcome 1 from K_1..K_4, outcome 2 from K_5) and its total channel.
    """
    a = Povm(QUTRIT_A, (1, 2))
    b = Povm(QUTRIT_B, (1, 2))
    c = Povm(QUTRIT_C, (1, 2))
    groups = [[QUTRIT_KRAUS[k] for k in split] for split in QUTRIT_KRAUS_SPLIT]
    ia = instrument_from_kraus(groups, picture="heisenberg", labels=(1, 2))
    return QutritTriple(a, b, c, ia, total_channel(ia))


@dataclass(frozen=True)
class WeakGrid:
    """N equal bins over [-L, L] plus one tail bin on each side."""

    half_width: float
    bins: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("grid half-width must be positive")
        if self.bins < 1:
            raise ValueError("at least one bin is required")

    def edges(self) -> np.ndarray:
        inner = np.linspace(-self.half_width, self.half_width, self.bins + 1)
        return np.concatenate([[-np.inf], inner, [np.inf]])


def build_weak_povm(observable, s: float, grid: WeakGrid = WeakGrid(2.0, 5)) -> Povm:
    """
    Discretized Gaussian pointer readout of ``observable`` with standard deviation ``s``.

    W_bin = sum_x p(bin|x) P_x where p(bin|x) is the normal mass of the bin
    around eigenvalue x. Labels are bin indices, 0 and N+1 being the tails.
    A single bin gives the trivial POVM.
    """
    if s <= 0:
        raise ValueError(f"weakness s must be positive, got {s}")
    pvm = pvm_from_observable(observable)
    if grid.bins == 1:
        return trivial_povm(pvm.dim)
    edges = grid.edges()
    eigenvalues = np.array([float(x) for x in pvm.labels])
    cdf = norm.cdf(edges[:, None], loc=eigenvalues[None, :], scale=s)
    weights = np.diff(cdf, axis=0)
    weights /= weights.sum(axis=0, keepdims=True)
    projectors = pvm.arrays()
    elements = [np.tensordot(row, projectors, axes=1) for row in weights]
    return Povm(elements, tuple(range(len(elements))))


SIGMA_Z_TO_X = (PAULI_I + 1j * PAULI_Y) / np.sqrt(2)
INITIAL_STATES = {
    "z": DensityMatrix.from_ket(ket(0, 2)),
    "x": DensityMatrix.from_ket(np.array([1, 1]) / np.sqrt(2)),
}


def build_two_time_scenario(initial: str = "x", explicit_evolution: bool = False,
                            measure_prepare: bool = False) -> Scenario:
    """
    Qubit sigma_z then sigma_x, both projective with the Lueders rule.

    Args:
        initial: ``"z"`` for |1>_z or ``"x"`` for |1>_x
        explicit_evolution: Measure sigma_z twice with the rotation sigma_z -> sigma_x in between
        measure_prepare: First measurement always prepares |1>_x
    """
    if initial not in INITIAL_STATES:
        raise ValueError(f"initial state must be one of {sorted(INITIAL_STATES)}, got {initial!r}")
    first = pvm_from_observable(PAULI_Z)
    instrument: Optional[Instrument] = None
    if measure_prepare:
        plus = INITIAL_STATES["x"].data
        instrument = measure_prepare_instrument(first, [plus] * len(first))
    if explicit_evolution:
        return Scenario.from_povms([first, first], INITIAL_STATES[initial], [instrument, None],
                                   [unitary_channel(SIGMA_Z_TO_X)])
    return Scenario.from_povms([first, pvm_from_observable(PAULI_X)], INITIAL_STATES[initial], [instrument, None])


class ReachabilityInstance(NamedTuple):
    name: str
    source: Povm
    target: Povm
    feasible: bool


def build_reachability_instances() -> List[ReachabilityInstance]:
    sz, sx = pvm_from_observable(PAULI_Z), pvm_from_observable(PAULI_X)
    mixed = coin_flip_povm(2)
    low = Povm([np.diag([0.5, 0.25]), np.diag([0.5, 0.75])])
    high = Povm([np.diag([0.75, 0.25]), np.diag([0.25, 0.75])])
    return [
        ReachabilityInstance("max-eigenvalue-increase", low, high, False),
        ReachabilityInstance("maximally-mixed-to-other", mixed, Povm([np.diag([0.6, 0.4]), np.diag([0.4, 0.6])]),
                             False),
        ReachabilityInstance("maximally-mixed-to-itself", mixed, mixed, True),
        ReachabilityInstance("unitary-pvm", sz, sx, True),
    ]


def build_trivial_povms(dim: int = 2) -> Tuple[Povm, Povm]:
    """The one-outcome POVM {1} and the coin flip {1/2, 1/2}."""
    return trivial_povm(dim), coin_flip_povm(dim)
