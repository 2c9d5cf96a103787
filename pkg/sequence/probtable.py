"""
Exact probability tables p(q_1..q_n | s_1..s_n) of a scenario.

Setting s_i = 1 measures slot i; s_i = 0 skips it (identity map) and records
the outcome NO_MEASUREMENT.
"""
import csv
import io
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from measurement import Label

from .scenario import Scenario

logger = logging.getLogger(__name__)

NO_MEASUREMENT = 0

Settings = Tuple[int, ...]
Outcomes = Tuple[Label, ...]


def all_settings(n: int) -> List[Settings]:
    return list(itertools.product((0, 1), repeat=n))


def settings_string(s: Sequence[int]) -> str:
    return "".join(str(v) for v in s)


class ProbTable:
    """
    Joint outcome distributions for every setting string.

    Args:
        labels: Outcome labels of every slot
        entries: {(settings, outcomes): probability}
    """

    def __init__(self, labels: Sequence[Sequence[Label]], entries: Dict[Tuple[Settings, Outcomes], float]):
        self.labels = tuple(tuple(l) for l in labels)
        self.n = len(self.labels)
        self._entries = dict(entries)

    def outcomes(self, settings: Sequence[int]) -> List[Outcomes]:
        """Outcome strings compatible with a setting string."""
        choices = [self.labels[i] if s else (NO_MEASUREMENT,) for i, s in enumerate(settings)]
        return list(itertools.product(*choices))

    def p(self, settings: Sequence[int], outcomes: Sequence[Label]) -> float:
        return self._entries.get((tuple(settings), tuple(outcomes)), 0.0)

    def distribution(self, settings: Sequence[int]) -> Dict[Outcomes, float]:
        s = tuple(settings)
        return {q: self.p(s, q) for q in self.outcomes(s)}

    def marginal(self, settings: Sequence[int], slot: int) -> Dict[Outcomes, float]:
        """Sum over the outcome of ``slot`` (0-based); the slot's entry becomes NO_MEASUREMENT."""
        out: Dict[Outcomes, float] = {}
        for q, value in self.distribution(settings).items():
            key = q[:slot] + (NO_MEASUREMENT,) + q[slot + 1:]
            out[key] = out.get(key, 0.0) + value
        return out

    def normalization_defect(self) -> float:
        return max(abs(sum(self.distribution(s).values()) - 1.0) for s in all_settings(self.n))

    def min_probability(self) -> float:
        return min(self._entries.values()) if self._entries else 0.0

    def items(self) -> Iterator[Tuple[Settings, Outcomes, float]]:
        for s in all_settings(self.n):
            for q in self.outcomes(s):
                yield s, q, self.p(s, q)

    def to_csv(self, stream: Optional[TextIO] = None) -> str:
        """CSV rows (settings, outcomes, probability) for external polytope tools."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["settings", "outcomes", "probability"])
        for s, q, value in self.items():
            writer.writerow([settings_string(s), " ".join(str(x) for x in q), f"{value:.15g}"])
        text = buffer.getvalue()
        if stream is not None:
            stream.write(text)
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "labels": [list(l) for l in self.labels],
            "entries": [{"settings": settings_string(s), "outcomes": list(q), "probability": value}
                        for s, q, value in self.items()],
        }

    def __repr__(self) -> str:
        return f"ProbTable(n={self.n})"


def _branches(sc: Scenario, settings: Settings) -> Dict[Outcomes, float]:
    """Propagate unnormalized branch states through the sequence."""
    branches: List[Tuple[Outcomes, np.ndarray]] = [((), sc.state.data)]
    last = sc.n - 1
    for i, (slot, on) in enumerate(zip(sc.slots, settings)):
        if i == last:
            break
        step = []
        for q, rho in branches:
            if on:
                for x in slot.instrument.labels:
                    step.append((q + (x,), slot.instrument.apply(x, rho)))
            else:
                step.append((q + (NO_MEASUREMENT,), rho))
        branches = [(q, sc.evolve(i, rho)) for q, rho in step]

    out: Dict[Outcomes, float] = {}
    final = sc.slots[last].povm
    for q, rho in branches:
        if settings[last]:
            for z, element in final:
                out[q + (z,)] = float(np.real(np.trace(element.data @ rho)))
        else:
            out[q + (NO_MEASUREMENT,)] = float(np.real(np.trace(rho)))
    return out


def prob_table(sc: Scenario, threads: int = 1) -> ProbTable:
    """
    Exact table of the scenario for all 2^n setting strings.

    Args:
        sc: Scenario
        threads: Setting strings evaluated concurrently when > 1

    Returns:
        ProbTable
    """
    settings = all_settings(sc.n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: _branches(sc, s), settings))
    else:
        parts = [_branches(sc, s) for s in settings]
    entries = {}
    for s, part in zip(settings, parts):
        for q, value in part.items():
            entries[(s, q)] = value
    table = ProbTable([slot.povm.labels for slot in sc.slots], entries)
    logger.debug("probability table for n=%d, normalization defect %.3e", sc.n, table.normalization_defect())
    return table
