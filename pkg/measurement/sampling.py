"""
Seeded random POVMs, channels and instruments.
"""
from typing import Optional

import numpy as np

from qmat import ginibre, random_unitary, sqrtm_psd

from .channel import Channel
from .instrument import Instrument, compose_instrument, lueders_instrument
from .povm import Povm


def random_povm(dim: int, outcomes: int, rng: np.random.Generator, rank: Optional[int] = None) -> Povm:
    """G_x = S^{-1/2} A_x^dagger A_x S^{-1/2} with Ginibre A_x and S = sum A^dagger A."""
    raw = []
    for _ in range(outcomes):
        a = ginibre(rank or dim, dim, rng)
        raw.append(a.conj().T @ a)
    s = np.sum(raw, axis=0)
    w, v = np.linalg.eigh(s)
    inv_root = (v / np.sqrt(w)) @ v.conj().T
    return Povm([inv_root @ g @ inv_root for g in raw])


def random_pvm(dim: int, rng: np.random.Generator, outcomes: Optional[int] = None) -> Povm:
    """Projectors onto groups of columns of a Haar unitary."""
    outcomes = dim if outcomes is None else outcomes
    if not 1 <= outcomes <= dim:
        raise ValueError("number of outcomes must lie in [1, dim]")
    u = random_unitary(dim, rng)
    cuts = np.sort(rng.choice(np.arange(1, dim), size=outcomes - 1, replace=False)) if outcomes > 1 else []
    bounds = [0, *cuts, dim]
    return Povm([u[:, a:b] @ u[:, a:b].conj().T for a, b in zip(bounds[:-1], bounds[1:])])


def random_channel(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> Channel:
    """Kraus operators from a random isometry C^d -> C^d (x) C^r."""
    r = rank or dim
    stacked = ginibre(dim * r, dim, rng)
    s = stacked.conj().T @ stacked
    stacked = stacked @ np.linalg.inv(sqrtm_psd(s))
    return Channel.from_kraus([stacked[i * dim:(i + 1) * dim, :] for i in range(r)])


def random_instrument(povm: Povm, rng: np.random.Generator, rank: Optional[int] = None) -> Instrument:
    """Lueders branches each followed by an independent random channel."""
    lueders = lueders_instrument(povm)
    chois = []
    for label in povm.labels:
        single = Instrument([lueders.choi(label)], [label])
        chois.append(compose_instrument(single, after=random_channel(povm.dim, rng, rank)).chois[0])
    return Instrument(chois, povm.labels)
