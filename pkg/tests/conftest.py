import os
import sys

import numpy as np
import pytest

# Add the repository root to the path so the top-level packages import
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from measurement import pvm_from_observable  # noqa: E402
from qmat import PAULI_X, PAULI_Z  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sigma_z():
    return pvm_from_observable(PAULI_Z)


@pytest.fixture
def sigma_x():
    return pvm_from_observable(PAULI_X)
