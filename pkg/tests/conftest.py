"""Shared fixtures: seeded generators and the Pauli observables."""
from __future__ import annotations

import numpy as np
import pytest

from tsb.qubit import QubitObservable


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240611))


@pytest.fixture
def z_obs():
    return QubitObservable.pauli('z')


@pytest.fixture
def x_obs():
    return QubitObservable.pauli('x')
