"""Instance builders shared by the test modules."""
from __future__ import annotations

import math

import numpy as np

from tsb.qubit import BlochVector, QubitObservable, QubitState


def tilted_axis(mu: float) -> QubitObservable:
    """Axis in the xz-plane with overlap ``mu`` with the z axis."""
    return QubitObservable(BlochVector(math.sqrt(1.0 - mu * mu), 0.0, mu))


def state_at_angle(radius: float, degrees: float) -> QubitState:
    """Bloch vector of length ``radius`` in the yz-plane, ``degrees`` away from +z."""
    t = math.radians(degrees)
    return QubitState(BlochVector(0.0, radius * math.sin(t), radius * math.cos(t)))


def random_distribution(rng: np.random.Generator, n: int) -> np.ndarray:
    p = rng.dirichlet(np.ones(n))
    return p / p.sum()


def rotated_basis(angle: float) -> np.ndarray:
    """Computational basis of C^3 rotated by ``angle`` in the span of |0> and |1>."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]], dtype=complex)


def random_axis(rng: np.random.Generator) -> QubitObservable:
    v = rng.standard_normal(3)
    return QubitObservable.from_axis(v / np.linalg.norm(v))


def random_qubit_state(rng: np.random.Generator) -> QubitState:
    """Uniform in the Bloch ball."""
    v = rng.standard_normal(3)
    radius = rng.uniform() ** (1.0 / 3.0)
    return QubitState(BlochVector.from_iterable(radius * v / np.linalg.norm(v)))
