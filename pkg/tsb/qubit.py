"""Qubit states and observables in Bloch form, and the closed-form measurement statistics."""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .entropy import ConditionalTable, ProbabilityDistribution
from .settings import DEFAULT_TOLERANCES
from .utils import DomainError

__all__ = [
    'BlochVector',
    'QubitState',
    'QubitObservable',
    'E1',
    'E2',
    'E3',
    'measurement_probabilities',
    'dephase_channel',
    'second_measurement_probabilities',
    'conditional_probabilities',
    'measurement_table',
    'overlap_mu',
    'commutes_with',
    'zero_mean_condition',
    'expectation',
    'trace_half',
]

logger = logging.getLogger(__name__)

_UNIT_TOL = 1e-12
_AXIS_WARN_TOL = 1e-9


@dataclass(frozen=True)
class BlochVector:
    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        comps = tuple(float(c) for c in (self.r1, self.r2, self.r3))
        if not all(math.isfinite(c) for c in comps):
            raise DomainError(f'Bloch components must be finite, got {comps!r}.')
        object.__setattr__(self, 'r1', comps[0])
        object.__setattr__(self, 'r2', comps[1])
        object.__setattr__(self, 'r3', comps[2])

    @classmethod
    def from_iterable(cls, values: Iterable[float]) -> BlochVector:
        comps = [float(v) for v in values]
        if len(comps) != 3:
            raise DomainError(f'A Bloch vector has 3 components, got {len(comps)}.')
        return cls(*comps)

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3])

    def norm(self) -> float:
        return math.hypot(self.r1, self.r2, self.r3)

    def dot(self, other: BlochVector) -> float:
        return math.fsum((self.r1 * other.r1, self.r2 * other.r2, self.r3 * other.r3))

    def cross(self, other: BlochVector) -> BlochVector:
        return BlochVector(
            self.r2 * other.r3 - self.r3 * other.r2,
            self.r3 * other.r1 - self.r1 * other.r3,
            self.r1 * other.r2 - self.r2 * other.r1,
        )

    def scaled(self, k: float) -> BlochVector:
        return BlochVector(k * self.r1, k * self.r2, k * self.r3)

    def normalized(self) -> BlochVector:
        n = self.norm()
        if n == 0:
            raise DomainError('Cannot normalize the zero vector.')
        return self.scaled(1.0 / n)

    def orthogonal(self) -> BlochVector:
        """Some unit vector perpendicular to this one."""
        helper = E1 if abs(self.r1) < 0.9 * self.norm() else E2
        return helper.cross(self).normalized()


E1 = BlochVector(1.0, 0.0, 0.0)
E2 = BlochVector(0.0, 1.0, 0.0)
E3 = BlochVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class QubitState:
    """rho = (1 + r.sigma)/2 with |r| <= 1."""

    bloch: BlochVector

    def __post_init__(self):
        if self.bloch.norm() > 1.0 + _UNIT_TOL:
            raise DomainError(f'Bloch vector length {self.bloch.norm()!r} exceeds 1.')

    @classmethod
    def from_components(cls, r1: float, r2: float, r3: float) -> QubitState:
        return cls(BlochVector(r1, r2, r3))

    @classmethod
    def maximally_mixed(cls) -> QubitState:
        return cls(BlochVector(0.0, 0.0, 0.0))

    def purity(self) -> float:
        return (1.0 + self.bloch.norm() ** 2) / 2.0

    def eigenvalues(self) -> ProbabilityDistribution:
        r = min(self.bloch.norm(), 1.0)
        return ProbabilityDistribution(((1.0 + r) / 2.0, (1.0 - r) / 2.0))


@dataclass(frozen=True)
class QubitObservable:
    """Non-degenerate qubit observable z+ P+ + z- P- with P± = (1 ± p.sigma)/2."""

    axis: BlochVector
    eigen_plus: float = 1.0
    eigen_minus: float = -1.0

    def __post_init__(self):
        n = self.axis.norm()
        if abs(n - 1.0) > _UNIT_TOL:
            raise DomainError(f'Observable axis must be a unit vector, |p| = {n!r}.')
        plus, minus = float(self.eigen_plus), float(self.eigen_minus)
        if not (math.isfinite(plus) and math.isfinite(minus)):
            raise DomainError('Observable eigenvalues must be finite.')
        if plus == minus:
            raise DomainError('Degenerate qubit observable (equal eigenvalues) is excluded.')
        object.__setattr__(self, 'eigen_plus', plus)
        object.__setattr__(self, 'eigen_minus', minus)

    @classmethod
    def from_axis(
        cls,
        vector: BlochVector | Iterable[float],
        eigen_plus: float = 1.0,
        eigen_minus: float = -1.0,
        *,
        normalize: bool = True,
    ) -> QubitObservable:
        vec = vector if isinstance(vector, BlochVector) else BlochVector.from_iterable(vector)
        n = vec.norm()
        if n == 0:
            raise DomainError('Observable axis is the zero vector.')
        if normalize and abs(n - 1.0) > _UNIT_TOL:
            if abs(n - 1.0) > _AXIS_WARN_TOL:
                logger.warning('Axis %s has length %.12g; normalizing.', vec.as_array().tolist(), n)
            vec = vec.scaled(1.0 / n)
        return cls(vec, eigen_plus, eigen_minus)

    @classmethod
    def pauli(cls, name: str) -> QubitObservable:
        axes = {'x': E1, 'y': E2, 'z': E3}
        try:
            return cls(axes[name.lower()])
        except KeyError:
            raise DomainError(f'Unknown Pauli observable {name!r}; use x, y or z.') from None

    @property
    def labels(self) -> tuple[float, float]:
        return (self.eigen_plus, self.eigen_minus)


def _clip_unit(c: float) -> float:
    return max(-1.0, min(1.0, c))


def _binary(c: float, labels) -> ProbabilityDistribution:
    c = _clip_unit(c)
    return ProbabilityDistribution(((1.0 + c) / 2.0, (1.0 - c) / 2.0), labels)


def measurement_probabilities(state: QubitState, obs: QubitObservable) -> ProbabilityDistribution:
    """p(z = ±) = (1 ± p.r)/2."""
    return _binary(obs.axis.dot(state.bloch), obs.labels)


def dephase_channel(state: QubitState, obs: QubitObservable) -> QubitState:
    """E_Z: projects the Bloch vector onto the observable axis."""
    r3 = _clip_unit(obs.axis.dot(state.bloch))
    return QubitState(obs.axis.scaled(r3))


def overlap_mu(first: QubitObservable, second: QubitObservable) -> float:
    return _clip_unit(second.axis.dot(first.axis))


def second_measurement_probabilities(
    state: QubitState, first: QubitObservable, second: QubitObservable
) -> ProbabilityDistribution:
    """p(x = ±) = (1 ± (q.p)(p.r))/2 for the second measurement on E_Z(rho)."""
    return _binary(overlap_mu(first, second) * first.axis.dot(state.bloch), second.labels)


def conditional_probabilities(
    first: QubitObservable, second: QubitObservable
) -> tuple[ProbabilityDistribution, ProbabilityDistribution]:
    """Rows p(x = n | z = m) = (1 + n m mu)/2, ordered m = +1, -1; state-independent."""
    mu = overlap_mu(first, second)
    return (_binary(mu, second.labels), _binary(-mu, second.labels))


def measurement_table(
    state: QubitState, first: QubitObservable, second: QubitObservable
) -> ConditionalTable:
    return ConditionalTable(
        measurement_probabilities(state, first), conditional_probabilities(first, second)
    )


def _check_tol(tol: float):
    if not tol > 0:
        raise DomainError(f'Tolerance must be positive, got {tol!r}.')


def commutes_with(
    state: QubitState, obs: QubitObservable, tol: float = DEFAULT_TOLERANCES.predicate
) -> bool:
    """rho Z = Z rho, which for a qubit means r is parallel to p."""
    _check_tol(tol)
    return state.bloch.cross(obs.axis).norm() <= tol


def zero_mean_condition(
    state: QubitState, obs: QubitObservable, tol: float = DEFAULT_TOLERANCES.predicate
) -> bool:
    """Tr(Z rho) = Tr(Z)/2, i.e. r is perpendicular to p."""
    _check_tol(tol)
    return abs(obs.axis.dot(state.bloch)) <= tol


def expectation(state: QubitState, obs: QubitObservable) -> float:
    p_plus, p_minus = measurement_probabilities(state, obs).probs
    return obs.eigen_plus * p_plus + obs.eigen_minus * p_minus


def trace_half(obs: QubitObservable) -> float:
    return (obs.eigen_plus + obs.eigen_minus) / 2.0
