"""d-dimensional density matrices, eigenbasis observables, the measurement channel and MUB pairs.

Observables are stored as a unitary whose *columns* are the eigenvectors |z_k>,
paired with distinct eigenvalues. Projectors are always rank one.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .entropy import ProbabilityDistribution
from .qubit import BlochVector, QubitObservable, QubitState
from .settings import DEFAULT_TOLERANCES
from .utils import DimensionMismatchError, DomainError, _drop_rounding

__all__ = [
    'PAULI',
    'as_complex_matrix',
    'QuditState',
    'QuditObservable',
    'bloch_from_matrix',
    'outcome_probabilities',
    'dephase_channel_d',
    'conditional_probabilities_d',
    'fourier_mub_pair',
    'is_mub_pair',
    'strictly_positive',
    'purity_d',
    'post_measurement_state',
    'random_state',
    'random_observable',
    'perturb_basis',
]

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_IDENTITY2 = np.eye(2, dtype=complex)


def as_complex_matrix(entries) -> np.ndarray:
    """Validate a square, finite complex matrix and return a private read-only copy."""
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DomainError(f'Expected a non-empty square matrix, got shape {m.shape}.')
    if not np.all(np.isfinite(m)):
        raise DomainError('Matrix contains non-finite entries.')
    m.setflags(write=False)
    return m


def _bloch_matrix(bloch: BlochVector) -> np.ndarray:
    r = bloch.as_array()
    return r[0] * PAULI[0] + r[1] * PAULI[1] + r[2] * PAULI[2]


@dataclass(frozen=True, eq=False)
class QuditState:
    """Density matrix. Stored Hermitian-symmetrized and trace-normalized after validation."""

    matrix: np.ndarray
    tol: float = field(default=DEFAULT_TOLERANCES.psd, repr=False)

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        tol = self.tol
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise DomainError('Density matrix is not Hermitian.')
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > tol:
            raise DomainError(f'Density matrix trace is {trace!r}, not 1.')
        clean = (m + m.conj().T) / 2.0 / trace.real
        eigs = linalg.eigh(clean, eigvals_only=True)
        if eigs.min() < -tol:
            raise DomainError(f'Density matrix has eigenvalue {eigs.min()!r} below -{tol:g}.')
        clean.setflags(write=False)
        object.__setattr__(self, 'matrix', clean)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending spectrum with rounding residue (|lambda| <= tol) set to 0."""
        return _drop_rounding(linalg.eigh(self.matrix, eigvals_only=True), self.tol)

    def spectrum(self) -> ProbabilityDistribution:
        return ProbabilityDistribution.from_values(
            self.eigenvalues()[::-1], renormalize_within=self.tol * self.dim
        )

    @classmethod
    def maximally_mixed(cls, d: int) -> QuditState:
        if d < 1:
            raise DomainError(f'Dimension must be positive, got {d}.')
        return cls(np.eye(d, dtype=complex) / d)

    @classmethod
    def pure(cls, vector: Sequence[complex] | np.ndarray) -> QuditState:
        v = np.asarray(vector, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if n == 0:
            raise DomainError('Pure state vector is zero.')
        v = v / n
        return cls(np.outer(v, v.conj()))

    @classmethod
    def diagonal(cls, probs: Sequence[float], basis: QuditObservable | None = None) -> QuditState:
        """sum_k p_k |z_k><z_k| in the given eigenbasis (computational by default)."""
        p = np.asarray(probs, dtype=float)
        b = np.eye(p.size, dtype=complex) if basis is None else basis.basis
        if b.shape[0] != p.size:
            raise DimensionMismatchError(f'{p.size} weights for a {b.shape[0]}-dimensional basis.')
        return cls((b * p) @ b.conj().T)

    @classmethod
    def from_qubit(cls, state: QubitState) -> QuditState:
        return cls((_IDENTITY2 + _bloch_matrix(state.bloch)) / 2.0)


@dataclass(frozen=True, eq=False)
class QuditObservable:
    """Non-degenerate observable: orthonormal eigenbasis (columns) and distinct eigenvalues."""

    basis: np.ndarray
    eigenvalues: tuple[float, ...] = ()
    tol: float = field(default=DEFAULT_TOLERANCES.psd, repr=False)

    def __post_init__(self):
        b = as_complex_matrix(self.basis)
        d = b.shape[0]
        if np.max(np.abs(b.conj().T @ b - np.eye(d))) > self.tol:
            raise DomainError('Observable eigenbasis is not orthonormal.')
        values = tuple(float(v) for v in self.eigenvalues) if len(self.eigenvalues) else tuple(
            float(k) for k in range(d)
        )
        if len(values) != d:
            raise DimensionMismatchError(f'{len(values)} eigenvalues for dimension {d}.')
        if not all(math.isfinite(v) for v in values):
            raise DomainError('Observable eigenvalues must be finite.')
        if len(set(values)) != d:
            raise DomainError('Degenerate observable: eigenvalues must be pairwise distinct.')
        object.__setattr__(self, 'basis', b)
        object.__setattr__(self, 'eigenvalues', values)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vector(self, index: int) -> np.ndarray:
        return self.basis[:, index]

    def projector(self, index: int) -> np.ndarray:
        v = self.vector(index)
        return np.outer(v, v.conj())

    def matrix(self) -> np.ndarray:
        return (self.basis * np.asarray(self.eigenvalues)) @ self.basis.conj().T

    @classmethod
    def computational(cls, d: int, eigenvalues: Sequence[float] = ()) -> QuditObservable:
        return cls(np.eye(d, dtype=complex), tuple(eigenvalues))

    @classmethod
    def from_hermitian(cls, matrix, tol: float = DEFAULT_TOLERANCES.psd) -> QuditObservable:
        m = as_complex_matrix(matrix)
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise DomainError('Observable matrix is not Hermitian.')
        values, vectors = linalg.eigh((m + m.conj().T) / 2.0)
        if values.size > 1 and np.min(np.diff(values)) <= tol:
            raise DomainError('Degenerate observable: repeated eigenvalues are excluded.')
        return cls(vectors, tuple(values.tolist()))

    @classmethod
    def from_qubit(cls, obs: QubitObservable) -> QuditObservable:
        values, vectors = linalg.eigh(_bloch_matrix(obs.axis))
        # eigh is ascending (-1, +1); reorder to (+, -) to match the qubit labels
        return cls(vectors[:, ::-1], obs.labels)


def _check_dims(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatchError(f'Dimension mismatch: {sorted(dims)}.')


def bloch_from_matrix(matrix) -> BlochVector:
    m = as_complex_matrix(matrix)
    if m.shape != (2, 2):
        raise DimensionMismatchError(f'Bloch vectors describe 2x2 matrices, got {m.shape}.')
    return BlochVector(*(float(np.real(np.trace(m @ s))) for s in PAULI))


def _diagonal_in(state: QuditState, obs: QuditObservable) -> np.ndarray:
    b = obs.basis
    return np.real(np.einsum('ik,ij,jk->k', b.conj(), state.matrix, b))


def outcome_probabilities(state: QuditState, obs: QuditObservable) -> ProbabilityDistribution:
    """p(z) = <z|rho|z> over the observable eigenbasis."""
    _check_dims(state, obs)
    return ProbabilityDistribution.from_values(
        _drop_rounding(_diagonal_in(state, obs), state.tol),
        obs.eigenvalues,
        renormalize_within=state.tol * state.dim,
    )


def dephase_channel_d(state: QuditState, obs: QuditObservable) -> QuditState:
    """E_Z(rho) = sum_z P_z rho P_z: coherences in the eigenbasis erased."""
    _check_dims(state, obs)
    return QuditState.diagonal(_drop_rounding(_diagonal_in(state, obs), state.tol), obs)


def _overlap_squared(first: QuditObservable, second: QuditObservable) -> np.ndarray:
    """|<z|x>|^2 indexed [z, x]."""
    _check_dims(first, second)
    return np.abs(first.basis.conj().T @ second.basis) ** 2


def conditional_probabilities_d(
    first: QuditObservable, second: QuditObservable
) -> tuple[ProbabilityDistribution, ...]:
    """Rows p(x|z) = |<x|z>|^2, one per eigenvector of the first observable."""
    overlaps = _overlap_squared(first, second)
    return tuple(
        ProbabilityDistribution.from_values(
            row, second.eigenvalues, renormalize_within=first.tol + second.tol
        )
        for row in overlaps
    )


def fourier_mub_pair(d: int) -> tuple[QuditObservable, QuditObservable]:
    """Computational basis and the discrete Fourier basis exp(2 pi i jk/d)/sqrt(d)."""
    if d < 2:
        raise DomainError(f'A MUB pair needs d >= 2, got {d}.')
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing='ij')
    fourier = np.exp(2j * np.pi * j * k / d) / np.sqrt(d)
    return QuditObservable.computational(d), QuditObservable(fourier)


def is_mub_pair(
    first: QuditObservable, second: QuditObservable, tol: float = DEFAULT_TOLERANCES.predicate
) -> bool:
    if not tol > 0:
        raise DomainError(f'Tolerance must be positive, got {tol!r}.')
    overlaps = _overlap_squared(first, second)
    return bool(np.all(np.abs(overlaps - 1.0 / first.dim) <= tol))


def strictly_positive(state: QuditState, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
    if not tol > 0:
        raise DomainError(f'Tolerance must be positive, got {tol!r}.')
    return bool(linalg.eigh(state.matrix, eigvals_only=True).min() >= tol)


def purity_d(state: QuditState) -> float:
    return float(np.real(np.trace(state.matrix @ state.matrix)))


def post_measurement_state(obs: QuditObservable, index: int) -> QuditState:
    """The projection-postulate state |z><z| after outcome ``index``."""
    return QuditState.pure(obs.vector(index))


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_state(d: int, rng: np.random.Generator, rank: int | None = None) -> QuditState:
    """Ginibre state G G^dagger / Tr with G of shape (d, rank)."""
    rank = d if rank is None else rank
    if d < 1 or not 1 <= rank <= d:
        raise DomainError(f'Invalid dimension/rank ({d}, {rank}).')
    g = _ginibre(rng, d, rank)
    m = g @ g.conj().T
    return QuditState(m / np.trace(m).real)


def random_observable(d: int, rng: np.random.Generator) -> QuditObservable:
    """Haar-random eigenbasis from the QR decomposition of a Ginibre matrix."""
    q, r = linalg.qr(_ginibre(rng, d, d))
    phases = np.diag(r) / np.abs(np.diag(r))
    return QuditObservable(q * phases)


def perturb_basis(
    obs: QuditObservable, deviation: float, rng: np.random.Generator
) -> QuditObservable:
    """Rotate the eigenbasis by expm(i * deviation * H) for a random unit-norm Hermitian H."""
    a = _ginibre(rng, obs.dim, obs.dim)
    h = (a + a.conj().T) / 2.0
    h = h / np.linalg.norm(h, 2)
    return QuditObservable(linalg.expm(1j * deviation * h) @ obs.basis, obs.eigenvalues)
