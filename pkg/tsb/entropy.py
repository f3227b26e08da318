"""Tsallis-family entropic functions of distributions and density-matrix spectra."""
from __future__ import annotations

import logging
import math
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .settings import DEFAULT_TOLERANCES
from .utils import DomainError, _as_float_array, _drop_rounding, _require_finite

__all__ = [
    'EntropyOrder',
    'OrderLike',
    'ProbabilityDistribution',
    'ConditionalTable',
    'alpha_log',
    'eta',
    'tsallis',
    'tsallis_via_alpha_log',
    'renyi_from_tsallis',
    'quantum_tsallis',
    'quantum_tsallis_matrix',
    'conditional_tsallis_form1',
    'conditional_tsallis_form2',
    'conditional_tsallis',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntropyOrder:
    """Entropic parameter alpha > 0.

    Within ``shannon_switch_width`` of 1 every function switches to its Shannon
    (natural-log) form instead of evaluating a near-0/0 quotient.
    """

    alpha: float
    shannon_switch_width: float = DEFAULT_TOLERANCES.shannon_switch_width

    def __post_init__(self):
        alpha = float(self.alpha)
        width = float(self.shannon_switch_width)
        if not math.isfinite(alpha) or alpha <= 0:
            raise DomainError(f'Entropy order must be a positive real, got {self.alpha!r}.')
        if not (0 < width < 0.5):
            raise DomainError(f'shannon_switch_width must lie in (0, 0.5), got {width!r}.')
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'shannon_switch_width', width)

    @property
    def is_shannon(self) -> bool:
        return abs(self.alpha - 1.0) < self.shannon_switch_width

    @classmethod
    def of(cls, value: OrderLike) -> EntropyOrder:
        if isinstance(value, EntropyOrder):
            return value
        return cls(float(value))

    def __str__(self):
        return f'alpha={self.alpha:g}'


OrderLike = EntropyOrder | float


def _clamp_unit_interval(values: np.ndarray, tol: float, what: str) -> np.ndarray:
    if np.any(values < -tol) or np.any(values > 1.0 + tol):
        bad = values[(values < -tol) | (values > 1.0 + tol)]
        raise DomainError(f'{what} outside [0, 1] beyond tolerance {tol:g}: {bad.tolist()}')
    return np.clip(values, 0.0, 1.0)


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Finite distribution with outcome labels.

    Entries within the clamp tolerance outside [0, 1] are clamped; the sum must be
    1 within the normalization tolerance. Labels default to ``0..n-1``.
    """

    probs: tuple[float, ...]
    labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self):
        arr = _as_float_array(self.probs)
        if arr.size < 1:
            raise DomainError('A distribution needs at least one outcome.')
        _require_finite(arr, 'Distribution')
        arr = _clamp_unit_interval(arr, DEFAULT_TOLERANCES.clamp, 'Probability')
        total = float(math.fsum(arr))
        if abs(total - 1.0) > DEFAULT_TOLERANCES.normalization:
            raise DomainError(f'Probabilities sum to {total!r}, not 1.')
        labels = tuple(self.labels) if self.labels else tuple(range(arr.size))
        if len(labels) != arr.size:
            raise DomainError(f'{len(labels)} labels for {arr.size} outcomes.')
        object.__setattr__(self, 'probs', tuple(float(p) for p in arr))
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_values(
        cls,
        values: Sequence[float] | np.ndarray,
        labels: Sequence[Hashable] | None = None,
        *,
        renormalize_within: float | None = None,
    ) -> ProbabilityDistribution:
        """Build from raw floats; optionally divide by the sum when it is close enough to 1."""
        arr = _as_float_array(values)
        _require_finite(arr, 'Distribution')
        arr = _clamp_unit_interval(arr, DEFAULT_TOLERANCES.clamp, 'Probability')
        if renormalize_within is not None:
            total = float(math.fsum(arr))
            if abs(total - 1.0) > renormalize_within:
                raise DomainError(
                    f'Probabilities sum to {total!r}, not 1 within {renormalize_within:g}.'
                )
            arr = arr / total
        return cls(tuple(arr.tolist()), tuple(labels) if labels is not None else ())

    @classmethod
    def uniform(cls, n: int, labels: Sequence[Hashable] | None = None) -> ProbabilityDistribution:
        if n < 1:
            raise DomainError(f'Uniform distribution needs n >= 1, got {n}.')
        return cls(tuple([1.0 / n] * n), tuple(labels) if labels is not None else ())

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def __len__(self):
        return len(self.probs)

    def prob(self, label: Hashable) -> float:
        return self.probs[self.labels.index(label)]


@dataclass(frozen=True)
class ConditionalTable:
    """Marginal p(z) plus one conditional distribution p(x|z) per z-outcome."""

    marginal: ProbabilityDistribution
    conditionals: tuple[ProbabilityDistribution, ...]

    def __post_init__(self):
        conditionals = tuple(self.conditionals)
        if len(conditionals) != len(self.marginal):
            raise DomainError(
                f'{len(conditionals)} conditional rows for {len(self.marginal)} marginal outcomes.'
            )
        x_labels = conditionals[0].labels
        for row in conditionals[1:]:
            if row.labels != x_labels:
                raise DomainError('Conditional rows must share one outcome-label set.')
        object.__setattr__(self, 'conditionals', conditionals)
        total = float(np.sum(self.joint()))
        if abs(total - 1.0) > DEFAULT_TOLERANCES.normalization:
            raise DomainError(f'Joint distribution sums to {total!r}, not 1.')

    @property
    def x_labels(self) -> tuple[Hashable, ...]:
        return self.conditionals[0].labels

    def joint(self) -> np.ndarray:
        """p(x, z) as an array indexed ``[z, x]``."""
        rows = np.vstack([row.array for row in self.conditionals])
        return self.marginal.array[:, None] * rows


# ---------------------------------------------------------------------------
# Scalar functions. Each accepts a float or an ndarray; floats come back as float.
# ---------------------------------------------------------------------------

def _eta_values(xi: np.ndarray, order: EntropyOrder) -> np.ndarray:
    positive = xi > 0
    logs = np.log(np.where(positive, xi, 1.0))
    if order.is_shannon:
        values = -xi * logs
    else:
        a = order.alpha
        # (xi^a - xi)/(1 - a) without the cancellation near a = 1
        values = -xi * np.expm1((a - 1.0) * logs) / (a - 1.0)
    return np.where(positive, values, 0.0)


def _scalar_or_array(result: np.ndarray, was_scalar: bool):
    return float(result) if was_scalar else result


def alpha_log(xi, order: OrderLike):
    """ln_alpha(xi) = (xi^(1-alpha) - 1)/(1-alpha); natural log in the Shannon regime."""
    order = EntropyOrder.of(order)
    was_scalar = np.ndim(xi) == 0
    arr = np.asarray(xi, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f'alpha_log needs xi > 0, got {xi!r}.')
    logs = np.log(arr)
    if order.is_shannon:
        out = logs
    else:
        a = order.alpha
        out = np.expm1((1.0 - a) * logs) / (1.0 - a)
    return _scalar_or_array(out, was_scalar)


def eta(xi, order: OrderLike):
    """eta_alpha(xi) = (xi^alpha - xi)/(1-alpha); -xi ln xi in the Shannon regime; 0 at 0 and 1."""
    order = EntropyOrder.of(order)
    was_scalar = np.ndim(xi) == 0
    arr = np.asarray(xi, dtype=float)
    _require_finite(np.atleast_1d(arr), 'eta argument')
    arr = _clamp_unit_interval(arr, DEFAULT_TOLERANCES.clamp, 'eta argument')
    return _scalar_or_array(_eta_values(arr, order), was_scalar)


def tsallis(dist: ProbabilityDistribution, order: OrderLike) -> float:
    """H_alpha of a distribution, as the sum of eta over its entries."""
    order = EntropyOrder.of(order)
    return float(math.fsum(_eta_values(dist.array, order)))


def tsallis_via_alpha_log(dist: ProbabilityDistribution, order: OrderLike) -> float:
    """H_alpha as sum_x p(x) ln_alpha(1/p(x)); zero-probability outcomes drop out."""
    order = EntropyOrder.of(order)
    p = dist.array
    p = p[p > 0]
    return float(math.fsum(p * alpha_log(1.0 / p, order)))


def renyi_from_tsallis(h: float, order: OrderLike) -> float:
    """Renyi entropy of the same distribution, ln(1 + (1-alpha) h)/(1-alpha)."""
    order = EntropyOrder.of(order)
    h = float(h)
    if order.is_shannon:
        return h
    a = order.alpha
    arg = 1.0 + (1.0 - a) * h
    if not arg > 0:
        raise DomainError(f'1 + (1-alpha)h = {arg!r} is not positive for h={h!r}, {order}.')
    return math.log1p((1.0 - a) * h) / (1.0 - a)


def quantum_tsallis(eigenvalues: ProbabilityDistribution, order: OrderLike) -> float:
    """S_alpha of a density matrix given its spectrum."""
    return tsallis(eigenvalues, order)


def quantum_tsallis_matrix(matrix, order: OrderLike, tol: float = DEFAULT_TOLERANCES.psd) -> float:
    """S_alpha of a density matrix given as a dense Hermitian array."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f'Expected a square matrix, got shape {m.shape}.')
    eigs = linalg.eigh(m, eigvals_only=True)
    if eigs.min() < -tol:
        raise DomainError(f'Matrix has eigenvalue {eigs.min()!r} below -{tol:g}.')
    spectrum = ProbabilityDistribution.from_values(
        _drop_rounding(eigs, tol), renormalize_within=tol * m.shape[0]
    )
    return quantum_tsallis(spectrum, order)


def _conditional_terms(table: ConditionalTable, order: EntropyOrder) -> np.ndarray:
    return np.array([tsallis(row, order) for row in table.conditionals])


def conditional_tsallis_form1(table: ConditionalTable, order: OrderLike) -> float:
    """sum_z p(z)^alpha H_alpha(X|z); the standard conditional entropy in the Shannon regime."""
    order = EntropyOrder.of(order)
    pz = table.marginal.array
    weights = pz if order.is_shannon else pz**order.alpha
    return float(math.fsum(weights * _conditional_terms(table, order)))


def conditional_tsallis_form2(table: ConditionalTable, order: OrderLike) -> float:
    """sum_z p(z) H_alpha(X|z)."""
    order = EntropyOrder.of(order)
    return float(math.fsum(table.marginal.array * _conditional_terms(table, order)))


def conditional_tsallis(table: ConditionalTable, order: OrderLike, form: int = 1) -> float:
    if form == 1:
        return conditional_tsallis_form1(table, order)
    if form == 2:
        return conditional_tsallis_form2(table, order)
    raise DomainError(f'Conditional form must be 1 or 2, got {form!r}.')
