"""Uncertainty quantities of the two successive-measurement scenarios.

Scenario 1 measures the second observable on E_Z(rho); scenario 2 measures it on
the projector selected by the actual first outcome. Both qubit (Bloch) and qudit
(matrix) inputs go through the probability pipeline; the qubit closed forms are
kept alongside as an independent cross-check.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .entropy import (
    ConditionalTable,
    EntropyOrder,
    OrderLike,
    ProbabilityDistribution,
    _eta_values,
    alpha_log,
    conditional_tsallis_form1,
    conditional_tsallis_form2,
    quantum_tsallis,
    quantum_tsallis_matrix,
    tsallis,
)
from .qubit import (
    QubitObservable,
    QubitState,
    dephase_channel,
    measurement_probabilities,
    measurement_table,
)
from .qudit import (
    QuditObservable,
    QuditState,
    conditional_probabilities_d,
    dephase_channel_d,
    outcome_probabilities,
)
from .utils import DimensionMismatchError, DomainError

__all__ = [
    'ScenarioOneResult',
    'ScenarioTwoResult',
    'scenario1',
    'scenario1_closed_form',
    'scenario1_quantum_sides',
    'scenario1_quantum_bridge',
    'scenario2',
    'scenario2_closed_form',
    'outcome_entropy',
    'g_alpha',
    'instance_kind',
    'lift_to_qudit',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioOneResult:
    first_entropy: float
    second_entropy: float
    total: float
    alpha: EntropyOrder
    first: ProbabilityDistribution
    second: ProbabilityDistribution


@dataclass(frozen=True)
class ScenarioTwoResult:
    form1: float
    form2: float
    per_outcome: tuple[float, ...]
    marginal: ProbabilityDistribution
    alpha: EntropyOrder

    def recompute(self) -> tuple[float, float]:
        """(form1, form2) rebuilt from ``per_outcome`` and ``marginal``."""
        pz = self.marginal.array
        h = np.asarray(self.per_outcome)
        weights = pz if self.alpha.is_shannon else pz**self.alpha.alpha
        return float(math.fsum(weights * h)), float(math.fsum(pz * h))


def instance_kind(state, first, second) -> str:
    """'qubit' or 'qudit'; mixed representations are rejected."""
    if (
        isinstance(state, QubitState)
        and isinstance(first, QubitObservable)
        and isinstance(second, QubitObservable)
    ):
        return 'qubit'
    if (
        isinstance(state, QuditState)
        and isinstance(first, QuditObservable)
        and isinstance(second, QuditObservable)
    ):
        dims = {state.dim, first.dim, second.dim}
        if len(dims) != 1:
            raise DimensionMismatchError(f'Dimension mismatch: {sorted(dims)}.')
        return 'qudit'
    raise DimensionMismatchError(
        'Expected (QubitState, QubitObservable, QubitObservable) or '
        '(QuditState, QuditObservable, QuditObservable).'
    )


def lift_to_qudit(state, first, second) -> tuple[QuditState, QuditObservable, QuditObservable]:
    """Matrix representation of an instance; qudit instances pass through."""
    if instance_kind(state, first, second) == 'qudit':
        return state, first, second
    return (
        QuditState.from_qubit(state),
        QuditObservable.from_qubit(first),
        QuditObservable.from_qubit(second),
    )


def _first_and_second(state, first, second):
    if instance_kind(state, first, second) == 'qubit':
        return (
            measurement_probabilities(state, first),
            measurement_probabilities(dephase_channel(state, first), second),
        )
    return (
        outcome_probabilities(state, first),
        outcome_probabilities(dephase_channel_d(state, first), second),
    )


def scenario1(state, first, second, order: OrderLike) -> ScenarioOneResult:
    """H_alpha(Z; rho) + H_alpha(X; E_Z(rho))."""
    order = EntropyOrder.of(order)
    p_first, p_second = _first_and_second(state, first, second)
    h1 = tsallis(p_first, order)
    h2 = tsallis(p_second, order)
    return ScenarioOneResult(h1, h2, h1 + h2, order, p_first, p_second)


def scenario1_closed_form(r3, mu, order: OrderLike):
    """Qubit scenario-1 total from r3 = p.r and mu = q.p; ``r3`` may be an array."""
    order = EntropyOrder.of(order)
    was_scalar = np.ndim(r3) == 0
    r3 = np.asarray(r3, dtype=float)
    mu = float(mu)
    terms = (
        _eta_values((1.0 + r3) / 2.0, order)
        + _eta_values((1.0 - r3) / 2.0, order)
        + _eta_values((1.0 + mu * r3) / 2.0, order)
        + _eta_values((1.0 - mu * r3) / 2.0, order)
    )
    return float(terms) if was_scalar else terms


def _dimension(state) -> int:
    return 2 if isinstance(state, QubitState) else state.dim


def scenario1_quantum_sides(state, first, second, order: OrderLike) -> tuple[float, float]:
    """(S(rho) + S(E_Z rho), 2 S(rho_*)): the generic sandwich of the scenario-1 total."""
    order = EntropyOrder.of(order)
    if instance_kind(state, first, second) == 'qubit':
        s_rho = quantum_tsallis(state.eigenvalues(), order)
        s_dephased = quantum_tsallis(dephase_channel(state, first).eigenvalues(), order)
    else:
        s_rho = quantum_tsallis(state.spectrum(), order)
        # E_Z(rho) is diagonal in the eigenbasis, so its spectrum is p(z)
        s_dephased = quantum_tsallis(outcome_probabilities(state, first), order)
    return s_rho + s_dephased, 2.0 * alpha_log(_dimension(state), order)


def scenario1_quantum_bridge(state, first, second, order: OrderLike) -> float:
    """S(E_Z rho) + S(E_X(E_Z rho)) evaluated on density matrices."""
    order = EntropyOrder.of(order)
    rho, z_obs, x_obs = lift_to_qudit(state, first, second)
    after_z = dephase_channel_d(rho, z_obs)
    after_x = dephase_channel_d(after_z, x_obs)
    return quantum_tsallis_matrix(after_z.matrix, order) + quantum_tsallis_matrix(
        after_x.matrix, order
    )


def _table(state, first, second) -> ConditionalTable:
    if instance_kind(state, first, second) == 'qubit':
        return measurement_table(state, first, second)
    return ConditionalTable(
        outcome_probabilities(state, first), conditional_probabilities_d(first, second)
    )


def scenario2(state, first, second, order: OrderLike) -> ScenarioTwoResult:
    """Both conditional entropies of the second outcome given the first."""
    order = EntropyOrder.of(order)
    table = _table(state, first, second)
    per_outcome = tuple(tsallis(row, order) for row in table.conditionals)
    return ScenarioTwoResult(
        conditional_tsallis_form1(table, order),
        conditional_tsallis_form2(table, order),
        per_outcome,
        table.marginal,
        order,
    )


def outcome_entropy(mu: float, order: OrderLike) -> float:
    """K = sum_n eta((1 + n mu)/2): H_alpha(X|z) for either qubit outcome z."""
    order = EntropyOrder.of(order)
    mu = float(mu)
    if abs(mu) > 1.0 + 1e-12:
        raise DomainError(f'mu must lie in [-1, 1], got {mu!r}.')
    mu = max(-1.0, min(1.0, mu))
    return float(math.fsum(_eta_values(np.array([(1.0 + mu) / 2.0, (1.0 - mu) / 2.0]), order)))


def _g_values(r3: np.ndarray, order: EntropyOrder) -> np.ndarray:
    if order.is_shannon:
        return np.ones_like(r3)
    a = order.alpha
    return ((1.0 + r3) / 2.0) ** a + ((1.0 - r3) / 2.0) ** a


def g_alpha(r3, order: OrderLike):
    """((1 + r3)/2)^alpha + ((1 - r3)/2)^alpha; identically 1 in the Shannon regime."""
    order = EntropyOrder.of(order)
    was_scalar = np.ndim(r3) == 0
    arr = np.asarray(r3, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-12):
        raise DomainError(f'g_alpha needs |r3| <= 1, got {r3!r}.')
    out = _g_values(np.clip(arr, -1.0, 1.0), order)
    return float(out) if was_scalar else out


def scenario2_closed_form(r3, mu: float, order: OrderLike):
    """Qubit (form1, form2) = (g_alpha(r3) K, K); ``r3`` may be an array."""
    order = EntropyOrder.of(order)
    k = outcome_entropy(mu, order)
    return g_alpha(r3, order) * k, k
