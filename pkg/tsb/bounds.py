"""Closed-form tight bounds for both scenarios, with equality-condition reports."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .entropy import EntropyOrder, OrderLike, alpha_log
from .qubit import QubitObservable, QubitState, commutes_with, overlap_mu, zero_mean_condition
from .qudit import is_mub_pair, outcome_probabilities, strictly_positive
from .scenario import (
    g_alpha,
    instance_kind,
    outcome_entropy,
    scenario1,
    scenario1_closed_form,
    scenario1_quantum_sides,
    scenario2,
)
from .settings import DEFAULT_TOLERANCES, Tolerances
from .utils import DimensionMismatchError, DomainError

__all__ = [
    'BoundReport',
    'Prop3Report',
    'build_report',
    'prop1_bounds',
    'prop1_report',
    'prop2_bounds',
    'prop2_report',
    'prop3_report',
    'sandwich_report',
]

logger = logging.getLogger(__name__)

COMMUTES = 'commutes'
ZERO_MEAN = 'zero_mean'
MUTUALLY_UNBIASED = 'mutually_unbiased'
STRICTLY_POSITIVE = 'strictly_positive'


@dataclass(frozen=True)
class BoundReport:
    """An entropic quantity against its closed-form lower and upper bounds.

    ``lower_condition``/``upper_condition`` name the entry of ``conditions`` that is
    claimed equivalent to saturating that side; None when no such claim is made.
    """

    name: str
    quantity: float
    lower: float
    upper: float
    lower_residual: float
    upper_residual: float
    lower_saturated: bool
    upper_saturated: bool
    conditions: dict[str, bool] = field(default_factory=dict)
    lower_condition: str | None = None
    upper_condition: str | None = None
    lower_trivial: bool = False
    slack: float = DEFAULT_TOLERANCES.bound_slack

    @property
    def within_bounds(self) -> bool:
        return self.lower_residual >= -self.slack and self.upper_residual >= -self.slack

    @property
    def conditions_agree(self) -> bool:
        """Every side that names a condition is saturated exactly when the condition holds.

        Qubit residuals shrink with the square of the tilt from the equality geometry while
        the Bloch predicates shrink linearly, so tilts below about sqrt(saturation) read as
        saturated with the condition False. Callers exclude that band.
        """
        checks = []
        if self.lower_condition is not None:
            checks.append(self.lower_saturated == self.conditions[self.lower_condition])
        if self.upper_condition is not None:
            checks.append(self.upper_saturated == self.conditions[self.upper_condition])
        return all(checks)

    def as_dict(self) -> dict:
        return {
            'name': self.name,
            'quantity': self.quantity,
            'lower': self.lower,
            'upper': self.upper,
            'lower_residual': self.lower_residual,
            'upper_residual': self.upper_residual,
            'lower_saturated': self.lower_saturated,
            'upper_saturated': self.upper_saturated,
            'lower_trivial': self.lower_trivial,
            'conditions': dict(self.conditions),
        }


def build_report(
    name: str,
    quantity: float,
    lower: float,
    upper: float,
    conditions: dict[str, bool] | None = None,
    *,
    lower_condition: str | None = None,
    upper_condition: str | None = None,
    lower_trivial: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> BoundReport:
    lower_residual = quantity - lower
    upper_residual = upper - quantity
    report = BoundReport(
        name=name,
        quantity=quantity,
        lower=lower,
        upper=upper,
        lower_residual=lower_residual,
        upper_residual=upper_residual,
        lower_saturated=lower_residual <= tolerances.saturation,
        upper_saturated=upper_residual <= tolerances.saturation,
        conditions=dict(conditions or {}),
        lower_condition=lower_condition,
        upper_condition=upper_condition,
        lower_trivial=lower_trivial,
        slack=tolerances.bound_slack,
    )
    if not report.within_bounds:
        logger.warning(
            '%s: quantity %.12g outside [%.12g, %.12g].', name, quantity, lower, upper
        )
    return report


def _unit_range(value: float, lo: float, what: str) -> float:
    value = float(value)
    if not (lo - 1e-12 <= value <= 1.0 + 1e-12):
        raise DomainError(f'{what} must lie in [{lo:g}, 1], got {value!r}.')
    return max(lo, min(1.0, value))


def _require_qubit(state, first, second):
    if instance_kind(state, first, second) != 'qubit':
        raise DimensionMismatchError('This bound is stated for qubit instances only.')


# ---------------------------------------------------------------------------
# Scenario 1
# ---------------------------------------------------------------------------

def prop1_bounds(r_norm: float, mu: float, order: OrderLike) -> tuple[float, float]:
    """Tight (min, max) of the scenario-1 total over qubit states with |r| fixed."""
    order = EntropyOrder.of(order)
    r_norm = _unit_range(r_norm, 0.0, '|r|')
    mu = _unit_range(mu, -1.0, 'mu')
    return scenario1_closed_form(r_norm, mu, order), 2.0 * alpha_log(2.0, order)


def _qubit_conditions(state: QubitState, first: QubitObservable, tolerances: Tolerances):
    return {
        COMMUTES: commutes_with(state, first, tolerances.predicate),
        ZERO_MEAN: zero_mean_condition(state, first, tolerances.predicate),
    }


def prop1_report(
    state, first, second, order: OrderLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundReport:
    order = EntropyOrder.of(order)
    _require_qubit(state, first, second)
    lower, upper = prop1_bounds(state.bloch.norm(), overlap_mu(first, second), order)
    return build_report(
        'prop1',
        scenario1(state, first, second, order).total,
        lower,
        upper,
        _qubit_conditions(state, first, tolerances),
        lower_condition=COMMUTES,
        upper_condition=ZERO_MEAN,
        tolerances=tolerances,
    )


def sandwich_report(
    state, first, second, order: OrderLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundReport:
    """Scenario-1 total between S(rho) + S(E_Z rho) and 2 S(rho_*)."""
    order = EntropyOrder.of(order)
    lower, upper = scenario1_quantum_sides(state, first, second, order)
    conditions = {}
    upper_condition = None
    if instance_kind(state, first, second) == 'qubit':
        conditions[ZERO_MEAN] = zero_mean_condition(state, first, tolerances.predicate)
        upper_condition = ZERO_MEAN
    return build_report(
        'sandwich',
        scenario1(state, first, second, order).total,
        lower,
        upper,
        conditions,
        upper_condition=upper_condition,
        tolerances=tolerances,
    )


# ---------------------------------------------------------------------------
# Scenario 2
# ---------------------------------------------------------------------------

def prop2_bounds(state_spectrum_factor: float, mu: float, order: OrderLike) -> tuple[float, float]:
    """Tight (min, max) of the qubit form-1 conditional entropy at fixed purity.

    ``state_spectrum_factor`` is 1 + (1 - alpha) S_alpha(rho) = g_alpha(|r|), which lies
    between 1 and 2^(1 - alpha).
    """
    order = EntropyOrder.of(order)
    k = outcome_entropy(_unit_range(mu, -1.0, 'mu'), order)
    if order.is_shannon:
        return k, k
    a = order.alpha
    mixed = 2.0 ** (1.0 - a)
    factor = float(state_spectrum_factor)
    lo, hi = min(1.0, mixed), max(1.0, mixed)
    if not (lo - 1e-12 <= factor <= hi + 1e-12):
        raise DomainError(
            f'State factor {factor!r} outside [{lo:.12g}, {hi:.12g}] for {order}.'
        )
    if a < 1.0:
        return factor * k, mixed * k
    return mixed * k, factor * k


def prop2_report(
    state, first, second, order: OrderLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundReport:
    order = EntropyOrder.of(order)
    _require_qubit(state, first, second)
    factor = g_alpha(min(state.bloch.norm(), 1.0), order)
    lower, upper = prop2_bounds(factor, overlap_mu(first, second), order)
    if order.is_shannon or upper <= tolerances.saturation:
        # a constant value (alpha = 1) or both bounds at 0 (mu = +-1) decides nothing
        lower_condition = upper_condition = None
    elif order.alpha < 1.0:
        lower_condition, upper_condition = COMMUTES, ZERO_MEAN
    else:
        # the conditions swap sides above alpha = 1
        lower_condition, upper_condition = ZERO_MEAN, COMMUTES
    return build_report(
        'prop2',
        scenario2(state, first, second, order).form1,
        lower,
        upper,
        _qubit_conditions(state, first, tolerances),
        lower_condition=lower_condition,
        upper_condition=upper_condition,
        tolerances=tolerances,
    )


@dataclass(frozen=True)
class Prop3Report:
    """Certainty bounds of both conditional forms in dimension d.

    Mutual unbiasedness is sufficient for saturating both bounds, and necessary
    only when rho is strictly positive; the two directions are checked separately.
    """

    form1: BoundReport
    form2: BoundReport
    mutually_unbiased: bool
    strictly_positive: bool

    @property
    def saturated(self) -> bool:
        return self.form1.upper_saturated and self.form2.upper_saturated

    @property
    def sufficiency_holds(self) -> bool:
        return self.saturated or not self.mutually_unbiased

    @property
    def necessity_holds(self) -> bool:
        return self.mutually_unbiased or not (self.saturated and self.strictly_positive)

    def as_dict(self) -> dict:
        return {
            'form1': self.form1.as_dict(),
            'form2': self.form2.as_dict(),
            MUTUALLY_UNBIASED: self.mutually_unbiased,
            STRICTLY_POSITIVE: self.strictly_positive,
            'sufficiency_holds': self.sufficiency_holds,
            'necessity_holds': self.necessity_holds,
        }


def prop3_report(
    state, first, second, order: OrderLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Prop3Report:
    order = EntropyOrder.of(order)
    if instance_kind(state, first, second) != 'qudit':
        raise DimensionMismatchError('The d-dimensional bound expects QuditState/QuditObservable.')
    result = scenario2(state, first, second, order)
    ceiling = alpha_log(state.dim, order)
    if order.is_shannon:
        factor = 1.0
    else:
        # Tr(E_Z(rho)^alpha) = sum_z p(z)^alpha
        pz = outcome_probabilities(state, first).array
        factor = math.fsum(pz**order.alpha)
    conditions = {
        MUTUALLY_UNBIASED: is_mub_pair(first, second, tolerances.predicate),
        STRICTLY_POSITIVE: strictly_positive(state, tolerances.predicate),
    }
    form1 = build_report(
        'prop3_form1',
        result.form1,
        0.0,
        factor * ceiling,
        conditions,
        lower_trivial=True,
        tolerances=tolerances,
    )
    form2 = build_report(
        'prop3_form2',
        result.form2,
        0.0,
        ceiling,
        conditions,
        lower_trivial=True,
        tolerances=tolerances,
    )
    return Prop3Report(
        form1, form2, conditions[MUTUALLY_UNBIASED], conditions[STRICTLY_POSITIVE]
    )
