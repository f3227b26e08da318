"""Tsallis-entropy uncertainty and certainty bounds for two successive projective measurements."""
from __future__ import annotations

__version__ = '1.0.0'

from .bounds import (
    BoundReport,
    Prop3Report,
    prop1_bounds,
    prop1_report,
    prop2_bounds,
    prop2_report,
    prop3_report,
    sandwich_report,
)
from .entropy import (
    ConditionalTable,
    EntropyOrder,
    ProbabilityDistribution,
    alpha_log,
    conditional_tsallis,
    conditional_tsallis_form1,
    conditional_tsallis_form2,
    eta,
    quantum_tsallis,
    quantum_tsallis_matrix,
    renyi_from_tsallis,
    tsallis,
    tsallis_via_alpha_log,
)
from .qubit import (
    BlochVector,
    QubitObservable,
    QubitState,
    commutes_with,
    conditional_probabilities,
    dephase_channel,
    measurement_probabilities,
    overlap_mu,
    second_measurement_probabilities,
    zero_mean_condition,
)
from .qudit import (
    QuditObservable,
    QuditState,
    conditional_probabilities_d,
    dephase_channel_d,
    fourier_mub_pair,
    is_mub_pair,
    outcome_probabilities,
    strictly_positive,
)
from .scenario import (
    ScenarioOneResult,
    ScenarioTwoResult,
    g_alpha,
    outcome_entropy,
    scenario1,
    scenario1_closed_form,
    scenario2,
    scenario2_closed_form,
)
from .settings import DEFAULT_TOLERANCES, Tolerances
from .utils import BoundViolationError, DimensionMismatchError, DomainError
from .verify import (
    SweepConfig,
    SweepResult,
    cross_check_pipelines,
    fuzz_certainty,
    fuzz_monotonicity,
    fuzz_sandwich,
    sweep_scenario1,
    sweep_scenario2,
)

__all__ = [
    '__version__',
    'BoundReport',
    'Prop3Report',
    'prop1_bounds',
    'prop1_report',
    'prop2_bounds',
    'prop2_report',
    'prop3_report',
    'sandwich_report',
    'ConditionalTable',
    'EntropyOrder',
    'ProbabilityDistribution',
    'alpha_log',
    'conditional_tsallis',
    'conditional_tsallis_form1',
    'conditional_tsallis_form2',
    'eta',
    'quantum_tsallis',
    'quantum_tsallis_matrix',
    'renyi_from_tsallis',
    'tsallis',
    'tsallis_via_alpha_log',
    'BlochVector',
    'QubitObservable',
    'QubitState',
    'commutes_with',
    'conditional_probabilities',
    'dephase_channel',
    'measurement_probabilities',
    'overlap_mu',
    'second_measurement_probabilities',
    'zero_mean_condition',
    'QuditObservable',
    'QuditState',
    'conditional_probabilities_d',
    'dephase_channel_d',
    'fourier_mub_pair',
    'is_mub_pair',
    'outcome_probabilities',
    'strictly_positive',
    'ScenarioOneResult',
    'ScenarioTwoResult',
    'g_alpha',
    'outcome_entropy',
    'scenario1',
    'scenario1_closed_form',
    'scenario2',
    'scenario2_closed_form',
    'DEFAULT_TOLERANCES',
    'Tolerances',
    'BoundViolationError',
    'DimensionMismatchError',
    'DomainError',
    'SweepConfig',
    'SweepResult',
    'cross_check_pipelines',
    'fuzz_certainty',
    'fuzz_monotonicity',
    'fuzz_sandwich',
    'sweep_scenario1',
    'sweep_scenario2',
]
