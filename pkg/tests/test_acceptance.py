"""Full-size property checks of every closed-form bound.

These run the grids and trial counts the bounds are advertised with; each case
finishes in seconds.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from tests.helpers import random_distribution, state_at_angle, tilted_axis
from tsb.bounds import prop1_report, prop2_report
from tsb.entropy import ProbabilityDistribution, alpha_log, eta, renyi_from_tsallis, tsallis
from tsb.scenario import scenario2
from tsb.settings import DEFAULT_ALPHA_GRID, DEFAULT_MU_GRID
from tsb.verify import (
    SweepConfig,
    cross_check_pipelines,
    fuzz_certainty,
    fuzz_monotonicity,
    fuzz_sandwich,
    sweep_scenario1,
    sweep_scenario2,
)

R_NORMS = (0.0, 0.25, 0.5, 0.75, 1.0)


def full_config(r_norm: float) -> SweepConfig:
    return SweepConfig(r_norm, DEFAULT_MU_GRID, DEFAULT_ALPHA_GRID, r3_points=2001)


@pytest.mark.parametrize('r_norm', R_NORMS)
def test_scenario_one_bounds_are_tight(r_norm):
    result = sweep_scenario1(full_config(r_norm))
    assert result.violations == 0
    for cell in result.cells:
        assert abs(cell.min_residual) <= 1e-9
        assert cell.max_value == pytest.approx(2 * alpha_log(2.0, cell.alpha), abs=1e-9)
        if cell.regime != 'flat':
            assert abs(cell.argmin_r3) == r_norm
            assert cell.argmax_r3 == 0.0


@pytest.mark.parametrize('r_norm', R_NORMS)
def test_scenario_two_bounds_swap_across_order_one(r_norm):
    result = sweep_scenario2(full_config(r_norm))
    assert result.violations == 0
    for cell in result.cells:
        assert abs(cell.min_residual) <= 1e-9 and abs(cell.max_residual) <= 1e-9
        if cell.regime == 'flat':
            continue
        assert cell.alpha != 1.0
        edge, centre = (cell.argmin_r3, cell.argmax_r3) if cell.alpha < 1 else (
            cell.argmax_r3,
            cell.argmin_r3,
        )
        assert abs(edge) == r_norm
        assert centre == 0.0


def test_scenario_two_is_state_independent_at_order_one(z_obs):
    second = tilted_axis(0.3)
    values = [
        scenario2(state_at_angle(radius, angle), z_obs, second, 1.0).form1
        for radius in (0.0, 0.4, 1.0)
        for angle in (0.0, 30.0, 90.0, 180.0)
    ]
    assert max(values) - min(values) <= 1e-10


def test_certainty_bounds():
    report = fuzz_certainty(200, [2, 3, 4, 5], [0.5, 1.0, 2.0], seed=2024, mub_trials=50)
    assert report.violations == 0
    assert report.details['mub_worst_residual'] <= 1e-9
    assert report.details['non_mub_min_residual'] > 1e-6


def test_measurement_never_lowers_entropy():
    report = fuzz_monotonicity(500, [2, 3, 4], [0.5, 1.0, 2.0, 3.0], seed=2024)
    assert report.violations == 0
    assert report.trials == 1500
    assert report.worst_margin >= -1e-10


def test_scenario_one_sandwich():
    report = fuzz_sandwich(1000, DEFAULT_ALPHA_GRID, seed=2024, dims=[2, 3, 4])
    assert report.violations == 0
    assert report.trials == 4000
    assert report.worst_margin >= -1e-10
    assert report.details['saturated'] >= 250 * len(DEFAULT_ALPHA_GRID)


@pytest.mark.parametrize('alpha', DEFAULT_ALPHA_GRID)
@pytest.mark.parametrize('mu', [-0.5, 0.0, 0.5])
@pytest.mark.parametrize('angle', [0.0, 90.0, 45.0])
def test_equality_conditions_match_saturation(z_obs, alpha, mu, angle):
    state = state_at_angle(0.9, angle)
    second = tilted_axis(mu)
    assert prop1_report(state, z_obs, second, alpha).conditions_agree
    assert prop2_report(state, z_obs, second, alpha).conditions_agree


def test_representations_agree():
    report = cross_check_pipelines(1000, seed=2024)
    assert report.violations == 0
    assert report.worst_margin >= -1e-10


class TestEntropyIdentities:
    @pytest.fixture
    def distributions(self, rng):
        return [
            ProbabilityDistribution.from_values(
                random_distribution(rng, 5), renormalize_within=1e-12
            )
            for _ in range(100)
        ]

    @pytest.mark.parametrize('alpha', DEFAULT_ALPHA_GRID)
    def test_tsallis_is_a_sum_of_eta(self, distributions, alpha):
        for dist in distributions:
            expected = math.fsum(eta(p, alpha) for p in dist.probs)
            assert tsallis(dist, alpha) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize('alpha', [0.3, 0.5, 2.0, 3.0])
    def test_renyi_conversion(self, distributions, alpha):
        for dist in distributions:
            direct = math.log(float(np.sum(dist.array**alpha))) / (1 - alpha)
            converted = renyi_from_tsallis(tsallis(dist, alpha), alpha)
            assert converted == pytest.approx(direct, abs=1e-12)

    @pytest.mark.parametrize('alpha', DEFAULT_ALPHA_GRID)
    def test_uniform_maximum(self, alpha):
        for n in (2, 3, 7):
            uniform = tsallis(ProbabilityDistribution.uniform(n), alpha)
            assert uniform == pytest.approx(alpha_log(n, alpha), abs=1e-12)

    def test_shannon_continuity(self, distributions):
        for dist in distributions:
            h1 = tsallis(dist, 1.0)
            assert abs(tsallis(dist, 1.0 + 1e-6) - h1) <= 1e-5
            assert abs(tsallis(dist, 1.0 - 1e-6) - h1) <= 1e-5
