"""Shared numeric tolerances and run defaults."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

__all__ = [
    'Tolerances',
    'DEFAULT_TOLERANCES',
    'DEFAULT_SWEEP_POINTS',
    'DEFAULT_ALPHA_GRID',
    'DEFAULT_MU_GRID',
    'DEFAULT_SEED',
    'DEFAULT_REPLAY_DIR',
]


@dataclass(frozen=True)
class Tolerances:
    """Every threshold the package compares against, in one place."""

    shannon_switch_width: float = 1e-6
    clamp: float = 1e-12
    normalization: float = 1e-12
    predicate: float = 1e-9
    saturation: float = 1e-9
    bound_slack: float = 1e-9
    psd: float = 1e-10
    monotonicity: float = 1e-10
    closed_form: float = 1e-12
    representation: float = 1e-10
    cli_normalization: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f'Tolerance {f.name!r} must be positive, got {value!r}.')
        if not self.shannon_switch_width < 0.5:
            raise ValueError('shannon_switch_width must be below 0.5.')

    def replace(self, **overrides) -> Tolerances:
        return replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()

# Odd so that r3 = 0 is a grid point.
DEFAULT_SWEEP_POINTS = 2001
DEFAULT_ALPHA_GRID = (0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0)
DEFAULT_MU_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)
DEFAULT_SEED = 42
DEFAULT_REPLAY_DIR = 'tsb-replays'
