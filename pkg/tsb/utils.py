"""Utility helpers: error types, number formatting, small filesystem helpers."""
from __future__ import annotations

import math
import os
from collections.abc import Iterable

import numpy as np

__all__ = [
    'DomainError',
    'DimensionMismatchError',
    'BoundViolationError',
    'format_number',
    'parse_float_list',
    'parse_int_list',
    '_ensure_dir',
    '_as_float_array',
    '_require_finite',
    '_drop_rounding',
]


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionMismatchError(DomainError):
    """Operands live in different Hilbert-space dimensions."""


class BoundViolationError(RuntimeError):
    """A numerically verified bound failed beyond tolerance."""

    def __init__(self, message: str, replay_path: str | None = None, instance: dict | None = None):
        super().__init__(message)
        self.replay_path = replay_path
        self.instance = instance or {}


def format_number(value: float, digits: int = 12) -> str:
    """Locale-independent fixed-significance rendering used by every output path."""
    value = float(value)
    if value == 0.0:
        # avoid '-0'
        return '0'
    return format(value, f'.{digits}g')


def parse_float_list(text: str) -> list[float]:
    parts = [p.strip() for p in (text or '').split(',') if p.strip()]
    if not parts:
        raise DomainError(f'Expected a comma-separated list of numbers, got {text!r}.')
    try:
        values = [float(p) for p in parts]
    except ValueError as e:
        raise DomainError(f'Could not parse {text!r}: {e}') from None
    if not all(math.isfinite(v) for v in values):
        raise DomainError(f'Non-finite value in {text!r}.')
    return values


def parse_int_list(text: str) -> list[int]:
    parts = [p.strip() for p in (text or '').split(',') if p.strip()]
    if not parts:
        raise DomainError(f'Expected a comma-separated list of integers, got {text!r}.')
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise DomainError(f'Could not parse {text!r}: {e}') from None


def _ensure_dir(path: str | os.PathLike):
    try:
        if path and not os.path.exists(path):
            os.makedirs(path, exist_ok=True)
        return True, None
    except Exception as e:
        return False, str(e)


def _as_float_array(values: Iterable[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f'Expected a flat sequence of reals, got shape {arr.shape}.')
    return arr


def _require_finite(arr: np.ndarray, what: str):
    if not np.all(np.isfinite(arr)):
        raise DomainError(f'{what} contains non-finite entries.')


def _drop_rounding(values: np.ndarray, tol: float) -> np.ndarray:
    """Zero entries with |v| <= tol (eigensolver residue on exact zeros); clamp the rest at 0."""
    arr = np.asarray(values, dtype=float)
    return np.where(np.abs(arr) <= tol, 0.0, np.clip(arr, 0.0, None))
