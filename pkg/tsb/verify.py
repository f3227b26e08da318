"""Brute-force checks of the closed-form bounds: fixed-purity sweeps and seeded fuzzing.

Every engine collects its violations and, in strict mode, serializes the first one to a
JSON replay file before raising :class:`~tsb.utils.BoundViolationError`.
"""
from __future__ import annotations

import json
import logging
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import prop1_bounds, prop2_bounds, prop3_report, sandwich_report
from .entropy import EntropyOrder, quantum_tsallis, tsallis
from .qubit import BlochVector, QubitObservable, QubitState, overlap_mu
from .qudit import (
    QuditObservable,
    QuditState,
    fourier_mub_pair,
    outcome_probabilities,
    random_observable,
    random_state,
)
from .scenario import (
    g_alpha,
    lift_to_qudit,
    scenario1,
    scenario1_closed_form,
    scenario1_quantum_bridge,
    scenario2,
    scenario2_closed_form,
)
from .settings import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_MU_GRID,
    DEFAULT_SEED,
    DEFAULT_SWEEP_POINTS,
    DEFAULT_TOLERANCES,
    Tolerances,
)
from .utils import BoundViolationError, DomainError, _ensure_dir

__all__ = [
    'SweepConfig',
    'SweepCell',
    'SweepResult',
    'FuzzReport',
    'SWEEP_COLUMNS',
    'sweep_scenario1',
    'sweep_scenario2',
    'monotonicity_margin',
    'fuzz_monotonicity',
    'cross_check_pipelines',
    'fuzz_sandwich',
    'fuzz_certainty',
    'serialize_instance',
    'write_replay',
]

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    'alpha',
    'mu',
    'r_norm',
    'min',
    'argmin_r3',
    'max',
    'argmax_r3',
    'lower',
    'upper',
    'min_residual',
    'max_residual',
)


# ---------------------------------------------------------------------------
# Replay files
# ---------------------------------------------------------------------------

def _matrix_payload(m: np.ndarray) -> dict:
    return {'real': np.real(m).tolist(), 'imag': np.imag(m).tolist()}


def serialize_instance(state, first, second) -> dict:
    """JSON-ready description of a (state, first, second) triple."""
    if isinstance(state, QubitState):
        return {
            'r': state.bloch.as_array().tolist(),
            'p': first.axis.as_array().tolist(),
            'q': second.axis.as_array().tolist(),
            'first_eigenvalues': list(first.labels),
            'second_eigenvalues': list(second.labels),
        }
    return {
        'state': _matrix_payload(state.matrix),
        'first': dict(_matrix_payload(first.basis), eigenvalues=list(first.eigenvalues)),
        'second': dict(_matrix_payload(second.basis), eigenvalues=list(second.eigenvalues)),
    }


def write_replay(directory: str | os.PathLike, kind: str, payload: dict) -> str | None:
    """Write ``payload`` as ``<kind>-seed<seed>-trial<trial>.json``.

    Returns the path, or None when the directory or file cannot be written.
    """
    ok, err = _ensure_dir(directory)
    if not ok:
        logger.warning('Could not create replay directory %s: %s', directory, err)
        return None
    record = {
        'check': payload.get('check'),
        'kind': kind,
        'seed': payload.get('seed'),
        'trial': payload.get('trial'),
        'alpha': payload.get('alpha'),
        'instance': payload.get('instance', {}),
        'observed': payload.get('observed'),
        'bound': payload.get('bound'),
        'tolerance': payload.get('tolerance'),
    }
    name = f"{kind}-seed{record['seed']}-trial{record['trial']}.json"
    path = os.path.join(os.fspath(directory), name)
    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(record, f, indent=2, sort_keys=True)
    except OSError as e:
        logger.warning('Could not write replay file %s: %s', path, e)
        return None
    return path


def _settle(kind: str, failures: list[dict], replay_dir, strict: bool):
    if not failures:
        return
    logger.warning('%s: %d violation(s).', kind, len(failures))
    if not strict:
        return
    first = failures[0]
    path = write_replay(replay_dir, kind, first) if replay_dir else None
    raise BoundViolationError(
        f"{kind}: {first.get('check', 'bound')} failed at alpha={first.get('alpha')} "
        f"(observed {first.get('observed')!r}, bound {first.get('bound')!r}).",
        replay_path=path,
        instance=first,
    )


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    # results keep input order regardless of the pool width
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _rngs(entropy: int | Sequence[int], count: int) -> list[np.random.Generator]:
    """Independent per-trial PCG64 streams spawned from one seed sequence."""
    children = np.random.SeedSequence(entropy).spawn(count)
    return [np.random.Generator(np.random.PCG64(s)) for s in children]


def _orders(alphas: Sequence[float]) -> list[EntropyOrder]:
    if len(alphas) == 0:
        raise DomainError('At least one entropy order is required.')
    return [EntropyOrder(a) for a in alphas]


def _require_dims(dims: Sequence[int], least: int) -> list[int]:
    dims = [int(d) for d in dims]
    if not dims:
        raise DomainError('At least one dimension is required.')
    if min(dims) < least:
        raise DomainError(f'Dimensions must be >= {least}, got {dims!r}.')
    return dims


# ---------------------------------------------------------------------------
# Sweeps at fixed purity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    r_norm: float
    mu_grid: tuple[float, ...] = DEFAULT_MU_GRID
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    r3_points: int = DEFAULT_SWEEP_POINTS
    seed: int = DEFAULT_SEED
    workers: int = 1
    replay_dir: str | None = None
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        r = float(self.r_norm)
        if not 0.0 <= r <= 1.0:
            raise DomainError(f'r_norm must lie in [0, 1], got {self.r_norm!r}.')
        mus = tuple(float(m) for m in self.mu_grid)
        alphas = tuple(float(a) for a in self.alpha_grid)
        if not mus or not alphas:
            raise DomainError('Sweep grids must be non-empty.')
        if any(abs(m) > 1.0 for m in mus):
            raise DomainError(f'mu values must lie in [-1, 1], got {mus!r}.')
        for a in alphas:
            EntropyOrder(a)
        n = int(self.r3_points)
        if n < 3 or n % 2 == 0:
            raise DomainError(f'r3_points must be odd and >= 3, got {self.r3_points!r}.')
        if int(self.workers) < 1:
            raise DomainError(f'workers must be >= 1, got {self.workers!r}.')
        object.__setattr__(self, 'r_norm', r)
        object.__setattr__(self, 'mu_grid', mus)
        object.__setattr__(self, 'alpha_grid', alphas)
        object.__setattr__(self, 'r3_points', n)
        object.__setattr__(self, 'workers', int(self.workers))

    def grid(self) -> np.ndarray:
        """Symmetric r3 grid on [-r, r] containing 0 and both endpoints exactly."""
        half = np.linspace(0.0, self.r_norm, (self.r3_points + 1) // 2)
        return np.concatenate((-half[:0:-1], half))

    @property
    def step(self) -> float:
        return 2.0 * self.r_norm / (self.r3_points - 1)


@dataclass(frozen=True)
class SweepCell:
    alpha: float
    mu: float
    r_norm: float
    min_value: float
    argmin_r3: float
    max_value: float
    argmax_r3: float
    lower: float
    upper: float
    regime: str

    @property
    def min_residual(self) -> float:
        return self.min_value - self.lower

    @property
    def max_residual(self) -> float:
        return self.upper - self.max_value

    def as_row(self) -> tuple[float, ...]:
        """Values in :data:`SWEEP_COLUMNS` order."""
        return (
            self.alpha,
            self.mu,
            self.r_norm,
            self.min_value,
            self.argmin_r3,
            self.max_value,
            self.argmax_r3,
            self.lower,
            self.upper,
            self.min_residual,
            self.max_residual,
        )


@dataclass(frozen=True)
class SweepResult:
    kind: str
    config: SweepConfig
    cells: tuple[SweepCell, ...]
    failures: tuple[dict, ...] = ()

    @property
    def violations(self) -> int:
        return len(self.failures)

    def rows(self) -> list[tuple[float, ...]]:
        return [cell.as_row() for cell in self.cells]


def _sweep_cell(kind: str, config: SweepConfig, alpha: float, mu: float, grid: np.ndarray):
    order = EntropyOrder(alpha)
    tol = config.tolerances
    if kind == 'scenario1':
        values = scenario1_closed_form(grid, mu, order)
        lower, upper = prop1_bounds(config.r_norm, mu, order)
    else:
        values = scenario2_closed_form(grid, mu, order)[0]
        lower, upper = prop2_bounds(g_alpha(config.r_norm, order), mu, order)
    i_min, i_max = int(np.argmin(values)), int(np.argmax(values))
    vmin, vmax = float(values[i_min]), float(values[i_max])
    if vmax - vmin <= tol.saturation:
        regime = 'flat'
    elif kind == 'scenario1' or order.alpha < 1.0:
        regime = 'concave'
    else:
        regime = 'convex'
    cell = SweepCell(
        alpha,
        mu,
        config.r_norm,
        vmin,
        float(grid[i_min]),
        vmax,
        float(grid[i_max]),
        lower,
        upper,
        regime,
    )
    return cell, _cell_failures(config, cell)


def _cell_failures(config: SweepConfig, cell: SweepCell) -> list[dict]:
    tol = config.tolerances
    base = {
        'seed': config.seed,
        'trial': f'alpha={cell.alpha:g},mu={cell.mu:g}',
        'alpha': cell.alpha,
        'instance': {'r_norm': cell.r_norm, 'mu': cell.mu, 'r3_points': config.r3_points},
    }
    failures = []

    def fail(check, observed, bound, tolerance):
        failures.append(
            dict(base, check=check, observed=observed, bound=bound, tolerance=tolerance)
        )

    if cell.min_residual < -tol.bound_slack:
        fail('lower_bound', cell.min_value, cell.lower, tol.bound_slack)
    if cell.max_residual < -tol.bound_slack:
        fail('upper_bound', cell.max_value, cell.upper, tol.bound_slack)
    if abs(cell.min_residual) > tol.saturation:
        fail('lower_tightness', cell.min_value, cell.lower, tol.saturation)
    if abs(cell.max_residual) > tol.saturation:
        fail('upper_tightness', cell.max_value, cell.upper, tol.saturation)
    if cell.regime == 'flat':
        return failures
    # one grid step of slack on where the extrema sit
    step = config.step * (1.0 + 1e-9)
    edge, centre = cell.r_norm, 0.0
    if cell.regime == 'concave':
        expect_min, expect_max = edge, centre
    else:
        expect_min, expect_max = centre, edge
    if abs(abs(cell.argmin_r3) - expect_min) > step:
        fail('argmin_location', cell.argmin_r3, expect_min, step)
    if abs(abs(cell.argmax_r3) - expect_max) > step:
        fail('argmax_location', cell.argmax_r3, expect_max, step)
    return failures


def _sweep(kind: str, config: SweepConfig, strict: bool) -> SweepResult:
    grid = config.grid()
    cells = [(a, m) for a in config.alpha_grid for m in config.mu_grid]
    logger.debug('%s sweep: %d cells x %d points.', kind, len(cells), grid.size)
    outcomes = _map(lambda am: _sweep_cell(kind, config, am[0], am[1], grid), cells, config.workers)
    failures = [f for _, cell_failures in outcomes for f in cell_failures]
    result = SweepResult(kind, config, tuple(cell for cell, _ in outcomes), tuple(failures))
    _settle(f'sweep_{kind}', failures, config.replay_dir, strict)
    return result


def sweep_scenario1(config: SweepConfig, *, strict: bool = True) -> SweepResult:
    """Scenario-1 total over r3 in [-r, r] against prop1_bounds; min at the edges, max at 0."""
    return _sweep('scenario1', config, strict)


def sweep_scenario2(config: SweepConfig, *, strict: bool = True) -> SweepResult:
    """g_alpha(r3) K over the grid: extrema against prop2_bounds, with the alpha < 1 / > 1 swap."""
    return _sweep('scenario2', config, strict)


# ---------------------------------------------------------------------------
# Fuzzing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FuzzReport:
    check: str
    trials: int
    worst_margin: float
    failures: tuple[dict, ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return len(self.failures)

    def as_dict(self) -> dict:
        out = {
            'trials': self.trials,
            'violations': self.violations,
            'worst_margin': self.worst_margin,
        }
        out.update(self.details)
        return out


def monotonicity_margin(state, obs, order) -> float:
    """S_alpha(E(rho)) - S_alpha(rho) for the measurement channel of ``obs``; never negative."""
    order = EntropyOrder.of(order)
    if isinstance(state, QubitState):
        state, obs = QuditState.from_qubit(state), QuditObservable.from_qubit(obs)
    measured = tsallis(outcome_probabilities(state, obs), order)
    return measured - quantum_tsallis(state.spectrum(), order)


def fuzz_monotonicity(
    trials: int,
    dims: Sequence[int],
    alphas: Sequence[float],
    seed: int = DEFAULT_SEED,
    *,
    workers: int = 1,
    replay_dir: str | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> FuzzReport:
    """Random Ginibre states of random rank against Haar observables, every alpha per pair."""
    if trials < 1:
        raise DomainError(f'trials must be >= 1, got {trials!r}.')
    dims = _require_dims(dims, 1)
    orders = _orders(alphas)
    jobs = [(d, t, rng) for d in dims for t, rng in enumerate(_rngs([seed, d], trials))]

    def run(job):
        d, t, rng = job
        state = random_state(d, rng, rank=int(rng.integers(1, d + 1)))
        obs = random_observable(d, rng)
        out = []
        for order in orders:
            margin = monotonicity_margin(state, obs, order)
            failure = None
            if margin < -tolerances.monotonicity:
                failure = {
                    'check': 'monotonicity',
                    'seed': seed,
                    'trial': f'd={d},t={t}',
                    'alpha': order.alpha,
                    'instance': serialize_instance(state, obs, obs),
                    'observed': margin,
                    'bound': 0.0,
                    'tolerance': tolerances.monotonicity,
                }
            out.append((margin, failure))
        return out

    results = [pair for batch in _map(run, jobs, workers) for pair in batch]
    failures = [f for _, f in results if f is not None]
    report = FuzzReport(
        'monotonicity',
        len(jobs),
        min(m for m, _ in results),
        tuple(failures),
        {'dims': list(dims), 'alphas': [o.alpha for o in orders]},
    )
    _settle('monotonicity', failures, replay_dir, strict)
    return report


def _random_direction(rng: np.random.Generator) -> BlochVector:
    # Gaussian normalization gives the uniform distribution on the sphere
    while True:
        v = rng.standard_normal(3)
        n = float(np.linalg.norm(v))
        if n > 1e-12:
            return BlochVector.from_iterable(v / n)


def _random_qubit_instance(rng: np.random.Generator, perpendicular: bool = False):
    first = QubitObservable(_random_direction(rng))
    second = QubitObservable(_random_direction(rng))
    direction = _random_direction(rng)
    if perpendicular:
        p = first.axis
        v = BlochVector.from_iterable(direction.as_array() - direction.dot(p) * p.as_array())
        direction = v.normalized() if v.norm() > 1e-9 else p.orthogonal()
    radius = float(rng.uniform(0.0, 1.0))
    return QubitState(direction.scaled(radius)), first, second


def cross_check_pipelines(
    trials: int,
    seed: int = DEFAULT_SEED,
    alphas: Sequence[float] = DEFAULT_ALPHA_GRID,
    *,
    workers: int = 1,
    replay_dir: str | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> FuzzReport:
    """Bloch pipeline vs closed forms vs the d = 2 matrix pipeline on random qubit instances.

    ``worst_margin`` is minus the largest discrepancy seen.
    """
    if trials < 1:
        raise DomainError(f'trials must be >= 1, got {trials!r}.')
    orders = _orders(alphas)
    jobs = list(enumerate(_rngs(seed, trials)))

    def run(job):
        t, rng = job
        state, first, second = _random_qubit_instance(rng)
        lifted = lift_to_qudit(state, first, second)
        r3 = first.axis.dot(state.bloch)
        mu = overlap_mu(first, second)
        out = []
        for order in orders:
            total = scenario1(state, first, second, order).total
            cond = scenario2(state, first, second, order)
            form1_closed, form2_closed = scenario2_closed_form(r3, mu, order)
            closed = max(
                abs(total - scenario1_closed_form(r3, mu, order)),
                abs(cond.form1 - form1_closed),
                abs(cond.form2 - form2_closed),
            )
            cond_d = scenario2(*lifted, order)
            representation = max(
                abs(total - scenario1(*lifted, order).total),
                abs(cond.form1 - cond_d.form1),
                abs(cond.form2 - cond_d.form2),
                abs(total - scenario1_quantum_bridge(state, first, second, order)),
            )
            failure = None
            for check, gap, tol in (
                ('closed_form', closed, tolerances.closed_form),
                ('representation', representation, tolerances.representation),
            ):
                if gap > tol and failure is None:
                    failure = {
                        'check': check,
                        'seed': seed,
                        'trial': t,
                        'alpha': order.alpha,
                        'instance': serialize_instance(state, first, second),
                        'observed': gap,
                        'bound': 0.0,
                        'tolerance': tol,
                    }
            out.append((max(closed, representation), failure))
        return out

    results = [pair for batch in _map(run, jobs, workers) for pair in batch]
    failures = [f for _, f in results if f is not None]
    report = FuzzReport(
        'pipelines',
        trials,
        -max(gap for gap, _ in results),
        tuple(failures),
        {'alphas': [o.alpha for o in orders]},
    )
    _settle('pipelines', failures, replay_dir, strict)
    return report


def fuzz_sandwich(
    trials: int,
    alphas: Sequence[float] = DEFAULT_ALPHA_GRID,
    seed: int = DEFAULT_SEED,
    *,
    dims: Sequence[int] = (),
    slack: float = 1e-10,
    ambiguous_below: float = 1e-3,
    workers: int = 1,
    replay_dir: str | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> FuzzReport:
    """S(rho) + S(E_Z rho) <= scenario-1 total <= 2 S(rho_*) on random instances.

    ``trials`` Bloch-form qubits come first. Every fourth forces r perpendicular to p,
    and the upper side must be saturated exactly when |p.r| is within the predicate
    tolerance; instances with |p.r| between that tolerance and ``ambiguous_below`` only
    get the two-sided check. Each dimension in ``dims`` then adds ``trials`` Ginibre
    states of random rank against two Haar bases, checked on both sides.
    """
    if trials < 1:
        raise DomainError(f'trials must be >= 1, got {trials!r}.')
    dims = _require_dims(dims, 2) if len(dims) else []
    orders = _orders(alphas)
    jobs = [(None, t, rng) for t, rng in enumerate(_rngs(seed, trials))]
    for d in dims:
        jobs += [(d, t, rng) for t, rng in enumerate(_rngs([seed, d], trials))]

    def instance(d, t, rng):
        if d is None:
            return _random_qubit_instance(rng, perpendicular=t % 4 == 0)
        state = random_state(d, rng, rank=int(rng.integers(1, d + 1)))
        return state, random_observable(d, rng), random_observable(d, rng)

    def run(job):
        d, t, rng = job
        state, first, second = instance(d, t, rng)
        r3 = abs(first.axis.dot(state.bloch)) if d is None else None
        out = []
        for order in orders:
            rep = sandwich_report(state, first, second, order, tolerances)
            margin = min(rep.lower_residual, rep.upper_residual)
            failure = None
            check = None
            if rep.lower_residual < -slack:
                check, observed, bound = 'sandwich_lower', rep.quantity, rep.lower
            elif rep.upper_residual < -slack:
                check, observed, bound = 'sandwich_upper', rep.quantity, rep.upper
            elif (
                r3 is not None
                and (r3 <= tolerances.predicate or r3 >= ambiguous_below)
                and rep.upper_saturated != (r3 <= tolerances.predicate)
            ):
                check, observed, bound = 'upper_saturation', rep.quantity, rep.upper
            if check is not None:
                failure = {
                    'check': check,
                    'seed': seed,
                    'trial': t if d is None else f'd={d},t={t}',
                    'alpha': order.alpha,
                    'instance': serialize_instance(state, first, second),
                    'observed': observed,
                    'bound': bound,
                    'tolerance': slack,
                }
            out.append((margin, d is None and rep.upper_saturated, failure))
        return out

    results = [item for batch in _map(run, jobs, workers) for item in batch]
    failures = [f for _, _, f in results if f is not None]
    report = FuzzReport(
        'sandwich',
        len(jobs),
        min(m for m, _, _ in results),
        tuple(failures),
        {
            'dims': dims,
            'alphas': [o.alpha for o in orders],
            'saturated': sum(1 for _, sat, _ in results if sat),
        },
    )
    _settle('sandwich', failures, replay_dir, strict)
    return report


def _positive_state(d: int, rng: np.random.Generator, mixing: float) -> QuditState:
    rho = random_state(d, rng)
    return QuditState((1.0 - mixing) * rho.matrix + mixing * np.eye(d) / d)


def _biased_pair(d: int, rng: np.random.Generator, min_bias: float):
    """Haar pair whose overlaps deviate from 1/d by at least ``min_bias`` somewhere."""
    while True:
        first, second = random_observable(d, rng), random_observable(d, rng)
        overlaps = np.abs(first.basis.conj().T @ second.basis) ** 2
        if np.max(np.abs(overlaps - 1.0 / d)) >= min_bias:
            return first, second


def fuzz_certainty(
    trials: int,
    dims: Sequence[int],
    alphas: Sequence[float],
    seed: int = DEFAULT_SEED,
    *,
    mub_trials: int = 50,
    mixing: float = 0.1,
    min_bias: float = 0.05,
    min_gap: float = 1e-6,
    workers: int = 1,
    replay_dir: str | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> FuzzReport:
    """Certainty bounds in dimension d.

    The Fourier pair must saturate both conditional forms on ``mub_trials`` random full-rank
    states; ``trials`` random biased pairs must leave a form-2 gap above ``min_gap``.
    ``worst_margin`` is the smallest such gap.
    """
    if trials < 1 or mub_trials < 0:
        raise DomainError(f'Invalid trial counts ({trials!r}, {mub_trials!r}).')
    dims = _require_dims(dims, 2)
    if not 0.0 < mixing <= 1.0:
        raise DomainError(f'mixing must lie in (0, 1], got {mixing!r}.')
    orders = _orders(alphas)
    jobs = []
    for d in dims:
        jobs += [(d, True, t, rng) for t, rng in enumerate(_rngs([seed, d, 0], mub_trials))]
        jobs += [(d, False, t, rng) for t, rng in enumerate(_rngs([seed, d, 1], trials))]

    def run(job):
        d, mub, t, rng = job
        state = _positive_state(d, rng, mixing)
        first, second = fourier_mub_pair(d) if mub else _biased_pair(d, rng, min_bias)
        out = []
        for order in orders:
            rep = prop3_report(state, first, second, order, tolerances)
            residual = max(rep.form1.upper_residual, rep.form2.upper_residual)
            check = None
            if not (rep.form1.within_bounds and rep.form2.within_bounds):
                check = 'certainty_bound'
            elif mub and not rep.sufficiency_holds:
                check = 'mub_saturation'
            elif not mub and (rep.form2.upper_residual <= min_gap or not rep.necessity_holds):
                check = 'non_mub_gap'
            failure = None
            if check is not None:
                failure = {
                    'check': check,
                    'seed': seed,
                    'trial': f"d={d},{'mub' if mub else 'random'},t={t}",
                    'alpha': order.alpha,
                    'instance': serialize_instance(state, first, second),
                    'observed': rep.form2.quantity,
                    'bound': rep.form2.upper,
                    'tolerance': tolerances.saturation if mub else min_gap,
                }
            out.append((mub, residual if mub else rep.form2.upper_residual, failure))
        return out

    results = [item for batch in _map(run, jobs, workers) for item in batch]
    failures = [f for _, _, f in results if f is not None]
    mub_residuals = [r for mub, r, _ in results if mub]
    gaps = [r for mub, r, _ in results if not mub]
    report = FuzzReport(
        'certainty',
        len(jobs),
        min(gaps),
        tuple(failures),
        {
            'dims': list(dims),
            'alphas': [o.alpha for o in orders],
            'mub_worst_residual': max((abs(r) for r in mub_residuals), default=0.0),
            'non_mub_min_residual': min(gaps),
        },
    )
    _settle('certainty', failures, replay_dir, strict)
    return report
