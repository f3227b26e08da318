"""Command-line frontend: entropies, scenario reports, bound sweeps and fuzz runs.

Usage:
  tsb entropy --p 0.5,0.5 --alpha 2
  tsb scenario --kind 1 --r 0,0,0 --p 0,0,1 --q 1,0,0 --alpha 1
  tsb scenario --kind 2 --mub --d 3 --alpha 1
  tsb sweep --kind 1 --r-norm 0.8 --alphas 0.5,1,2,3 --mus -1,-0.5,0,0.5,1
  tsb fuzz --check monotonicity --trials 500 --dims 2,3,4 --alphas 0.5,1,2 --seed 42

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from collections.abc import Iterable, Iterator

import numpy as np

from . import __version__
from .bounds import prop1_report, prop2_report, prop3_report, sandwich_report
from .entropy import EntropyOrder, ProbabilityDistribution, renyi_from_tsallis, tsallis
from .qubit import BlochVector, QubitObservable, QubitState
from .qudit import QuditObservable, QuditState, fourier_mub_pair, random_observable, random_state
from .scenario import instance_kind, scenario1, scenario2
from .settings import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_MU_GRID,
    DEFAULT_REPLAY_DIR,
    DEFAULT_SEED,
    DEFAULT_SWEEP_POINTS,
    DEFAULT_TOLERANCES,
    Tolerances,
)
from .utils import BoundViolationError, DomainError, format_number, parse_float_list, parse_int_list
from .verify import (
    SWEEP_COLUMNS,
    SweepConfig,
    cross_check_pipelines,
    fuzz_certainty,
    fuzz_monotonicity,
    fuzz_sandwich,
    sweep_scenario1,
    sweep_scenario2,
    write_replay,
)

__all__ = ['build_parser', 'main']

logger = logging.getLogger('tsb')

LOG_FORMAT = '[tsb %(levelname)s] %(message)s'


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

def floats(text: str) -> list[float]:
    return parse_float_list(text)


def ints(text: str) -> list[int]:
    return parse_int_list(text)


def vector(text: str) -> BlochVector:
    values = parse_float_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f'expected 3 comma-separated reals, got {text!r}')
    return BlochVector.from_iterable(values)


def seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f'seed must be a 64-bit unsigned integer, got {text!r}')
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text!r}')
    return value


def _add_output(p: argparse.ArgumentParser, default: str = 'csv'):
    p.add_argument(
        '--format',
        choices=('csv', 'json'),
        default=default,
        help=f'Output format (default: {default})',
    )
    p.add_argument('--out', help='Write to this file instead of standard output')
    p.add_argument('--tol', type=float, help='Saturation, predicate and bound-slack tolerance')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tsb', description='Tsallis-entropy bounds for two successive projective measurements.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('entropy', help='Tsallis and Renyi entropy of a distribution')
    p.add_argument('--p', type=floats, required=True, help='Comma-separated probabilities')
    p.add_argument('--alpha', type=float, required=True)
    _add_output(p)

    p = sub.add_parser('scenario', help='Evaluate one scenario with its bound report')
    p.add_argument('--kind', type=int, choices=(1, 2), required=True)
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument(
        '--r', type=vector, default=BlochVector(0.0, 0.0, 0.0), help='Bloch vector of the state'
    )
    p.add_argument(
        '--p', type=vector, default=BlochVector(0.0, 0.0, 1.0), help='Axis of the first observable'
    )
    second = p.add_mutually_exclusive_group()
    second.add_argument('--q', type=vector, help='Axis of the second observable')
    second.add_argument('--mu', type=float, help='Overlap q.p; q is built in a plane containing p')
    p.add_argument('--d', type=int, help='Dimension for qudit instances')
    bases = p.add_mutually_exclusive_group()
    bases.add_argument('--mub', action='store_true', help='Computational and Fourier bases')
    bases.add_argument(
        '--random-basis', action='store_true', help='Two Haar-random bases from --seed'
    )
    p.add_argument(
        '--random-state', action='store_true', help='Ginibre state from --seed instead of I/d'
    )
    p.add_argument('--state-json', help='JSON file with "state", "first" and/or "second" matrices')
    p.add_argument('--seed', type=seed, default=DEFAULT_SEED)
    _add_output(p)

    p = sub.add_parser('sweep', help='Fixed-purity r3 sweep against the closed-form bounds')
    p.add_argument('--kind', type=int, choices=(1, 2), default=1)
    p.add_argument('--r-norm', type=float, required=True)
    p.add_argument('--alphas', type=floats, default=list(DEFAULT_ALPHA_GRID))
    p.add_argument('--mus', type=floats, default=list(DEFAULT_MU_GRID))
    p.add_argument(
        '--points', type=int, default=DEFAULT_SWEEP_POINTS, help='Odd number of r3 samples'
    )
    p.add_argument('--seed', type=seed, default=DEFAULT_SEED)
    p.add_argument('--workers', type=positive_int, default=1)
    p.add_argument(
        '--replay-dir', default=DEFAULT_REPLAY_DIR, help='Directory for violation replay files'
    )
    _add_output(p)

    p = sub.add_parser('fuzz', help='Seeded random-instance verification')
    p.add_argument(
        '--check',
        choices=('monotonicity', 'pipelines', 'certainty', 'sandwich'),
        default='monotonicity',
    )
    p.add_argument('--trials', type=positive_int, default=500)
    p.add_argument('--dims', type=ints, default=[2, 3, 4])
    p.add_argument('--alphas', type=floats, default=[0.5, 1.0, 2.0])
    p.add_argument('--seed', type=seed, default=DEFAULT_SEED)
    p.add_argument('--workers', type=positive_int, default=1)
    p.add_argument(
        '--replay-dir', default=DEFAULT_REPLAY_DIR, help='Directory for violation replay files'
    )
    _add_output(p, default='json')
    return parser


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, float, np.floating, np.integer)):
        return format_number(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float(format_number(value)) if math.isfinite(value) else str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _csv_text(header: Iterable[str] | None, rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    if header is not None:
        writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_text(command: str, params: dict, results, violations) -> str:
    doc = {
        'command': command,
        'params': _jsonable(params),
        'results': _jsonable(results),
        'violations': _jsonable(list(violations)),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + '\n'


def _emit(args, text: str):
    if args.out:
        with open(args.out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix: str, mapping: dict) -> Iterator[tuple[str, object]]:
    for key, value in mapping.items():
        name = f'{prefix}.{key}' if prefix else str(key)
        if isinstance(value, dict):
            yield from _flatten(name, value)
        else:
            yield name, value


def _emit_named(args, command: str, params: dict, results: dict):
    if args.format == 'json':
        _emit(args, _json_text(command, params, results, []))
    else:
        _emit(args, _csv_text(('name', 'value'), _flatten('', results)))


def _tolerances(args) -> Tolerances:
    if args.tol is None:
        return DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES.replace(saturation=args.tol, predicate=args.tol, bound_slack=args.tol)


def _summary(failure: dict) -> dict:
    keys = ('check', 'trial', 'alpha', 'observed', 'bound', 'tolerance')
    return {k: failure.get(k) for k in keys}


def _report_violations(kind: str, failures, replay_dir) -> int:
    if not failures:
        return 0
    logger.error('%s: %d violation(s); first: %s', kind, len(failures), failures[0].get('check'))
    path = write_replay(replay_dir or DEFAULT_REPLAY_DIR, kind, failures[0])
    if path:
        print(f'replay: {path}', file=sys.stderr)
    return 1


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_entropy(args) -> int:
    tol = _tolerances(args)
    order = EntropyOrder(args.alpha)
    dist = ProbabilityDistribution.from_values(args.p, renormalize_within=tol.cli_normalization)
    total = math.fsum(args.p)
    if abs(total - 1.0) > tol.normalization:
        logger.warning('Probabilities sum to %.12g; renormalized.', total)
    h = tsallis(dist, order)
    results = {'tsallis': h, 'renyi': renyi_from_tsallis(h, order)}
    _emit_named(args, 'entropy', {'p': args.p, 'alpha': args.alpha}, results)
    return 0


def _load_state_json(path: str) -> dict:
    try:
        with open(path, encoding='utf-8') as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f'Could not read {path}: {e}') from None
    if not isinstance(doc, dict):
        raise DomainError(f'{path}: expected a JSON object.')
    return doc


def _require_object(entry, what: str):
    if not isinstance(entry, dict):
        raise DomainError(f'{what}: expected a JSON object, got {type(entry).__name__}.')


def _matrix(entry: dict, what: str) -> np.ndarray:
    _require_object(entry, what)
    try:
        real = np.asarray(entry['real'], dtype=float)
        imag = np.asarray(entry.get('imag', np.zeros_like(real)), dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f'{what}: expected {{"real": [[...]], "imag": [[...]]}} ({e}).') from None
    if real.shape != imag.shape:
        raise DomainError(f'{what}: real and imaginary parts differ in shape.')
    return real + 1j * imag


def _observable(entry: dict, what: str) -> QuditObservable:
    _require_object(entry, what)
    if entry.get('hermitian'):
        return QuditObservable.from_hermitian(_matrix(entry, what))
    try:
        eigenvalues = tuple(float(v) for v in entry.get('eigenvalues', ()))
    except (TypeError, ValueError) as e:
        raise DomainError(f'{what}: eigenvalues must be a list of numbers ({e}).') from None
    return QuditObservable(_matrix(entry, what), eigenvalues)


def _qudit_instance(args):
    doc = _load_state_json(args.state_json) if args.state_json else {}
    rng = np.random.Generator(np.random.PCG64(args.seed))
    d = args.d
    for key in ('state', 'first', 'second'):
        if key in doc and d is None:
            d = _matrix(doc[key], key).shape[0]
    if d is None or d < 2:
        raise DomainError('Qudit instances need --d >= 2 or matrices in --state-json.')
    first = second = None
    if args.mub:
        first, second = fourier_mub_pair(d)
    elif args.random_basis:
        first, second = random_observable(d, rng), random_observable(d, rng)
    if 'first' in doc:
        first = _observable(doc['first'], 'first')
    if 'second' in doc:
        second = _observable(doc['second'], 'second')
    if first is None or second is None:
        raise DomainError(
            'Qudit instances need --mub, --random-basis or both bases in --state-json.'
        )
    if 'state' in doc:
        state = QuditState(_matrix(doc['state'], 'state'))
    elif args.random_state:
        state = random_state(d, rng)
    else:
        state = QuditState.maximally_mixed(d)
    return state, first, second


def _qubit_instance(args):
    first = QubitObservable.from_axis(args.p)
    if args.mu is not None:
        mu = float(args.mu)
        if abs(mu) > 1.0:
            raise DomainError(f'--mu must lie in [-1, 1], got {mu!r}.')
        axis = first.axis
        q = axis.scaled(mu).as_array() + math.sqrt(1.0 - mu * mu) * axis.orthogonal().as_array()
        second = QubitObservable.from_axis(q)
    else:
        q = args.q if args.q is not None else BlochVector(1.0, 0.0, 0.0)
        second = QubitObservable.from_axis(q)
    return QubitState(args.r), first, second


def _is_qudit(args) -> bool:
    return bool(args.mub or args.random_basis or args.random_state or args.state_json or args.d)


def cmd_scenario(args) -> int:
    tol = _tolerances(args)
    order = EntropyOrder(args.alpha)
    state, first, second = _qudit_instance(args) if _is_qudit(args) else _qubit_instance(args)
    qubit = instance_kind(state, first, second) == 'qubit'
    params = {
        'kind': args.kind,
        'alpha': args.alpha,
        'representation': 'qubit' if qubit else 'qudit',
    }
    if args.kind == 1:
        res = scenario1(state, first, second, order)
        results = {
            'first_entropy': res.first_entropy,
            'second_entropy': res.second_entropy,
            'total': res.total,
        }
        report = (prop1_report if qubit else sandwich_report)(state, first, second, order, tol)
        results[report.name] = report.as_dict()
    else:
        res = scenario2(state, first, second, order)
        results = {'form1': res.form1, 'form2': res.form2}
        for label, p, h in zip(res.marginal.labels, res.marginal.probs, res.per_outcome):
            results[f'p_z[{format_number(label)}]'] = p
            results[f'h_given_z[{format_number(label)}]'] = h
        if qubit:
            report = prop2_report(state, first, second, order, tol)
            results[report.name] = report.as_dict()
        else:
            results['prop3'] = prop3_report(state, first, second, order, tol).as_dict()
    _emit_named(args, 'scenario', params, results)
    return 0


def cmd_sweep(args) -> int:
    config = SweepConfig(
        r_norm=args.r_norm,
        mu_grid=tuple(args.mus),
        alpha_grid=tuple(args.alphas),
        r3_points=args.points,
        seed=args.seed,
        workers=args.workers,
        replay_dir=args.replay_dir,
        tolerances=_tolerances(args),
    )
    run = sweep_scenario1 if args.kind == 1 else sweep_scenario2
    result = run(config, strict=False)
    if args.format == 'json':
        cells = [
            dict(zip(SWEEP_COLUMNS, cell.as_row()), regime=cell.regime) for cell in result.cells
        ]
        params = {
            'kind': args.kind,
            'r_norm': config.r_norm,
            'alphas': list(config.alpha_grid),
            'mus': list(config.mu_grid),
            'points': config.r3_points,
        }
        _emit(args, _json_text('sweep', params, cells, [_summary(f) for f in result.failures]))
    else:
        _emit(args, _csv_text(SWEEP_COLUMNS, result.rows()))
    return _report_violations(f'sweep_scenario{args.kind}', result.failures, args.replay_dir)


def cmd_fuzz(args) -> int:
    tol = _tolerances(args)
    common = {'workers': args.workers, 'tolerances': tol, 'strict': False}
    if args.check == 'monotonicity':
        report = fuzz_monotonicity(args.trials, args.dims, args.alphas, args.seed, **common)
    elif args.check == 'pipelines':
        report = cross_check_pipelines(args.trials, args.seed, args.alphas, **common)
    elif args.check == 'certainty':
        report = fuzz_certainty(args.trials, args.dims, args.alphas, args.seed, **common)
    else:
        report = fuzz_sandwich(args.trials, args.alphas, args.seed, dims=args.dims, **common)
    params = {
        'check': args.check,
        'trials': args.trials,
        'dims': args.dims,
        'alphas': args.alphas,
        'seed': args.seed,
    }
    summary = {
        'trials': report.trials,
        'violations': report.violations,
        'worst_margin': report.worst_margin,
    }
    if args.format == 'json':
        violations = [_summary(f) for f in report.failures]
        _emit(args, _json_text('fuzz', params, report.as_dict(), violations))
    else:
        _emit(args, _csv_text(('name', 'value'), summary.items()))
    return _report_violations(args.check, report.failures, args.replay_dir)


_NEGATIVE_LIST = re.compile(r'^-\.?\d[\d.eE+-]*(,[-+\d.eE]+)*$')


def _join_negative_values(argv: list[str]) -> list[str]:
    """Glue '--opt -1,0.5' into '--opt=-1,0.5' so argparse reads the list as a value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ''
        if token.startswith('--') and '=' not in token and _NEGATIVE_LIST.match(nxt):
            out.append(f'{token}={nxt}')
            i += 2
        else:
            out.append(token)
            i += 1
    return out


COMMANDS = {
    'entropy': cmd_entropy,
    'scenario': cmd_scenario,
    'sweep': cmd_sweep,
    'fuzz': cmd_fuzz,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except BoundViolationError as e:
        logger.error('%s', e)
        if e.replay_path:
            print(f'replay: {e.replay_path}', file=sys.stderr)
        return 1
    except (DomainError, ValueError) as e:
        logger.error('%s', e)
        return 2
