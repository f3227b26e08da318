"""End-to-end tests of the ``tsb`` command line."""
from __future__ import annotations

import csv
import io
import json
import logging
import math

import pytest

from tsb.cli import build_parser, main


@pytest.fixture(autouse=True)
def _drop_cli_handlers():
    # main() binds a stream handler to the captured stderr of the running test
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def named(out: str) -> dict[str, str]:
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['name', 'value']
    return dict(rows[1:])


class TestParser:
    def test_requires_a_command(self, capsys):
        code, _, err = run(capsys)
        assert code == 2
        assert 'usage' in err

    def test_seed_must_fit_in_64_bits(self, capsys):
        code, _, _ = run(capsys, 'fuzz', '--seed', str(2**64))
        assert code == 2

    def test_equals_form_for_lists(self):
        args = build_parser().parse_args(['sweep', '--r-norm', '0.5', '--mus=-1,0.5'])
        assert args.mus == [-1.0, 0.5]

    def test_negative_list_after_a_space(self, capsys):
        code, out, _ = run(
            capsys, 'sweep', '--r-norm', '0.5', '--alphas', '2', '--mus', '-1,-0.5',
            '--points', '11',
        )
        assert code == 0
        assert len(out.splitlines()) == 3


class TestEntropyCommand:
    def test_binary_uniform(self, capsys):
        code, out, _ = run(capsys, 'entropy', '--p', '0.5,0.5', '--alpha', '2')
        assert code == 0
        assert out == 'name,value\ntsallis,0.5\nrenyi,0.69314718056\n'

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, 'entropy', '--p', '0.7,0.2,0.1', '--alpha', '3', '--format', 'json'
        )
        assert code == 0
        doc = json.loads(out)
        assert doc['command'] == 'entropy'
        assert doc['results']['tsallis'] == pytest.approx(0.324, abs=1e-12)
        assert doc['violations'] == []

    def test_unnormalized_is_a_usage_error(self, capsys):
        code, out, err = run(capsys, 'entropy', '--p', '0.5,0.6', '--alpha', '2')
        assert code == 2
        assert out == ''
        assert 'sum to' in err

    def test_tiny_deviation_is_renormalized(self, capsys):
        code, out, err = run(capsys, 'entropy', '--p', '0.5,0.5000000001', '--alpha', '2')
        assert code == 0
        assert float(named(out)['tsallis']) == pytest.approx(0.5, abs=1e-12)
        assert 'renormalized' in err

    def test_invalid_order(self, capsys):
        code, _, _ = run(capsys, 'entropy', '--p', '1', '--alpha', '0')
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / 'h.csv'
        code, out, _ = run(capsys, 'entropy', '--p', '1,0', '--alpha', '0.5', '--out', str(target))
        assert code == 0 and out == ''
        assert target.read_text(encoding='utf-8').startswith('name,value\ntsallis,0\n')


class TestScenarioCommand:
    def test_mixed_qubit_scenario_one(self, capsys):
        code, out, _ = run(
            capsys, 'scenario', '--kind', '1', '--r', '0,0,0', '--p', '0,0,1', '--q', '1,0,0',
            '--alpha', '1', '--format', 'json',
        )
        assert code == 0
        results = json.loads(out)['results']
        assert results['total'] == pytest.approx(2 * math.log(2.0), abs=1e-11)
        assert results['prop1']['upper_saturated'] is True
        assert results['prop1']['conditions'] == {'commutes': True, 'zero_mean': True}

    def test_mu_builds_the_second_axis(self, capsys):
        code, out, _ = run(
            capsys, 'scenario', '--kind', '2', '--r', '0,0,1', '--mu', '0', '--alpha', '2'
        )
        assert code == 0
        values = named(out)
        assert float(values['form1']) == pytest.approx(0.5)
        assert values['prop2.upper_saturated'] == 'true'

    def test_qutrit_mub(self, capsys):
        code, out, _ = run(capsys, 'scenario', '--kind', '2', '--mub', '--d', '3', '--alpha', '1')
        assert code == 0
        values = named(out)
        assert values['form2'] == '1.09861228867'
        assert values['prop3.mutually_unbiased'] == 'true'
        assert values['prop3.sufficiency_holds'] == 'true'

    def test_qudit_scenario_one_reports_sandwich(self, capsys):
        code, out, _ = run(
            capsys, 'scenario', '--kind', '1', '--random-basis', '--random-state', '--d', '4',
            '--alpha', '0.5', '--seed', '9', '--format', 'json',
        )
        assert code == 0
        doc = json.loads(out)
        assert doc['params']['representation'] == 'qudit'
        sandwich = doc['results']['sandwich']
        assert sandwich['lower'] <= doc['results']['total'] <= sandwich['upper']

    def test_zero_axis(self, capsys):
        code, _, err = run(capsys, 'scenario', '--kind', '1', '--p', '0,0,0', '--alpha', '2')
        assert code == 2
        assert '[tsb ERROR]' in err

    def test_state_json(self, capsys, tmp_path):
        s = math.sqrt(0.5)
        doc = {
            'state': {'real': [[0.5, 0.0], [0.0, 0.5]]},
            'first': {'real': [[1.0, 0.0], [0.0, 1.0]]},
            'second': {'real': [[s, s], [s, -s]], 'eigenvalues': [1.0, -1.0]},
        }
        path = tmp_path / 'instance.json'
        path.write_text(json.dumps(doc), encoding='utf-8')
        code, out, _ = run(
            capsys, 'scenario', '--kind', '2', '--state-json', str(path), '--alpha', '2'
        )
        assert code == 0
        values = named(out)
        assert float(values['form2']) == pytest.approx(0.5, abs=1e-12)
        assert values['prop3.mutually_unbiased'] == 'true'

    def test_state_json_hermitian_observable(self, capsys, tmp_path):
        doc = {
            'state': {'real': [[1.0, 0.0], [0.0, 0.0]]},
            'first': {'real': [[1.0, 0.0], [0.0, -1.0]], 'hermitian': True},
            'second': {'real': [[0.0, 1.0], [1.0, 0.0]], 'hermitian': True},
        }
        path = tmp_path / 'pauli.json'
        path.write_text(json.dumps(doc), encoding='utf-8')
        code, out, _ = run(
            capsys, 'scenario', '--kind', '2', '--state-json', str(path), '--alpha', '2'
        )
        assert code == 0
        assert named(out)['prop3.mutually_unbiased'] == 'true'

    @pytest.mark.parametrize('entry', [[[1.0, 0.0], [0.0, 1.0]], 'identity', 3])
    def test_state_json_entries_must_be_objects(self, capsys, tmp_path, entry):
        doc = {'first': entry, 'second': {'real': [[1.0, 0.0], [0.0, 1.0]]}}
        path = tmp_path / 'flat.json'
        path.write_text(json.dumps(doc), encoding='utf-8')
        code, _, err = run(
            capsys, 'scenario', '--kind', '2', '--d', '2', '--state-json', str(path),
            '--alpha', '2',
        )
        assert code == 2
        assert 'expected a JSON object' in err

    def test_state_json_must_be_valid(self, capsys, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{', encoding='utf-8')
        code, _, _ = run(
            capsys, 'scenario', '--kind', '2', '--state-json', str(path), '--alpha', '2'
        )
        assert code == 2


class TestSweepCommand:
    def test_single_cell(self, capsys):
        code, out, _ = run(
            capsys, 'sweep', '--r-norm', '0.8', '--alphas', '2', '--mus', '0', '--points', '101'
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2
        assert lines[0].split(',')[:4] == ['alpha', 'mu', 'r_norm', 'min']

    def test_full_grid(self, capsys):
        code, out, _ = run(
            capsys, 'sweep', '--kind', '1', '--r-norm', '0.8', '--alphas', '0.5,1,2,3',
            '--mus', '-1,-0.5,0,0.5,1',
        )
        assert code == 0
        assert len(out.splitlines()) == 21

    def test_maximally_mixed_state_is_flat(self, capsys):
        code, out, _ = run(
            capsys, 'sweep', '--r-norm', '0', '--alphas', '2', '--mus', '0.5', '--format', 'json'
        )
        assert code == 0
        (cell,) = json.loads(out)['results']
        assert cell['min'] == pytest.approx(1.0, abs=1e-12)
        assert cell['max'] == pytest.approx(1.0, abs=1e-12)
        assert cell['regime'] == 'flat'

    def test_json_cells(self, capsys):
        code, out, _ = run(
            capsys, 'sweep', '--kind', '2', '--r-norm', '1', '--alphas', '0.5,2', '--mus', '0',
            '--points', '101', '--format', 'json',
        )
        assert code == 0
        cells = json.loads(out)['results']
        assert [c['regime'] for c in cells] == ['concave', 'convex']

    def test_violation_exit_code(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr('tsb.verify.prop1_bounds', lambda r, mu, order: (10.0, 20.0))
        code, out, err = run(
            capsys, 'sweep', '--r-norm', '0.5', '--alphas', '2', '--mus', '0', '--points', '11',
            '--replay-dir', str(tmp_path), '--format', 'json',
        )
        assert code == 1
        assert json.loads(out)['violations'][0]['check'] == 'lower_bound'
        assert 'replay: ' in err
        assert len(list(tmp_path.iterdir())) == 1

    def test_violation_writes_a_default_replay(self, capsys, monkeypatch, tmp_path):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setattr('tsb.verify.prop1_bounds', lambda r, mu, order: (10.0, 20.0))
        code, _, err = run(
            capsys, 'sweep', '--r-norm', '0.5', '--alphas', '2', '--mus', '0', '--points', '11'
        )
        assert code == 1
        (line,) = [x for x in err.splitlines() if x.startswith('replay: ')]
        (written,) = list((tmp_path / 'tsb-replays').iterdir())
        assert line.endswith(written.name)
        assert json.loads(written.read_text(encoding='utf-8'))['check'] == 'lower_bound'

    def test_even_points_rejected(self, capsys):
        code, _, _ = run(capsys, 'sweep', '--r-norm', '0.5', '--points', '10')
        assert code == 2


class TestFuzzCommand:
    ARGS = (
        'fuzz', '--check', 'monotonicity', '--trials', '10', '--dims', '2,3', '--alphas', '0.5,2'
    )

    def test_output_is_reproducible(self, capsys):
        first = run(capsys, *self.ARGS, '--seed', '42')
        second = run(capsys, *self.ARGS, '--seed', '42', '--workers', '2')
        assert first[0] == second[0] == 0
        assert first[1] == second[1]
        assert json.loads(first[1])['results']['violations'] == 0

    @pytest.mark.parametrize('check', ['pipelines', 'sandwich', 'certainty'])
    def test_other_checks(self, capsys, check):
        code, out, _ = run(capsys, 'fuzz', '--check', check, '--trials', '8', '--dims', '2,3')
        assert code == 0
        assert json.loads(out)['results']['violations'] == 0

    def test_csv_summary(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, '--format', 'csv')
        assert code == 0
        assert set(named(out)) == {'trials', 'violations', 'worst_margin'}
