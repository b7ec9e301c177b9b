import json
import os

import pytest

from src.core.config import load_config
from src.main import main

from conftest import sample


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def _payload(captured):
    return json.loads(captured.out)


def test_check_qybe_passes(capsys):
    code, captured = _run(capsys, 'rmatrix', 'check-qybe', sample('glq2.json'))
    assert code == 0
    payload = _payload(captured)
    assert payload['command'] == 'rmatrix check-qybe'
    assert payload['coeff_mode'] == 'qfield'
    assert payload['inputs'] == [sample('glq2.json')]
    assert payload['report']['passed'] is True
    assert payload['result'] == {'n': 2, 'nonzero_entries': 5}


def test_broken_rmatrix_exits_one(capsys, tmp_path):
    with open(sample('glq2.json'), encoding='utf-8') as f:
        data = json.load(f)
    data['entries']['0,0,0,0'] = '1'
    path = tmp_path / 'broken.json'
    path.write_text(json.dumps(data), encoding='utf-8')
    code, captured = _run(capsys, 'rmatrix', 'check-qybe', str(path))
    assert code == 1
    check = _payload(captured)['report']['checks'][0]
    assert check['status'] == 'fail'
    assert check['witness']['at'].startswith('(')


def test_braided_line_derivative(capsys):
    code, captured = _run(capsys, 'plane', 'diff', '--r', sample('braided_line.json'), '--rprime', 'free',
                          '--i', '0', '--poly', 'x0*x0*x0')
    assert code == 0
    result = _payload(captured)['result']
    assert result['poly'] == 'x[0]*x[0]*x[0]'
    assert result['derivative'] == '(q^2 + q + 1)*x[0]*x[0]'


def test_derived_identities_on_zn3(capsys):
    code, captured = _run(capsys, '--coeff', 'cyclotomic:3', 'hopf', 'lemma16', sample('zn3.json'))
    assert code == 0
    payload = _payload(captured)
    assert payload['coeff_mode'] == 'cyclotomic:3'
    assert payload['result']['dim'] == 3


def test_global_flags_after_the_command(capsys):
    code, captured = _run(capsys, 'hopf', 'anyonic-dim', '--dims', '1,1', '--coeff', 'cyclotomic:2')
    assert code == 0
    assert _payload(captured)['result']['anyonic_dim'] == '0'


def test_mode_mismatch_is_a_usage_error(capsys):
    code, captured = _run(capsys, 'hopf', 'lemma16', sample('zn3.json'))
    assert code == 2
    assert 'ModeMismatch' in captured.err
    assert captured.out == ''


@pytest.mark.parametrize('argv', [
    ['nosuchcommand'],
    ['rmatrix', 'check-qybe'],
    ['rmatrix', 'check-qybe', 'missing.json'],
    ['--degree', '0', 'rmatrix', 'check-qybe', 'samples/glq2.json'],
    ['--coeff', 'reals', 'rmatrix', 'check-qybe', 'samples/glq2.json'],
    ['plane', 'diff', '--r', 'samples/braided_line.json', '--rprime', 'free'],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _ = _run(capsys, *argv)
    assert code == 2


def test_help_exits_zero(capsys):
    code, captured = _run(capsys, 'help')
    assert code == 0
    assert '=== braidkit CLI ===' in captured.out


def test_reports_are_deterministic(capsys):
    argv = ['--coeff', 'cyclotomic:3', 'hopf', 'verify', sample('zn3.json')]
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[0] == second[0] == 0
    assert first[1].out == second[1].out


def test_pretty_output(capsys):
    code, captured = _run(capsys, '--pretty', 'rmatrix', 'check-qybe', sample('glq2.json'))
    assert code == 0
    assert captured.out.startswith('=== braidkit rmatrix check-qybe (qfield) ===')
    assert 'Overall: PASSED' in captured.out


def test_csv_export(capsys, tmp_path):
    code, _ = _run(capsys, '--csv', 'rmatrix', 'check-qybe', sample('glq2.json'))
    assert code == 0
    out_dir = tmp_path / 'data' / 'rmatrix_check-qybe'
    assert (out_dir / 'checks.csv').exists()
    assert (out_dir / 'entries.csv').exists()


def test_second_inverse_exports_braidings(capsys, tmp_path):
    code, captured = _run(capsys, '--csv', 'rmatrix', 'second-inverse', sample('glq2.json'))
    assert code == 0
    assert _payload(captured)['result']['v_invertible'] is True
    out_dir = tmp_path / 'data' / 'rmatrix_second-inverse'
    for name in ('second_inverse', 'psi_vv', 'psi_co_co', 'psi_vec_co', 'psi_co_vec'):
        assert (out_dir / f"{name}.csv").exists()
    assert (out_dir / 'psi_vv.csv').read_text(encoding='utf-8').startswith('in,out,value')


def test_make_writes_a_readable_file(capsys, tmp_path):
    out = tmp_path / 'z3.json'
    code, _ = _run(capsys, '--coeff', 'cyclotomic:3', 'hopf', 'make', 'zn-prime', '3', '--out', str(out))
    assert code == 0
    code, captured = _run(capsys, '--coeff', 'cyclotomic:3', 'hopf', 'verify', str(out))
    assert code == 0
    assert _payload(captured)['result']['quasitriangular'] is True


def test_bosonize_then_split(capsys, tmp_path):
    out = tmp_path / 'sweedler'
    code, captured = _run(capsys, '--coeff', 'cyclotomic:2', 'bosonize', '--h', sample('z2prime.json'),
                          '--b', sample('super_line.json'), '--action', sample('super_line_action.json'),
                          '--anyonic', '--out', str(out))
    assert code == 0
    assert len(_payload(captured)['result']['hopf']['labels']) == 4
    assert sorted(os.listdir(out)) == ['hopf.json', 'inclusion.json', 'projection.json']

    code, captured = _run(capsys, '--coeff', 'cyclotomic:2', 'radford', '--h1', str(out / 'hopf.json'),
                          '--h', sample('z2prime.json'), '--p', str(out / 'projection.json'),
                          '--i', str(out / 'inclusion.json'))
    assert code == 0
    payload = _payload(captured)
    assert payload['result']['dim'] == 2
    assert payload['report']['passed'] is True


def test_cotransmute(capsys):
    code, captured = _run(capsys, '--coeff', 'cyclotomic:2', 'transmute', '--h1', sample('kz2.json'), '--dual')
    assert code == 0
    assert _payload(captured)['command'] == 'transmute --dual'


def test_self_transmutation(capsys):
    code, captured = _run(capsys, '--coeff', 'cyclotomic:3', 'transmute', '--h1', sample('zn3.json'), '--anyonic')
    assert code == 0
    assert _payload(captured)['result']['universal_r_present'] is True


def test_bad_degree_setting(monkeypatch):
    monkeypatch.setenv('BRAIDKIT_DEGREE', 'three')
    with pytest.raises(ValueError):
        load_config()


def test_bad_progress_setting(monkeypatch):
    monkeypatch.setenv('BRAIDKIT_PROGRESS', 'maybe')
    with pytest.raises(ValueError):
        load_config()
