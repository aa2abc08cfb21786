import json

import pytest

from greensphere import verify
from greensphere.app import EXIT_ENGINE, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, build_parser, run


@pytest.fixture
def cli(tmp_path, capsys):
    """Run the command line with logs under tmp_path; returns (exit code, stdout)"""
    def invoke(*argv):
        code = run(['--log-dir', str(tmp_path)] + list(argv))
        return code, capsys.readouterr().out
    return invoke


def test_mul(cli):
    code, out = cli('--format', 'json', 'mul', 'w[0]*w[0]*eta[1]')
    assert code == EXIT_OK
    d = json.loads(out)
    assert d['Value'] == '2*w[1]'
    assert d['Bidegree'] == [7, 0]


def test_transfer(cli):
    code, out = cli('--format', 'json', 'tr', '1', '1')
    assert code == EXIT_OK
    assert json.loads(out)['Value'] == 'w[0]*mu[0,0]'


def test_restriction(cli):
    code, out = cli('--format', 'json', 'res', 'w[1]')
    assert code == EXIT_OK
    d = json.loads(out)
    assert d['Value'] == '8*rho[1]'
    assert d['Group'] == 'Z/16'


def test_classical_group_text(cli):
    code, out = cli('group', '3', '0', '--ring', 'classical')
    assert code == EXIT_OK
    assert 'Z/8' in out
    assert 'ξ_0' in out


def test_parse_error(cli):
    code, out = cli('--format', 'json', 'mul', 'w[0')
    assert code == EXIT_PARSE
    d = json.loads(out)
    assert d['Value'] is None
    assert d['ErrorNumber'] != 0


def test_bad_generator_k(cli):
    code, _ = cli('--k', '7', 'group', '0', '0')
    assert code == EXIT_ENGINE


def test_corrupted_tables(cli, tmp_path, monkeypatch, fresh_tables):
    path = tmp_path / 'tables.toml'
    path.write_text('version = 99\n')
    monkeypatch.setenv('GREENSPHERE_TABLES', str(path))
    code, _ = cli('mul', 'w[0]')
    assert code == EXIT_PARSE


def test_chart_to_file(cli, tmp_path):
    target = tmp_path / 'ku.txt'
    code, out = cli('--window', '2', '--out', str(target), 'chart', '--ring', 'ku')
    assert code == EXIT_OK
    assert out == ''
    assert '●' in target.read_text(encoding='utf-8')


def test_verify(cli):
    code, out = cli('verify', '--suites', 'hfpss', '--window', '1')
    assert code == EXIT_OK
    assert out.strip().endswith('OK')


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args(['frobnicate'])


def test_verify_with_corrupted_tables(cli, tmp_path, monkeypatch, fresh_tables):
    path = tmp_path / 'tables.toml'
    path.write_text('version = 99\n')
    monkeypatch.setenv('GREENSPHERE_TABLES', str(path))
    code, out = cli('verify', '--window', '1', '--suites', 'transfers', 'restriction')
    assert code == EXIT_PARSE
    assert out == ''


def test_verify_writes_its_own_log(cli, tmp_path):
    code, _ = cli('verify', '--suites', 'transfers', '--window', '1')
    assert code == EXIT_OK
    text = (tmp_path / 'verify.log').read_text(encoding='utf-8')
    assert '[verify] transfers: 9 checked, 0 failed' in text
    assert '[tables]' not in text


def test_verify_log_lists_failing_checks(cli, tmp_path, monkeypatch):
    monkeypatch.setitem(verify._BUILDERS, 'orders', lambda w: [('broken', lambda: 'bad')])
    code, out = cli('verify', '--suites', 'orders', '--window', '1')
    assert code == EXIT_MISMATCH
    assert 'MISMATCH' in out
    text = (tmp_path / 'verify.log').read_text(encoding='utf-8')
    assert 'WARNING [verify] orders broken: bad' in text
