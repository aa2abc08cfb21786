import pytest

from greensphere import verify
from greensphere.config import Config
from greensphere.exceptions import InvalidValueException, TableFormatException, VerificationFailure
from greensphere.tables import load_tables
from greensphere.verify import SUITES, Report, run_suites, select_suites, verify_axioms, verify_descent


def test_select_all():
    assert select_suites(['all']) == list(SUITES)
    assert select_suites(['ko', 'all']) == ['ko'] + [s for s in SUITES if s != 'ko']
    assert select_suites(['e2', 'e2']) == ['e2']


def test_unknown_suite():
    with pytest.raises(VerificationFailure):
        select_suites(['nope'])


def test_report_collects_failures():
    report = Report()
    report.record('e2', '(0,0)', None)
    report.record('e2', '(1,0)', 'mismatch')
    assert not report.ok
    assert report.failures == ['[e2] (1,0): mismatch']
    assert report.to_dict() == {'e2': {'checked': 2, 'failures': ['(1,0): mismatch']}}


def test_report_truncates():
    report = Report()
    for i in range(5):
        report.record('ko', str(i), 'bad')
    lines = report.lines(max_report=2)
    assert lines[-1] == '... 3 more failures'
    assert len(lines) == 4


def test_descent_suite(fresh_tables):
    report = run_suites(['hfpss'], 1)
    assert report.ok, report.failures
    assert report.results['hfpss'].checked == 9


def test_spectral_sequence_suites():
    report = run_suites(['e2', 'd3', 'ko'], 1)
    assert report.ok, report.failures
    assert set(report.results) == {'e2', 'd3', 'ko'}


def test_descent_over_a_window(fresh_tables):
    report = verify_descent(0)
    assert report.ok
    assert report.results['hfpss'].checked == 1


def test_a_crashed_check_fails_the_report(monkeypatch):
    monkeypatch.setitem(verify._BUILDERS, 'orders', lambda w: [('divide', lambda: 1 // 0)])
    report = run_suites(['orders'], 1)
    assert not report.ok
    assert report.results['orders'].checked == 1
    assert 'ZeroDivisionError' in report.failures[0]


def test_engine_exceptions_in_checks_are_failures(monkeypatch):
    def fail():
        raise InvalidValueException('out of range')
    monkeypatch.setitem(verify._BUILDERS, 'orders', lambda w: [('raise', fail)])
    report = run_suites(['orders'], 1)
    assert report.failures == ['[orders] raise: InvalidValueException: out of range']


def test_damaged_tables_raise_before_any_check(tmp_path, monkeypatch, fresh_tables):
    path = tmp_path / 'tables.toml'
    path.write_text('version = 99\n')
    monkeypatch.setenv('GREENSPHERE_TABLES', str(path))
    with pytest.raises(TableFormatException):
        run_suites(['transfers', 'restriction'], 1)


def test_closure_range_default():
    assert Config.closure_range == 2


def test_closure_suite(monkeypatch):
    monkeypatch.setattr(Config, 'closure_range', 0)
    report = run_suites(['closure'], 0)
    assert report.ok, report.failures
    # w[0], eta[0] and the four two-index families at (0,0)
    assert report.results['closure'].checked == 56


@pytest.mark.slow
def test_closure_suite_at_the_default_range():
    report = run_suites(['closure'], 0)
    assert report.ok, report.failures[:10]


def test_products_suite(fresh_tables):
    report = run_suites(['products'], 0)
    assert report.ok, report.failures[:10]
    r = Config.product_range
    expected = sum((2 * r + 1) ** len(row.variables) for row in load_tables().products)
    assert report.results['products'].checked == expected


def test_axioms_suite(monkeypatch):
    monkeypatch.setattr(Config, 'closure_range', 0)
    report = verify_axioms(1)
    assert report.ok, report.failures[:10]
    assert set(report.results) == {'closure', 'axioms', 'restriction', 'transfers'}
    # Mackey and Weyl per bidegree, Frobenius per generator and bidegree
    assert report.results['axioms'].checked == 2 * 9 + 6 * 9


def test_transfers_suite():
    report = run_suites(['transfers'], 1)
    assert report.ok, report.failures
    assert report.results['transfers'].checked == 9


def test_divisibility_suite():
    report = run_suites(['divisibility'], 0)
    assert report.ok, report.failures
    labels = 13 + 16 + 25     # divisible n <= 12, |KO(P_1^n)| n <= 16, Picard |n| <= 12
    assert report.results['divisibility'].checked == labels


def test_orders_suite():
    report = run_suites(['orders'], 2)
    assert report.ok, report.failures
    assert report.results['orders'].checked == 4


def test_subring_suite():
    report = run_suites(['subring'], 1)
    assert report.ok, report.failures
    # eta0^3 eta[a] = w0^3 w[a+1] for a in [-3, 3], then closure on stems [-1, 1]
    assert report.results['subring'].checked == 7 + 6
