import json

from greensphere.exceptions import InvalidValueException
from greensphere.shr import QueryResult, render


def test_query_ids_increase():
    a = QueryResult('group', (0, 0), 'Z2')
    b = QueryResult('group', (0, 0), 'Z2')
    assert b.QueryID > a.QueryID


def test_json_fields():
    r = QueryResult('mul', (7, 0), 'Z2 + Z/2', ['w[1]', 'w[0]*mu[0,0]*rho[1,0]'], '2*w[1]')
    d = json.loads(r.json)
    assert d['Command'] == 'mul'
    assert d['Bidegree'] == [7, 0]
    assert d['Value'] == '2*w[1]'
    assert d['ErrorNumber'] == 0
    assert QueryResult.from_json(r.json) == r


def test_error_result_has_no_value():
    ex = InvalidValueException('k = 7 is not a topological generator')
    r = QueryResult('group', value='x', err=ex)
    assert not r.ok
    assert r.Value is None
    assert r.ErrorNumber == ex.Number
    assert 'ErrorNumber' in r.text
    assert hex(ex.Number) in r.text


def test_text_leaves_out_empty_fields():
    text = render(QueryResult('res', (7,), 'Z/16', ['ρ_1'], '8*rho[1]'), 'text')
    assert 'Bidegree' in text
    assert '(7)' in text
    assert 'Error' not in text
    assert render(QueryResult('res', (7,)), 'json').startswith('{')
