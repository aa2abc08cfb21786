from fractions import Fraction

import pytest

from greensphere.exceptions import ExpressionParseException
from greensphere.expr import Expression, Linear, parse, parse_index, tokenize


def test_tokenize():
    assert tokenize('w[0]*2') == [('NAME', 'w'), ('SYM', '['), ('INT', '0'), ('SYM', ']'),
                                  ('SYM', '*'), ('INT', '2')]


def test_tokenize_rejects_unknown_characters():
    with pytest.raises(ExpressionParseException):
        tokenize('w[0] & eta[1]')


def test_parse_index():
    lin = parse_index('8a-1')
    assert lin == Linear(Fraction(-1), (('a', Fraction(8)),))
    assert str(lin) == '8a-1'
    assert lin.evaluate({'a': 2}) == 15
    assert parse_index('1/2').evaluate({}) == Fraction(1, 2)


def test_index_needs_its_variables():
    with pytest.raises(ExpressionParseException):
        parse_index('2a+1').evaluate({})


def test_variables_in_order_of_appearance():
    assert Expression('w[a]*eta[b]*w[a+b]').variables() == ('a', 'b')
    assert Expression('2^j(4c)').variables() == ('c',)


def test_monomial():
    x = Expression('w[0]^2*eta[a]')
    assert x.monomial({'a': 1}) == [('w', (0,)), ('w', (0,)), ('eta', (1,))]
    assert Expression('1*tauh[1]').monomial({}) == [('tauh', (1,))]


@pytest.mark.parametrize('text', ['2*w[0]', 'w[0]+w[1]', '-w[0]'])
def test_monomial_rejects_scalars_and_sums(text):
    with pytest.raises(ExpressionParseException):
        Expression(text).monomial({})


@pytest.mark.parametrize('text', ['', '   ', '3^2', 'j(1)', 'w[0] w[1]', 'w[0', 'w[0]^0', '(1+2'])
def test_parse_errors(text):
    with pytest.raises(ExpressionParseException):
        parse(text)


@pytest.mark.parametrize('text, value', [
    ('3 - 1', 2),
    ('2*(1+3)', 8),
    ('2^j(4)', 32),
    ('2^(j(1)-1)', 4),
    ('2^j(0)', 0),
    ('2^3', 8),
    ('u(1,2)', 9),
])
def test_scalar_evaluation(text, value):
    assert parse(text).evaluate(None) == value


def test_negative_infinite_exponent():
    with pytest.raises(ExpressionParseException):
        parse('2^(3-j(0))').evaluate(None)


def test_scalar_exponent_variables():
    assert parse('2^j(a)').evaluate(None, {'a': 6}) == 16


def test_atoms_keep_index_expressions():
    atoms = Expression('w[0]^2*rho[a-1,b]').atoms()
    assert [name for name, _ in atoms] == ['w', 'w', 'rho']
    assert [str(i) for i in atoms[2][1]] == ['a-1', 'b']
    assert Expression('1').atoms() == []
