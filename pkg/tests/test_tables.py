import pytest

from greensphere.exceptions import TableFormatException
from greensphere.tables import Pattern, Where, load_tables, parse_tables

MINIMAL = '''
version = 1

[[additive]]
s = "0"
c = "0"
words = ["1"]
relations = []
images = ["1"]
'''


def test_packaged_tables(fresh_tables):
    tables = load_tables()
    assert tables.version == 1
    assert len(tables.additive) == 37
    assert len(tables.products) == 48
    assert len(tables.rewrites) == 37
    assert len(tables.generators) == 7
    assert len(tables.transfers) == 28
    assert len(tables.unit) == 7
    assert load_tables() is tables


def test_additive_rows_at_the_origin(fresh_tables):
    rows = [row for row, _ in load_tables().additive_rows(0, 0)]
    assert any(row.words[0].text == '1' for row in rows)


def test_generator_lookup(fresh_tables):
    tables = load_tables()
    assert tables.generator('w').name == 'w'
    with pytest.raises(TableFormatException):
        tables.generator('nope')


def test_pattern_match():
    p = Pattern.parse('8a-1')
    assert p.match(15, {}) == {'a': 2}
    assert p.match(14, {}) is None
    assert p.match(7, {'a': 1}) == {'a': 1}
    assert p.match(15, {'a': 1}) is None
    assert Pattern.parse('0').match(0, {}) == {}


@pytest.mark.parametrize('text', ['a+b', '1/2a'])
def test_bad_patterns(text):
    with pytest.raises(TableFormatException):
        Pattern.parse(text)


def test_where():
    assert Where.parse(None) is None
    w = Where.parse('a != 0')
    assert w.holds({'a': 1})
    assert not w.holds({'a': 0})
    assert Where.parse('b == -2').holds({'b': -2})
    with pytest.raises(TableFormatException):
        Where.parse('a < 0')


def test_version_mismatch():
    with pytest.raises(TableFormatException):
        parse_tables({'version': 2, 'additive': []})


def test_no_additive_records():
    with pytest.raises(TableFormatException):
        parse_tables({'version': 1})


def test_missing_field():
    with pytest.raises(TableFormatException):
        parse_tables({'version': 1, 'additive': [{'s': '0', 'c': '0', 'words': ['1'], 'relations': []}]})


def test_image_count_must_match_words():
    rec = {'s': '0', 'c': '0', 'words': ['1'], 'relations': [], 'images': ['1', '1']}
    with pytest.raises(TableFormatException):
        parse_tables({'version': 1, 'additive': [rec]})


def test_bad_expression_in_a_record():
    rec = {'s': '0', 'c': '0', 'words': ['w[0'], 'relations': [], 'images': ['1']}
    with pytest.raises(TableFormatException):
        parse_tables({'version': 1, 'additive': [rec]})


def test_explicit_path_replaces_the_cache(tmp_path, fresh_tables):
    path = tmp_path / 'tables.toml'
    path.write_text(MINIMAL)
    tables = load_tables(str(path))
    assert len(tables.additive) == 1
    assert load_tables() is tables


def test_unreadable_file(tmp_path, fresh_tables):
    path = tmp_path / 'broken.toml'
    path.write_text('version = = 1')
    with pytest.raises(TableFormatException):
        load_tables(str(path))
    with pytest.raises(TableFormatException):
        load_tables(str(tmp_path / 'missing.toml'))


def _with_product(**rec):
    return {'version': 1, 'additive': [{'s': '0', 'c': '0', 'words': ['1'], 'relations': [], 'images': ['1']}],
            'products': [rec]}


def test_rewrite_rows_keep_their_lhs_patterns():
    tables = parse_tables(_with_product(lhs='w[0]^2*eta[a]', rhs='2*w[a]'))
    row = tables.products[0]
    assert row.rewrite
    assert [(name, tuple(p.text for p in pats)) for name, pats in row.pattern] == \
        [('w', ('0',)), ('w', ('0',)), ('eta', ('a',))]
    assert tables.rewrites == (row,)


def test_relation_rows_are_not_rewrites():
    tables = parse_tables(_with_product(lhs='w[a+b]*w[c]', rhs='w[a]*w[b+c]', rewrite=False))
    assert not tables.products[0].rewrite
    assert tables.products[0].pattern == ()
    assert tables.rewrites == ()


@pytest.mark.parametrize('lhs', ['2*w[a]', 'w[a]+eta[a]', 'w[a+b]*eta[c]'])
def test_rewrite_lhs_must_be_a_pattern_product(lhs):
    with pytest.raises(TableFormatException):
        parse_tables(_with_product(lhs=lhs, rhs='0'))


def test_rewrite_flag_must_be_boolean():
    with pytest.raises(TableFormatException):
        parse_tables(_with_product(lhs='w[a]', rhs='w[a]', rewrite='no'))
