import json
from pathlib import Path

import pytest

from greensphere.app import EXIT_OK, run
from greensphere.charts import ChartSpec, build_chart, glyphs, render
from greensphere.exceptions import InvalidValueException
from greensphere.modlin import FGModule


def test_glyphs():
    assert glyphs(FGModule(1, (1, 3, 5))) == ['●', '·', '◆', '[32]']
    assert glyphs(FGModule()) == []


def test_unknown_ring_or_format():
    with pytest.raises(InvalidValueException):
        ChartSpec('tmf', (0, 1), (0, 1))
    with pytest.raises(InvalidValueException):
        ChartSpec('ku', (0, 1), (0, 1), 'png')


def test_square_and_axes():
    spec = ChartSpec.square('ku', 2)
    assert spec.stems == [-2, -1, 0, 1, 2]
    assert spec.coweights == [2, 1, 0, -1, -2]


def test_sphere_text_chart():
    text = render(ChartSpec('sphere', (-1, 1), (0, 0)))
    lines = text.split('\n')
    assert lines[0].startswith(' 0 |')
    assert '●·' in lines[0]
    assert lines[-1].split() == ['-1', '0', '1']


def test_sphere_w0_connectors():
    chart = build_chart(ChartSpec('sphere', (-1, 1), (0, 0)))
    assert (0, 0) in chart.connectors
    # the leftmost stem has nowhere to connect to
    assert all(s > -1 for s, _ in chart.connectors)


def test_ku_odd_rows_are_empty():
    lines = render(ChartSpec('ku', (-2, 2), (-1, 1))).split('\n')
    assert lines[0].endswith('|')
    assert lines[2].endswith('|')
    assert '●' in lines[1]


def test_empty_range():
    assert render(ChartSpec('ku', (1, 0), (0, 0))) == ''


def test_mackey_chart_draws_the_bottom_row():
    lines = render(ChartSpec('mackey', (-1, 1), (0, 0))).split('\n')
    assert lines[-1].startswith('res |')
    assert build_chart(ChartSpec('mackey', (-1, 1), (0, 0))).bottoms[1].invariants == (0, (1, 1))


def test_json_chart():
    d = json.loads(render(ChartSpec('ko', (0, 1), (0, 1), 'json')))
    assert d['ring'] == 'ko'
    origin = next(cell for cell in d['cells'] if (cell['s'], cell['c']) == (0, 0))
    assert origin['glyphs'] == ['●', '●']
    assert origin['group']['basis'] == ['1', 'ρη₀']


def test_svg_chart():
    svg = render(ChartSpec('sphere', (-1, 1), (0, 0), 'svg'))
    assert svg.startswith('<?xml')
    assert '<svg ' in svg
    assert 'circle' in svg
    assert 'stroke="#1f5fbf"' in svg


GOLDEN = Path(__file__).parent / 'golden'
FIGURE_STEMS = (-2, 8)
FIGURE_COWEIGHTS = (-1, 8)


@pytest.mark.parametrize('ring', ['ku', 'e2', 'ko', 'sphere'])
def test_figure_matches_golden(ring):
    expected = (GOLDEN / f'{ring}.txt').read_text(encoding='utf-8')
    assert render(ChartSpec(ring, FIGURE_STEMS, FIGURE_COWEIGHTS)) + '\n' == expected


@pytest.mark.parametrize('ring', ['ku', 'sphere'])
def test_chart_out_file_is_byte_identical(ring, tmp_path):
    out = tmp_path / f'{ring}.txt'
    code = run(['--log-dir', str(tmp_path), '--format', 'text', 'chart', '--ring', ring,
                '--srange', *map(str, FIGURE_STEMS), '--crange', *map(str, FIGURE_COWEIGHTS),
                '--out', str(out)])
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / f'{ring}.txt').read_bytes()
