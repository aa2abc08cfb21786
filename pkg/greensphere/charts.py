# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# charts.py - Text, JSON and SVG charts of the graded groups
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 09-Oct-2026   gsd 0.1 Text grid with one glyph per cyclic summand
# 11-Oct-2026   gsd 0.2 SVG 1.1 output, blue w[0] connectors
# 13-Oct-2026   gsd 0.3 e2 and mackey rings
#
import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .classical_sphere import s_group
from .config import Config
from .exceptions import InvalidValueException
from .green_sphere import W0, basis_words, group, normalize
from .ko_ring import e2_page, ko_group
from .ku_ring import ku_group
from .modlin import FGModule

logger = logging.getLogger("greensphere")

RINGS = ('ku', 'e2', 'ko', 'sphere', 'mackey')
FORMATS = ('text', 'json', 'svg')

# E2 filtrations summed into one cell
E2_FILTRATIONS = range(0, 4)

ns_svg = 'http://www.w3.org/2000/svg'
CONNECTOR = '#1f5fbf'


@dataclass(frozen=True)
class ChartSpec:
    """Which ring, over s in s_range and c in c_range (inclusive). A range with
    lo > hi is empty.
    """
    ring: str
    s_range: Tuple[int, int]
    c_range: Tuple[int, int]
    format: str = 'text'

    def __post_init__(self):
        if self.ring not in RINGS:
            raise InvalidValueException(f'unknown ring {self.ring}; known: {", ".join(RINGS)}')
        if self.format not in FORMATS:
            raise InvalidValueException(f'unknown chart format {self.format}')

    @staticmethod
    def square(ring: str, window: int, format: str = 'text') -> 'ChartSpec':
        return ChartSpec(ring, (-window, window), (-window, window), format)

    @property
    def stems(self) -> List[int]:
        return list(range(self.s_range[0], self.s_range[1] + 1))

    @property
    def coweights(self) -> List[int]:
        """Descending, the order rows are drawn in"""
        return list(range(self.c_range[1], self.c_range[0] - 1, -1))


# ------
# Glyphs
# ------

def glyphs(m: FGModule) -> List[str]:
    out = ['●'] * m.free_rank
    for e in m.torsion:
        out.append({1: '·', 3: '◆'}.get(e, f'[{2 ** e}]'))
    return out


def _sum(modules: List[FGModule]) -> FGModule:
    return FGModule(free_rank=sum(m.free_rank for m in modules),
                    torsion=tuple(e for m in modules for e in m.torsion))


def cell_group(ring: str, s: int, c: int) -> FGModule:
    if ring == 'ku':
        return ku_group(s, c)
    if ring == 'e2':
        return _sum([e2_page(s, c, n) for n in E2_FILTRATIONS])
    if ring == 'ko':
        return ko_group(s, c)
    if ring == 'sphere':
        return group(s, c)
    # mackey: the top level here, the bottom level is drawn beside it
    return group(s, c)


def _bottom(ring: str, s: int) -> Optional[FGModule]:
    return s_group(s, 0) if ring == 'mackey' else None


def _w0_nonzero(s: int, c: int) -> bool:
    return any(not normalize(w + (W0,)).is_zero() for w in basis_words(s, c))


@dataclass
class Chart:
    spec: ChartSpec
    cells: Dict[Tuple[int, int], FGModule]
    bottoms: Dict[int, FGModule]
    connectors: List[Tuple[int, int]]


def build_chart(spec: ChartSpec) -> Chart:
    cells = {}
    bottoms = {}
    connectors = []
    for c in spec.coweights:
        for s in spec.stems:
            m = cell_group(spec.ring, s, c)
            if not m.is_zero():
                cells[(s, c)] = m
            if spec.ring in ('sphere', 'mackey') and s - 1 >= spec.s_range[0] and _w0_nonzero(s, c):
                connectors.append((s, c))
    for s in spec.stems:
        b = _bottom(spec.ring, s)
        if b is not None and not b.is_zero():
            bottoms[s] = b
    logger.debug(f'[chart] {spec.ring}: {len(cells)} nonzero cells, {len(connectors)} w[0] connectors')
    return Chart(spec, cells, bottoms, connectors)


# ---------
# Renderers
# ---------

def _text_cell(chart: Chart, s: int, c: int) -> str:
    m = chart.cells.get((s, c))
    return ''.join(glyphs(m)) if m is not None else ''


def render_text(chart: Chart) -> str:
    spec = chart.spec
    if not spec.stems or not spec.coweights:
        return ''
    width = max([3] + [len(_text_cell(chart, s, c)) + 1 for s in spec.stems for c in spec.coweights])
    label = max(len(str(c)) for c in spec.coweights) + 1
    lines = []
    for c in spec.coweights:
        row = ''.join(_text_cell(chart, s, c).rjust(width) for s in spec.stems)
        lines.append(f'{c:>{label}} |{row}')
    lines.append(' ' * label + ' +' + '-' * (width * len(spec.stems)))
    lines.append(' ' * (label + 2) + ''.join(str(s).rjust(width) for s in spec.stems))
    if chart.bottoms:
        row = ''.join((''.join(glyphs(chart.bottoms[s])) if s in chart.bottoms else '').rjust(width)
                      for s in spec.stems)
        lines.append('res'.rjust(label) + ' |' + row)
    return '\n'.join(line.rstrip() for line in lines)


def chart_dict(chart: Chart) -> dict:
    spec = chart.spec
    return {
        'ring': spec.ring,
        's': list(spec.s_range),
        'c': list(spec.c_range),
        'cells': [{'s': s, 'c': c, 'group': m.to_dict(), 'glyphs': glyphs(m)}
                  for (s, c), m in sorted(chart.cells.items())],
        'bottom': [{'s': s, 'group': m.to_dict()} for s, m in sorted(chart.bottoms.items())],
        'w0': [[s, c] for s, c in chart.connectors],
    }


def render_json(chart: Chart) -> str:
    return json.dumps(chart_dict(chart), ensure_ascii=False, indent=2)


def _props(d: dict) -> str:
    return ' '.join(f'{k.replace("_", "-")}="{v}"' for k, v in d.items())


def _tag(tag: str, inner: str = None, **attr) -> str:
    props = _props(attr)
    if inner is None:
        return f'<{tag} {props} />'
    return f'<{tag} {props}>{inner}</{tag}>'


def _svg_glyph(glyph: str, x: float, y: float, r: float) -> str:
    if glyph == '●':
        return _tag('circle', cx=x, cy=y, r=r, fill='black')
    if glyph == '·':
        return _tag('circle', cx=x, cy=y, r=r / 2, fill='black')
    if glyph == '◆':
        points = f'{x},{y - r} {x + r},{y} {x},{y + r} {x - r},{y}'
        return _tag('polygon', points=points, fill='black')
    return (_tag('rect', x=x - 1.6 * r, y=y - r, width=3.2 * r, height=2 * r, fill='white', stroke='black')
            + _tag('text', glyph.strip('[]'), x=x, y=y + r / 2, font_size=r * 1.2, text_anchor='middle'))


def render_svg(chart: Chart) -> str:
    spec = chart.spec
    cell = Config.chart_cell or 24
    stems, rows = spec.stems, spec.coweights
    width = (len(stems) + 1) * cell
    height = (len(rows) + 1) * cell + (cell if chart.bottoms else 0)

    def centre(s, c):
        return ((stems.index(s) + 1.5) * cell, (rows.index(c) + 0.5) * cell)

    body = []
    for s, c in chart.connectors:
        (x1, y1), (x2, y2) = centre(s, c), centre(s - 1, c)
        body.append(_tag('line', x1=x1, y1=y1, x2=x2, y2=y2, stroke=CONNECTOR, stroke_width=1.5))
    for (s, c), m in sorted(chart.cells.items()):
        x, y = centre(s, c)
        gs = glyphs(m)
        step = cell / (len(gs) + 1)
        for i, gl in enumerate(gs):
            body.append(_svg_glyph(gl, x - cell / 2 + (i + 1) * step, y, cell / 8))
    for i, s in enumerate(stems):
        body.append(_tag('text', str(s), x=(i + 1.5) * cell, y=(len(rows) + 0.75) * cell,
                         font_size=cell / 3, text_anchor='middle'))
    for j, c in enumerate(rows):
        body.append(_tag('text', str(c), x=cell / 2, y=(j + 0.6) * cell, font_size=cell / 3, text_anchor='middle'))
    for s, m in sorted(chart.bottoms.items()):
        x, y = (stems.index(s) + 1.5) * cell, (len(rows) + 1.5) * cell
        gs = glyphs(m)
        step = cell / (len(gs) + 1)
        for i, gl in enumerate(gs):
            body.append(_svg_glyph(gl, x - cell / 2 + (i + 1) * step, y, cell / 8))
    inner = '\n' + '\n'.join(body) + '\n'
    return ('<?xml version="1.0" encoding="UTF-8"?>\n'
            + _tag('svg', inner, width=width, height=height, version='1.1', xmlns=ns_svg))


RENDERERS = {'text': render_text, 'json': render_json, 'svg': render_svg}


def render(spec: ChartSpec) -> str:
    return RENDERERS[spec.format](build_chart(spec))
