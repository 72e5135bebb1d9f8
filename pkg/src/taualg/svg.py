"""Deterministic SVG emission for tri-graded charts.

Stems run horizontally, filtration vertically (Adams-chart convention),
one panel per weight stacked top-down from the highest weight.  Output
depends only on the input data: no timestamps, no generated ids.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

CELL = 18
PAD = 36
DOT_COLOR = "#1f3b73"
TORSION_COLOR = "#b03a2e"
GRID_COLOR = "#cccccc"
TEXT_COLOR = "#333333"


def _panel(buf: List[str], x0: int, y0: int, s_max: int, f_max: int,
           title: str, dots: Dict[Tuple[int, int], Tuple[int, str]]):
    width = (s_max + 1) * CELL
    height = (f_max + 1) * CELL
    buf.append(f'<text x="{x0}" y="{y0 - 6}" font-size="11" '
               f'fill="{TEXT_COLOR}">{title}</text>')
    for s in range(s_max + 2):
        x = x0 + s * CELL
        buf.append(f'<line x1="{x}" y1="{y0}" x2="{x}" '
                   f'y2="{y0 + height}" stroke="{GRID_COLOR}" '
                   f'stroke-width="0.5"/>')
    for f in range(f_max + 2):
        y = y0 + f * CELL
        buf.append(f'<line x1="{x0}" y1="{y}" x2="{x0 + width}" '
                   f'y2="{y}" stroke="{GRID_COLOR}" stroke-width="0.5"/>')
    for (s, f) in sorted(dots):
        dim, kind = dots[(s, f)]
        cx = x0 + s * CELL + CELL // 2
        cy = y0 + (f_max - f) * CELL + CELL // 2
        color = TORSION_COLOR if kind == "torsion" else DOT_COLOR
        buf.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="{color}"/>')
        if dim > 1:
            buf.append(f'<text x="{cx + 5}" y="{cy - 4}" font-size="9" '
                       f'fill="{TEXT_COLOR}">{dim}</text>')


def chart_svg(entries: Dict[Tuple[int, int, int], int],
              torsion: Dict[Tuple[int, int, int], bool] = None) -> str:
    """Render (s,f,w) -> dim as one panel per weight.

    torsion marks tri-degrees to draw in the torsion color (e.g. entries
    whose tau-map rank is below their dimension).
    """
    torsion = torsion or {}
    if not entries:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="80" '
                'height="40"><text x="8" y="24" font-size="11">empty '
                'chart</text></svg>')
    weights = sorted({w for (_, _, w) in entries}, reverse=True)
    s_max = max(s for (s, _, _) in entries)
    f_max = max(f for (_, f, _) in entries)
    panel_h = (f_max + 1) * CELL + PAD
    width = (s_max + 1) * CELL + 2 * PAD
    height = panel_h * len(weights) + PAD
    buf = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}">']
    for i, w in enumerate(weights):
        dots: Dict[Tuple[int, int], Tuple[int, str]] = {}
        for (s, f, ww), dim in entries.items():
            if ww == w and dim:
                kind = "torsion" if torsion.get((s, f, ww)) else "free"
                dots[(s, f)] = (dim, kind)
        _panel(buf, PAD, PAD + i * panel_h, s_max, f_max, f"w = {w}", dots)
    buf.append("</svg>")
    return "\n".join(buf) + "\n"
