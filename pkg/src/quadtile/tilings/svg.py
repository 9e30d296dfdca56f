"""Schematic SVG nets.

Tiles ``2i`` and ``2i + 1`` form strip ``i`` (a timezone for earth maps),
drawn as two stacked squares.  Corner labels follow the tile orientation,
b-edges are stroked heavier and a ``-`` marks clockwise tiles.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .model import CCW_LABELS, Orientation, TilingMap, edge_type

CELL = 60
PAD = 20
GREEK = "αβγδ"
_WIDTH = {"a": 1.0, "b": 3.0, "c": 2.0}
# square corners counterclockwise on screen (y grows downwards)
_SQUARE = ((0, 0), (0, 1), (1, 1), (1, 0))


def render_svg(m: TilingMap) -> str:
    tiles = sorted(m.tiles, key=lambda t: t.id)
    strips = (len(tiles) + 1) // 2
    width = 2 * PAD + strips * CELL
    height = 2 * PAD + 2 * CELL + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="9">',
        f'<title>{escape(m.name or "tiling")} f={m.f}</title>',
    ]
    for idx, t in enumerate(tiles):
        x0 = PAD + (idx // 2) * CELL
        y0 = PAD + (idx % 2) * CELL
        pts = [(x0 + dx * CELL, y0 + dy * CELL) for dx, dy in _SQUARE]
        labels = CCW_LABELS[t.orientation]
        for i in range(4):
            (xa, ya), (xb, yb) = pts[i], pts[(i + 1) % 4]
            kind = edge_type(m.tile_kind, labels[i], labels[(i + 1) % 4])
            out.append(
                f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" stroke="black" '
                f'stroke-width="{_WIDTH[kind]}" data-edge="{kind}"/>'
            )
        cx, cy = x0 + CELL / 2, y0 + CELL / 2
        for i in range(4):
            px, py = pts[i]
            lx, ly = px + (cx - px) * 0.3, py + (cy - py) * 0.3 + 3
            label = labels[i]
            out.append(f'<text x="{lx:.1f}" y="{ly:.1f}" text-anchor="middle">{GREEK[label]}{t.corners[label]}</text>')
        mark = "-" if t.orientation is Orientation.CW else ""
        out.append(f'<text x="{cx}" y="{cy + 3}" text-anchor="middle">{t.id}{mark}</text>')
    out.append(
        f'<text x="{PAD}" y="{height - 8}">a: thin, b: heavy'
        + (", c: medium" if m.tile_kind.value == "a2bc" else "")
        + "; '-' marks clockwise tiles</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
