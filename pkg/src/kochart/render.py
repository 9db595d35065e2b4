"""Deterministic chart rendering: ascii, svg, json, tikz.

The json format round-trips; tikz mirrors the dot-and-line drawing idiom
of the reference charts (solid verticals for multiplication by 2, solid
diagonals for eta, dashed lines for the exotic variants).
"""
from __future__ import annotations

import json as _json

from .chart import (Chart, ChartClass, ETA, H0, KINDS, V14, X2, XETA,
                    normalize_ids)

_EXOTIC = {X2, XETA}


def to_json(chart: Chart, name: str = "") -> str:
    ch = normalize_ids(chart)
    data = {
        "name": name,
        "window": list(ch.window),
        "classes": [{"id": c.id, "x": c.x, "y": c.y, "tag": c.tag}
                    for c in sorted(ch.classes, key=lambda c: c.id)],
        "edges": [{"kind": k, "src": s, "tgt": t}
                  for k, s, t in sorted(ch.edges)],
    }
    return _json.dumps(data, indent=1)


def from_json(text: str) -> Chart:
    data = _json.loads(text)
    classes = frozenset(ChartClass(c["id"], c["x"], c["y"], c.get("tag", ""))
                        for c in data["classes"])
    edges = frozenset((e["kind"], e["src"], e["tgt"]) for e in data["edges"])
    return Chart(classes, edges, tuple(data["window"]))


def to_ascii(chart: Chart) -> str:
    if chart.is_empty():
        lo, hi = chart.window
        axis = "".join("|" if x % 4 == 0 else "-" for x in range(lo, hi + 1))
        labels = _axis_labels(lo, hi)
        return axis + "\n" + labels
    lo, hi = chart.window
    ymax = chart.max_y()
    ymin = min(c.y for c in chart.classes)
    grid = {}
    for c in chart.classes:
        grid[(c.x, c.y)] = "*" if grid.get((c.x, c.y)) else "o"
    ids = chart.by_id()
    marks = {}
    for kind, s, t in chart.edges:
        a, b = ids[s], ids[t]
        if kind in (H0, X2):
            for y in range(a.y + 1, b.y):
                marks.setdefault((a.x, y), "|")
        elif kind in (ETA, XETA):
            marks.setdefault((a.x, a.y), None)
    lines = []
    for y in range(ymax, ymin - 1, -1):
        row = []
        for x in range(lo, hi + 1):
            row.append(grid.get((x, y)) or marks.get((x, y)) or " ")
        lines.append(f"{y:3d} " + "".join(row))
    lines.append("    " + "".join("|" if x % 4 == 0 else "-" for x in range(lo, hi + 1)))
    lines.append("    " + _axis_labels(lo, hi))
    return "\n".join(lines)


def _axis_labels(lo, hi):
    out = [" "] * (hi - lo + 1)
    for x in range(lo, hi + 1):
        if x % 4 == 0:
            s = str(x)
            pos = x - lo
            for i, ch in enumerate(s):
                if pos + i < len(out):
                    out[pos + i] = ch
    return "".join(out)


def to_svg(chart: Chart, scale: int = 12) -> str:
    lo, hi = chart.window
    ymax = chart.max_y() if chart.classes else 1
    ymin = min((c.y for c in chart.classes), default=0)
    w = (hi - lo + 2) * scale
    h = (ymax - ymin + 2) * scale

    def px(x, y):
        return ((x - lo + 1) * scale, (ymax - y + 1) * scale)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">']
    ids = chart.by_id()
    for kind, s, t in sorted(chart.edges):
        (x1, y1), (x2, y2) = px(ids[s].x, ids[s].y), px(ids[t].x, ids[t].y)
        dash = ' stroke-dasharray="3,2"' if kind in _EXOTIC else ""
        color = {"v14": "#999999"}.get(kind, "#000000")
        parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                     f'stroke="{color}"{dash}/>')
    for c in sorted(chart.classes, key=lambda c: (c.x, c.y, c.id)):
        x, y = px(c.x, c.y)
        parts.append(f'<circle cx="{x}" cy="{y}" r="2.4" fill="#000000"/>')
    for x in range(lo - lo % 4, hi + 1, 4):
        xx, yy = px(x, ymin)
        parts.append(f'<text x="{xx}" y="{yy + scale}" font-size="8" '
                     f'text-anchor="middle">{x}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def to_tikz(chart: Chart, scale: float = 0.4) -> str:
    lines = [f"\\begin{{tikzpicture}}[scale={scale}]"]
    ids = chart.by_id()
    for kind, s, t in sorted(chart.edges):
        a, b = ids[s], ids[t]
        style = " [dashed]" if kind in _EXOTIC else (
            " [gray]" if kind == V14 else "")
        lines.append(f"\\draw{style} ({a.x},{a.y}) -- ({b.x},{b.y});")
    for c in sorted(chart.classes, key=lambda c: (c.x, c.y, c.id)):
        lines.append(f"\\fill ({c.x},{c.y}) circle (0.12);")
    lo, hi = chart.window
    lines.append(f"\\draw ({lo - 0.5},-0.8) -- ({hi + 0.5},-0.8);")
    for x in range(lo - lo % 4, hi + 1, 4):
        lines.append(f"\\node at ({x},-1.4) {{${x}$}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines)


def render(chart: Chart, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return to_ascii(chart)
    if fmt == "svg":
        return to_svg(chart)
    if fmt == "json":
        return to_json(chart)
    if fmt == "tikz":
        return to_tikz(chart)
    raise ValueError(f"unknown format {fmt!r}")
