"""Fixture charts transcribed from the reference drawings, with the
comparison helpers the verification suites use.

A fixture may carry a ``filtration_correction``: some drawings place a
family of classes a constant number of rows low to save vertical space,
and the comparison lifts unmatched fixture classes by that amount before
judging.
"""
from __future__ import annotations

import json
from collections import Counter
from importlib import resources

from .chart import Chart, ChartClass

_FIXDIR = resources.files(__package__) / "fixtures"


def fixture_names():
    return sorted(p.name[:-5] for p in _FIXDIR.iterdir()
                  if p.name.endswith(".json"))


def load_fixture(name: str):
    data = json.loads((_FIXDIR / f"{name}.json").read_text())
    classes = frozenset(ChartClass(c["id"], c["x"], c["y"], c.get("tag", ""))
                        for c in data["classes"])
    edges = frozenset((e["kind"], e["src"], e["tgt"]) for e in data["edges"])
    chart = Chart(classes, edges, tuple(data["window"]))
    return chart, data


def class_multiset(chart: Chart, lo=None, hi=None):
    out = Counter()
    for c in chart.classes:
        if (lo is None or c.x >= lo) and (hi is None or c.x <= hi):
            out[(c.x, c.y)] += 1
    return out


def edge_families(chart: Chart, lo=None, hi=None):
    ids = chart.by_id()
    out = Counter()
    for kind, s, t in chart.edges:
        if kind == "v14":
            continue
        a, b = ids[s], ids[t]
        if lo is not None and (a.x < lo or b.x < lo):
            continue
        if hi is not None and (a.x > hi or b.x > hi):
            continue
        fam = "2" if kind in ("h0", "x2") else "e"
        out[(fam, a.x, a.y, b.x, b.y)] += 1
    return out


def matches_fixture(chart: Chart, name: str, check_edges: bool = True) -> bool:
    """Class-for-class (and optionally edge-for-edge) agreement with a
    fixture, within the fixture's window and up to its declared
    filtration correction."""
    fix, data = load_fixture(name)
    lo, hi = fix.window
    got = class_multiset(chart, lo, hi)
    want = class_multiset(fix)
    shift = data.get("filtration_correction", 0)
    only_want = want - got
    only_got = got - want
    if shift:
        lifted = Counter({(x, y + shift): m for (x, y), m in only_want.items()})
        rem = only_got - lifted
        rem2 = lifted - only_got
        if rem or rem2:
            return False
    elif only_want or only_got:
        return False
    if check_edges and not shift:
        if edge_families(chart, lo, hi) != edge_families(fix):
            return False
    return True


def fixture_diff(chart: Chart, name: str):
    fix, data = load_fixture(name)
    lo, hi = fix.window
    got = class_multiset(chart, lo, hi)
    want = class_multiset(fix)
    return (sorted((want - got).elements()), sorted((got - want).elements()))
