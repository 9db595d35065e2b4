"""Constructors for the named chart families.

The M-charts are the basic building blocks (truncated-projective-space
style); V/I/L/K realize the edge summands; the starred constructors give
their cohomological counterparts.  All constructors truncate at a maximal
grading and, where a pattern dips below filtration 0, at filtration 0 --
towers lose their negative-filtration part exactly as the homology charts
do.
"""
from __future__ import annotations

from .chart import (Chart, ChartClass, ChartError, ETA, H0, V14, X2, XETA,
                    _fresh_id, phi, suspend)


def _bottom_gens(chart):
    """Mark every 2-chain bottom as a birth generator (constructors whose
    chains are their birth chains)."""
    from dataclasses import replace
    bottoms = {ch[0].id for ch in chart.two_chains()}
    cl = frozenset(replace(c, gen=c.id in bottoms) for c in chart.classes)
    return Chart(cl, chart.edges, chart.window)


def _mk(classes, edges_xy, window):
    """Build a chart from (x, y, tag, eta, gen) tuples and coordinate edges."""
    by_xy = {}
    cl = []
    for x, y, tag, eta, *rest in classes:
        gen = rest[0] if rest else False
        c = ChartClass(_fresh_id(), x, y, tag, eta, gen)
        cl.append(c)
        by_xy[(x, y)] = c
    edges = set()
    for kind, a, b in edges_xy:
        if a in by_xy and b in by_xy:
            edges.add((kind, by_xy[a].id, by_xy[b].id))
    return Chart(frozenset(cl), frozenset(edges), window).validate()


def _m_columns(k, x_max):
    """Raw column data of the untruncated chart M_k^0.

    Yields (x, [filtrations bottom..top], generator_flag) where the
    generator flag marks the module generator of the column (the only
    class eta can act on nontrivially besides the 1- and 2-columns).
    """
    cols = []
    i = 0
    while 8 * i + 1 <= x_max:
        b3 = 4 * i - k + 5
        b7 = 4 * i - k + 8
        cols.append((8 * i + 1, [4 * i], True))
        cols.append((8 * i + 2, [4 * i + 1], True))
        cols.append((8 * i + 3, list(range(max(b3, 0), 4 * i + 3)), b3 >= 0))
        if 4 * i - k + 6 >= 0:
            cols.append((8 * i + 4, [4 * i - k + 6], True))
        if 4 * i - k + 7 >= 0:
            cols.append((8 * i + 5, [4 * i - k + 7], False))
        if k >= 5:
            cols.append((8 * i + 7, list(range(max(b7, 0), 4 * i + 4)), False))
        i += 1
    return [(x, ys, g) for x, ys, g in cols if ys and x <= x_max]


def make_M(k: int, i: int = 0, x_max: int = 64) -> Chart:
    """The chart M_k^i: M_k^0 with filtrations < i removed and lowered by i.

    M_k^0 has Z/2 in gradings 1 and 2 mod 8, nothing in gradings 0 and 6
    mod 8, towers in gradings 3 and 7 mod 8 topping out at filtrations
    4j+2 and 4j+3, and single classes in gradings 4 and 5 mod 8 on the
    descending lower edge.  Eta runs along the lower edge; every class is
    v1^4-periodic.
    """
    if k < 4:
        raise ChartError(f"make_M requires k >= 4, got {k}")
    if i < 0 or x_max < 1:
        raise ChartError("make_M requires i >= 0 and x_max >= 1")
    classes = []
    for x, ys, unclipped in _m_columns(k, x_max):
        kept = [y for y in ys if y >= i]
        for y in kept:
            r = x % 8
            is_bottom = y == ys[0]
            # a clipped 3-tower generator still carries a hidden eta when
            # the 4-column class of its flash exists
            g4_present = (x - 3) // 2 - k + 6 >= 0 if r == 3 else False
            eta = (r in (1, 2) and is_bottom) or (r == 4) or \
                  (r == 3 and is_bottom and (unclipped or g4_present))
            classes.append((x, y - i, f"M{k}^{i}", eta, is_bottom))
    edges = []
    col = {x: sorted(y - i for y in ys if y >= i)
           for x, ys, _ in _m_columns(k, x_max)}
    col = {x: ys for x, ys in col.items() if ys}
    for x, ys in col.items():
        for a, b in zip(ys, ys[1:]):
            edges.append((H0, (x, a), (x, b)))
        for y in ys:
            if x + 8 in col and y + 4 in col[x + 8]:
                edges.append((V14, (x, y), (x + 8, y + 4)))
    for x, ys, unclipped in _m_columns(k, x_max):
        r = x % 8
        lo = [y - i for y in ys if y >= i]
        if not lo or ys[0] < i:
            continue  # eta leaves only the birth bottom of a column
        y = ys[0] - i
        if r in (1, 2, 4):
            nxt = col.get(x + 1, [])
            if r == 2:
                # eta from the 2-column hits the top of the 3-tower
                if nxt and nxt[-1] == y + 1:
                    edges.append((ETA, (x, y), (x + 1, nxt[-1])))
            elif y + 1 in nxt:
                edges.append((ETA, (x, y), (x + 1, y + 1)))
        elif r == 3 and unclipped and y + 1 in col.get(x + 1, []):
            # generator of an unclipped 3-tower maps to the 4-column
            edges.append((ETA, (x, y), (x + 1, y + 1)))
    return _mk(classes, edges, (0, x_max))


def make_Mhat(s: int, x_max: int = 64) -> Chart:
    """M-hat: M_4^0 with gradings <= s removed, filtration floor at 0."""
    if s < 0:
        raise ChartError("make_Mhat requires s >= 0")
    base = suspend(make_Mhat(s - 4, x_max - 8), 8) if s >= 4 else None
    if base is not None:
        lo, hi = base.window
        return Chart(base.classes, base.edges, (0, x_max))
    m = make_M(4, 0, x_max)
    keep = {c.id for c in m.classes if c.x > s}
    cl = [c for c in m.classes if c.id in keep]
    if not cl:
        return Chart.empty((0, x_max))
    floor = min(c.y for c in cl)
    cl2 = frozenset(c.at(c.x, c.y - floor) for c in cl)
    ed = frozenset(e for e in m.edges if e[1] in keep and e[2] in keep)
    return Chart(cl2, ed, (0, x_max)).validate()


def make_V(k: int, x_max: int = 64) -> Chart:
    """Bottom summand of the upper-edge sequence.

    Towers of order 2^{k-1} in gradings 0 and 4 mod 8 (order 2^{k+1} at
    grading 0), eta chains off the 0-towers, and connecting classes whose
    eta-squared lands in the 4-towers.  The connecting class in grading
    8i+2 shares the position of eta^2 of the 8i-tower generator.
    """
    if k < 2:
        raise ChartError(f"make_V requires k >= 2, got {k}")
    if x_max < 8:
        raise ChartError("make_V requires x_max >= 8")
    tag = f"V{k}"
    cl = []
    edges = []

    def add(x, y, eta=False, gen=False):
        c = ChartClass(_fresh_id(), x, y, tag, eta, gen)
        cl.append(c)
        return c

    def tower(x, y0, height):
        out = [add(x, y0 + j, gen=(j == 0)) for j in range(height)]
        for a, b in zip(out, out[1:]):
            edges.append((H0, a.id, b.id))
        return out

    t0 = tower(0, 0, k + 1)
    eg = add(1, 1, eta=True, gen=True)
    e2g = add(2, 2, gen=True)
    edges += [(ETA, t0[0].id, eg.id), (ETA, eg.id, e2g.id)]
    x3 = add(3, k, eta=True, gen=True)
    t4 = tower(4, 3, k - 1)
    edges.append((ETA, x3.id, t4[-1].id))
    i = 1
    while 8 * i <= x_max:
        x = 8 * i
        ti = tower(x, 4 * i, k - 1)
        if x + 1 <= x_max:
            eg = add(x + 1, 4 * i + 1, eta=True, gen=True)
            edges.append((ETA, ti[0].id, eg.id))
            if x + 2 <= x_max:
                e2g = add(x + 2, 4 * i + 2, gen=True)
                edges.append((ETA, eg.id, e2g.id))
                xc = add(x + 2, 4 * i + 2, eta=True, gen=True)
                if k == 2:
                    edges.append((X2, xc.id, e2g.id))
                if x + 3 <= x_max:
                    ex = add(x + 3, 4 * i + 3, eta=True, gen=True)
                    edges.append((ETA, xc.id, ex.id))
                    if x + 4 <= x_max:
                        t4i = tower(x + 4, 4 * i + 3, k - 1)
                        edges.append((XETA, ex.id, t4i[0].id))
        i += 1
    return Chart(frozenset(cl), frozenset(edges), (0, x_max)).validate()


def make_I(k: int) -> Chart:
    """Initial fragment of the upper edge (gradings 0 through 7)."""
    if k < 2:
        raise ChartError(f"make_I requires k >= 2, got {k}")
    classes = []
    edges = []
    tag = f"I{k}"
    for j in range(k + 1):
        classes.append((0, j, tag, j == 0))
    for j in range(k):
        edges.append((H0, (0, j), (0, j + 1)))
    classes.append((1, 1, tag, True))
    classes.append((2, 2, tag, False))
    edges.append((ETA, (0, 0), (1, 1)))
    edges.append((ETA, (1, 1), (2, 2)))
    classes.append((3, k, tag, True))
    for j in range(k - 1):
        classes.append((4, 3 + j, tag, False))
    for j in range(k - 2):
        edges.append((H0, (4, 3 + j), (4, 4 + j)))
    edges.append((ETA, (3, k), (4, k + 1)))
    return _bottom_gens(_mk(classes, edges, (0, 7)))


def make_L(t: int, eps: int, x: int, y: int) -> Chart:
    """L-block with generators at (x, y), (x+2, y+t), (x+4, y+3).

    eps counts the killed elements relative to the eps = 0 pattern (first
    eta-squared of the middle generator, then its eta).  For t = 2 the
    middle generator shares the position of eta^2 of the first.  Classes
    below filtration 0 are not realized.
    """
    if t < 1 or not 0 <= eps <= 2:
        raise ChartError("make_L requires t >= 1 and 0 <= eps <= 2")
    tag = f"L{t},{eps}"
    cl = []
    edges = []

    def add(x_, y_, eta=False, gen=False):
        c = ChartClass(_fresh_id(), x_, y_, tag, eta, gen)
        cl.append(c)
        return c

    g_tower = [add(x, y + j, eta=(j == 0), gen=(j == 0)) for j in range(t)]
    for a, b in zip(g_tower, g_tower[1:]):
        edges.append((H0, a.id, b.id))
    eg = add(x + 1, y + 1, eta=True, gen=True)
    e2g = add(x + 2, y + 2, gen=True)
    edges += [(ETA, g_tower[0].id, eg.id), (ETA, eg.id, e2g.id)]
    gp = add(x + 2, y + t, eta=(eps <= 1), gen=True)
    if t == 1:
        edges.append((H0, gp.id, e2g.id))
    last = gp
    if eps <= 1:
        egp = add(x + 3, y + t + 1, eta=(eps == 0), gen=True)
        edges.append((ETA, gp.id, egp.id))
        last = egp
    top = y + t + 2 if eps == 0 else y + t + 1
    gpp_tower = [add(x + 4, fy) for fy in range(y + 3, top + 1)]
    for a, b in zip(gpp_tower, gpp_tower[1:]):
        edges.append((H0, a.id, b.id))
    if eps == 0 and gpp_tower:
        edges.append((ETA, last.id, gpp_tower[-1].id))
    keep = [c for c in cl if c.y >= 0]
    ids = {c.id for c in keep}
    ed = frozenset(e for e in edges if e[1] in ids and e[2] in ids)
    out = Chart(frozenset(keep), ed, (x, x + 4))
    return _bottom_gens(out).validate()


def make_K(t: int, eps: int, x: int, y: int) -> Chart:
    """K-block with generators at (x, y), (x-2, y+t-3), (x+2, y+1), (x+4, y+2).

    The tower at x tops out at the eta-squared of the leftmost generator;
    eps = 1 kills that class (shortening the tower), eps = 2 also kills
    the intermediate eta.  Classes below filtration 0 are not realized.
    """
    if t < 1 or not 0 <= eps <= 2:
        raise ChartError("make_K requires t >= 1 and 0 <= eps <= 2")
    tag = f"K{t},{eps}"
    classes = [(x - 2, y + t - 3, tag, eps <= 1)]
    if eps <= 1:
        classes.append((x - 1, y + t - 2, tag, eps == 0))
    g_height = t if eps == 0 else t - 1
    for j in range(g_height):
        classes.append((x, y + j, tag, False))
    classes.append((x + 2, y + 1, tag, False))
    for j in range(t - 1):
        classes.append((x + 4, y + 2 + j, tag, False))
    edges = []
    if eps <= 1:
        edges.append((ETA, (x - 2, y + t - 3), (x - 1, y + t - 2)))
    if eps == 0:
        edges.append((ETA, (x - 1, y + t - 2), (x, y + t - 1)))
    for j in range(g_height - 1):
        edges.append((H0, (x, y + j), (x, y + j + 1)))
    for j in range(t - 2):
        edges.append((H0, (x + 4, y + 2 + j), (x + 4, y + 3 + j)))
    classes = [c for c in classes if c[1] >= 0]
    return _bottom_gens(_mk(classes, edges, (x - 2, x + 4)))


def make_Mstar(k: int, r: int = 0, width: int = 40) -> Chart:
    """Cohomological M-chart, graded so that x = -(cohomological degree).

    The reflected pattern coincides, class for class and edge for edge,
    with a homology M-chart translated so that its 3-towers land at the
    reflection point; raising r by 4 suspends by 8.
    """
    if k < 4:
        raise ChartError(f"make_Mstar requires k >= 4, got {k}")
    i0 = (-(k + r)) % 4
    s = k + i0 + r
    m = make_M(k, i0, width + 2 * s - 5)
    out = suspend(m, -(2 * s - 5))
    lo, hi = out.window
    return Chart(out.classes, out.edges, (lo, hi))


def make_Vstar(k: int, width: int = 24) -> Chart:
    """Cohomological counterpart of the bottom upper-edge summand.

    Graded with x = -(cohomological degree).  The head (cohomological
    degrees 7 down to 2) carries a single class with an eta into a short
    tower; from degree 1 downward the chart looks like a Moore-spectrum
    chart of order 2^{k-1}, continued with period (8, 4) through
    ``width``.
    """
    if k < 2:
        raise ChartError(f"make_Vstar requires k >= 2, got {k}")
    tag = f"V*{k}"
    classes = [(-7, 0, tag, True), (-6, 0, tag, False), (-6, 1, tag, False)]
    edges = [(ETA, (-7, 0), (-6, 1)), (H0, (-6, 0), (-6, 1))]
    m = 0
    while -1 + 8 * m <= width:
        x0, y0 = -1 + 8 * m, 2 + 4 * m
        for j in range(k - 1):
            classes.append((x0, y0 + j, tag, j == 0))
        for j in range(k - 2):
            edges.append((H0, (x0, y0 + j), (x0, y0 + j + 1)))
        if x0 + 1 <= width:
            classes.append((x0 + 1, y0 + 1, tag, True))
            edges.append((ETA, (x0, y0), (x0 + 1, y0 + 1)))
        if x0 + 2 <= width:
            classes.append((x0 + 2, y0 + 2, tag, False))
            edges.append((ETA, (x0 + 1, y0 + 1), (x0 + 2, y0 + 2)))
        if x0 + 2 <= width:
            classes.append((x0 + 2, y0 + k - 1, tag, True))
        if x0 + 3 <= width:
            classes.append((x0 + 3, y0 + k, tag, True))
            edges.append((ETA, (x0 + 2, y0 + k - 1), (x0 + 3, y0 + k)))
        if x0 + 4 <= width:
            for j in range(k - 1):
                classes.append((x0 + 4, y0 + 3 + j, tag, False))
            for j in range(k - 2):
                edges.append((H0, (x0 + 4, y0 + 3 + j), (x0 + 4, y0 + 4 + j)))
            edges.append((ETA, (x0 + 3, y0 + k), (x0 + 4, y0 + k + 1)))
        m += 1
    return _bottom_gens(_mk(classes, edges, (-7, width)))


def make_ko_coefficients(x_max: int = 32, tower_cap: int = 8) -> Chart:
    """The coefficient chart: eta, eta^2 and capped infinite towers.

    Towers representing infinite cyclic summands are rendered with
    ``tower_cap`` classes and tagged 'Z'; torsion readings at those
    gradings are not meaningful.
    """
    classes = []
    edges = []
    p = 0
    while 8 * p <= x_max:
        base = 4 * p
        for j in range(tower_cap):
            classes.append((8 * p, base + j, "Z", j == 0))
        for j in range(tower_cap - 1):
            edges.append((H0, (8 * p, base + j), (8 * p, base + j + 1)))
        if 8 * p + 1 <= x_max:
            classes.append((8 * p + 1, base + 1, "eta", True))
            edges.append((ETA, (8 * p, base), (8 * p + 1, base + 1)))
        if 8 * p + 2 <= x_max:
            classes.append((8 * p + 2, base + 2, "eta2", False))
            edges.append((ETA, (8 * p + 1, base + 1), (8 * p + 2, base + 2)))
        if 8 * p + 4 <= x_max:
            for j in range(tower_cap):
                classes.append((8 * p + 4, base + 3 + j, "Z", j == 0))
            for j in range(tower_cap - 1):
                edges.append((H0, (8 * p + 4, base + 3 + j), (8 * p + 4, base + 4 + j)))
        p += 1
    return _bottom_gens(_mk(classes, edges, (0, x_max)))
