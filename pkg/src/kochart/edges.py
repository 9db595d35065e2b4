"""Edge charts: pre-edges by pairing simulation, edges by differential
removal, and the closed-form descriptions, which cross-check each other.

A pre-edge is the survivor chart of a chain of d1 pairings of M-charts;
the edge removes, from the pre-edge, the classes that feed differentials
into the pre-edge above it and the classes hit by differentials from the
pre-edges below it.  The closed forms realize the same charts as direct
sums of K-blocks (L-blocks and an initial fragment for the upper edge).
"""
from __future__ import annotations

from functools import lru_cache

from .chart import (ALL, BENEATH, Chart, ChartError, ETA_FAMILY, FLASH, H0,
                    StructureError, X2, XETA, cup_d1, direct_sum, group_at,
                    phi, remove_classes, restrict, suspend)
from .charts import make_I, make_K, make_L, make_M, make_Mhat, make_V
from .numeric import f_b, lg


def edge_prime_terms(e: int, l: int):
    """The pairing sequence for the pre-edge (e, l), as (chart, suspension,
    mode) triples; the first entry is the base chart."""
    if not 2 <= e < l:
        raise ChartError(f"pre-edge requires 2 <= e < l, got ({e}, {l})")
    terms = [("M", l - e + 3, e, 1, FLASH)]
    for i in range(3, l - e + 2):
        terms.append(("M", 4, e - 1, 2 ** i, FLASH))
    terms.append(("Mhat", 4, e - 2, 2 ** (l - e + 2) + 2, ALL))
    return terms


@lru_cache(maxsize=None)
def build_edge_prime(e: int, l: int, x_max: int = 0) -> Chart:
    """Survivors of the pairing sequence for the pre-edge (e, l).

    The result is finite: it vanishes from the start of the final hatted
    term onward.  ``x_max`` only widens the authoritative window.
    """
    terms = edge_prime_terms(e, l)
    end = terms[-1][3]
    span = end + 32
    acc = None
    for kind, k, s, susp, mode in terms:
        width = span - susp
        base = make_M(k, s, width) if kind == "M" else make_Mhat(s, width)
        placed = suspend(base, susp)
        acc = placed if acc is None else cup_d1(acc, placed, mode)
    out = restrict(acc, 0, max(x_max, end + 8))
    return Chart(out.classes, out.edges, (0, max(x_max, end + 8)))


def edge_prime_infinity(e: int, x_max: int) -> Chart:
    """Direct limit of the pre-edges (e, l): take l large enough that the
    terminal term lies beyond the window."""
    l = e + 1
    while 2 ** (l - e + 2) + 2 <= x_max + 8:
        l += 1
    return build_edge_prime(e, l, x_max)


def _differential_sources(sub: Chart):
    """Classes of a pre-edge that support differentials into the pre-edge
    above it: birth-generators in gradings 4 and 5 mod 8, except a
    filtration-0 generator in grading 4 mod 8 on which eta acts trivially.
    """
    out = []
    for c in sub.classes:
        r = c.x % 8
        if r not in (4, 5) or not c.gen:
            continue
        if r == 4 and c.y == 0 and not c.eta:
            continue
        out.append(c)
    return sorted(out, key=lambda c: (c.x, c.y))


def edge_differentials(parent: Chart, sub: Chart, suspension: int):
    """Pair the differential sources of a placed sub-pre-edge with target
    classes of the parent pre-edge, top of column first.

    Returns (source class, target class) pairs; a source whose target
    column is exhausted raises StructureError.
    """
    cols = {x: list(col) for x, col in parent.columns().items()}
    pairs = []
    for s in _differential_sources(sub):
        x = s.x + suspension - 1
        pool = cols.get(x, [])
        if not pool:
            raise StructureError(
                f"differential source at grading {s.x + suspension} has no "
                f"target in column {x}")
        pairs.append((s, pool.pop()))
    return pairs


def sub_placements(e: int, l: int):
    """Relative placements of the pre-edges directly under edge (e, l)."""
    return [(e + 1, e + d, 2 ** (d + 1)) for d in range(2, l - e + 1)]


@lru_cache(maxsize=None)
def build_edge(e: int, l: int, x_max: int = 0, keep_sources: bool = False,
               sub_hits: bool = True) -> Chart:
    """The edge (e, l): its pre-edge minus differential sources (unless
    ``keep_sources``) and minus the classes hit from the pre-edges below
    (unless ``sub_hits`` is off)."""
    pre = build_edge_prime(e, l, x_max)
    dead = set()
    if not keep_sources:
        dead.update(c.id for c in _differential_sources(pre))
    if sub_hits:
        for e2, l2, susp in sub_placements(e, l):
            sub = build_edge_prime(e2, l2)
            for _, tgt in edge_differentials(pre, sub, susp):
                dead.add(tgt.id)
    return remove_classes(pre, dead)


# -- closed forms -----------------------------------------------------------

def _clip(chart: Chart) -> Chart:
    """Drop the below-filtration-0 part of an abstract block pattern."""
    dead = [c.id for c in chart.classes if c.y < 0]
    return remove_classes(chart, dead)


def closed_form_edge(e: int, k: int, x_max: int = 0) -> Chart:
    """Direct-sum description of the edge (e, k) for 2 <= e <= k-1.

    A sum of K-blocks at (8(i+a)+4, 3-k+4(i+a)) for e = 4a+b, with the
    four standard corrections: the displaced second generator at indices a
    power of two when b = 3, a killed top (and final) class for b in
    {0, 1}, and one extra class past the last block when b = 3.  The
    pattern is truncated at filtration 0.
    """
    if not 2 <= e <= k - 1:
        raise ChartError(f"closed_form_edge requires 2 <= e <= k-1")
    a, b = divmod(e, 4)
    parts = []
    n = 2 ** (k - 1 - e)
    for i in range(n):
        t = k - lg(i) - 1 - e
        eps = f_b(b, i)
        x = 8 * (i + a) + 4
        y = 3 - k + 4 * (i + a)
        block = make_K(t, eps, x, y)
        if b == 3 and i >= 1 and i & (i - 1) == 0:
            # modification: raise the leftmost generator one step
            moved = []
            for c in block.classes:
                if c.x == x - 2 and c.y == y + t - 3:
                    moved.append(c)
            if moved:
                cl = set(block.classes)
                cl.remove(moved[0])
                cl.add(moved[0].at(x - 2, y + t - 2))
                edges = frozenset(e for e in block.edges
                                  if e[1] != moved[0].id)
                block = Chart(frozenset(cl), edges, block.window)
        if b in (0, 1) and t > 1 and (i + 1) & i == 0:
            # modification: kill the top class in grading x + 4
            top = max((c for c in block.classes if c.x == x + 4),
                      key=lambda c: c.y, default=None)
            if top is not None:
                block = remove_classes(block, [top.id])
        if b in (0, 1) and i == n - 1:
            # modification: kill the class in grading x + 2
            mid = [c.id for c in block.classes if c.x == x + 2]
            block = remove_classes(block, mid)
        parts.append(block)
    classes = set()
    edges = set()
    for part in parts:
        classes |= part.classes
        edges |= part.edges
    if b == 3:
        fc = Chart.build(
            [(2 ** (k + 2 - e) + 8 * a + 2, 2 ** (k + 1 - e) - k + 4 * a + 1,
              f"E{e},{k}+", False)], [], (0, 0))
        classes |= fc.classes
    hi = max([c.x for c in classes], default=0) + 2
    out = _clip(Chart(frozenset(classes), frozenset(edges), (0, max(hi, x_max))))
    return out


def closed_form_upper_edge(k: int, x_max: int = 0) -> Chart:
    """The upper edge: initial fragment plus L-blocks at (8i, 4i)."""
    if k < 2:
        raise ChartError("closed_form_upper_edge requires k >= 2")
    parts = [make_I(k)]
    for i in range(1, 2 ** (k - 2)):
        parts.append(make_L(k - lg(i) - 2, f_b(1, i), 8 * i, 4 * i))
    classes = set()
    edges = set()
    for part in parts:
        classes |= part.classes
        edges |= part.edges
    hi = max(c.x for c in classes) + 2
    return _clip(Chart(frozenset(classes), frozenset(edges),
                       (0, max(hi, x_max, 7))))


@lru_cache(maxsize=None)
def build_upper_edge_prime(k: int, x_max: int = 0) -> Chart:
    """Pairing fold for the upper edge: the V chart followed by one flash
    chart at each suspension 2^i, truncated before grading 2^{k+1}.

    After the fold, a hidden multiplication-by-2 is restored in each
    grading 2 mod 8 where the surviving connecting class sits directly
    below an eta-image (the order-2 relation between them survives the
    pairing even though the classes come from different charts).
    """
    if k < 2:
        raise ChartError("build_upper_edge_prime requires k >= 2")
    span = 2 ** (k + 1) + 24
    acc = make_V(k, span)
    for i in range(3, k + 2):
        width = span - 2 ** i
        acc = cup_d1(acc, suspend(make_M(4, 0, width), 2 ** i), FLASH)
    out = restrict(acc, 0, 2 ** (k + 1) - 1)
    receives = {t for kind, s, t in out.edges if kind in ETA_FAMILY}
    has2 = {e[1] for e in out.edges if e[0] in (H0, X2)}
    has2 |= {e[2] for e in out.edges if e[0] in (H0, X2)}
    extra = []
    for x, col in out.columns().items():
        if x % 8 != 2:
            continue
        for lo_c in col:
            if lo_c.id in has2 or lo_c.id in receives:
                continue
            up = [c for c in col if c.y == lo_c.y + 1 and c.id in receives
                  and c.id not in has2]
            if len(up) == 1:
                extra.append((H0, lo_c.id, up[0].id))
    out = out.with_edges(extra)
    hi = max(2 ** (k + 1) - 1, x_max)
    return Chart(out.classes, out.edges, (0, hi))


@lru_cache(maxsize=None)
def build_upper_edge(k: int, x_max: int = 0) -> Chart:
    """The upper edge by simulation: remove from its pre-edge the classes
    in gradings 3 and 4 mod 8 hit by differentials from the placed
    pre-edges (2, i), 3 <= i <= k."""
    pre = build_upper_edge_prime(k, x_max)
    dead = set()
    for i in range(3, k + 1):
        sub = build_edge_prime(2, i)
        for _, tgt in edge_differentials(pre, sub, 2 ** i):
            if tgt.x % 8 in (3, 4):
                dead.add(tgt.id)
    return remove_classes(pre, dead)
