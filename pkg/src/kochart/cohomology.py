"""Cohomology charts, stored at x = -(cohomological degree).

The starred B summands reflect homology B summands (with shifted z-power)
about an explicit pivot.  The starred A summands for k >= 4 are duals of
an extended chart: the pre-edges of half the tower heights, continued as
lightning flashes through a cutoff T, together with the edges under them,
an extra eta pair at the top, and a blanket family of exotic extensions
on the added classes.  Small k are fixed finite charts.
"""
from __future__ import annotations

from functools import lru_cache

from .chart import (Chart, ChartError, ETA, ETA_FAMILY, FLASH, H0,
                    StructureError, TWO_FAMILY, X2, XETA, cup_d1, dual,
                    remove_classes, restrict, suspend)
from .charts import make_M
from .edges import (_differential_sources, build_edge_prime,
                    edge_differentials, edge_prime_terms)
from .summands import _merge, build_B_tilde, build_B_tilde_small, subtree


def b_star_parameters(k: int, l: int, t: int):
    """Choose i with 0 <= 4i - l - t <= 3; returns (partner z, pivot)."""
    i = (l + t + 3) // 4
    return 4 * i - l - t, 2 ** (k + 2) + 8 * i + 4


def build_B_star(k: int, l: int, t: int = 0, x_max: int = 0) -> Chart:
    """Reduced starred B summand, stored at x = -(cohomological degree):
    the reflection of the partner homology chart about the pivot."""
    t2, pivot = b_star_parameters(k, l, t)
    b = (build_B_tilde if k >= 3 else build_B_tilde_small)(k, l, t2, x_max)
    out = suspend(b, -pivot)
    return out


def extended_pre_edge(e: int, l: int, cutoff: int) -> Chart:
    """Pre-edge fold without its terminal annihilating term, carried
    through the cutoff grading: the stable lightning flashes survive."""
    terms = edge_prime_terms(e, l)[:-1]
    span = cutoff + 16
    acc = None
    for kind, kk, s, susp, mode in terms:
        base = make_M(kk, s, span - susp)
        placed = suspend(base, susp)
        acc = placed if acc is None else cup_d1(acc, placed, mode)
    return restrict(acc, 0, cutoff)


def a_star_dual_description(k: int, x_max: int = 0) -> Chart:
    """The homology-graded chart whose reflection is the reduced starred A
    summand, for k >= 4."""
    if k < 4:
        raise ChartError("a_star_dual_description requires k >= 4")
    t, eps = divmod(k, 2)
    eps = 2 - eps  # k = 2t + eps with eps in {1, 2}
    t = (k - eps) // 2
    e = 2 * t + 2 - eps
    l = 4 * t + 1
    T = 2 ** (2 * t + eps + 1) + 8 * t - 2
    tops = {}
    parts = {}
    old_extent = {}
    from .edges import build_edge_prime
    for e2 in range(e, 4 * t + 1):
        d = 2 ** (l - e + 2) - 2 ** (l - e2 + 2)
        parts[(e2, l, d)] = suspend(extended_pre_edge(e2, l, T - d), d)
        old = build_edge_prime(e2, l)
        old_extent[(e2, l, d)] = (old.max_x() or 0) + d
        # subedges with second subscript below l
        for (e3, m, d3) in subtree(e2, l, d):
            if m < l and (e3, m, d3) not in parts:
                from .edges import build_edge
                parts[(e3, m, d3)] = suspend(build_edge(e3, m), d3)
                old_extent[(e3, m, d3)] = None
    out, owner = _merge(parts, (0, max(T + 2, x_max)))
    keys = sorted(parts, key=lambda key: (key[0], key[2]))
    by_key = {}
    for c in out.classes:
        by_key.setdefault(owner[c.id], []).append(c)
    pools = {}
    for key in keys:
        pools[key] = {}
        for c in by_key.get(key, []):
            pools[key].setdefault(c.x, []).append(c)
        for col in pools[key].values():
            col.sort(key=lambda c: c.y)
    dead = set()

    def fire(par_key, sources):
        for s in sources:
            pool = pools[par_key].get(s.x - 1, [])
            if pool:
                tgt = pool.pop()
                dead.add(tgt.id)
                dead.add(s.id)

    # each extended pre-edge fires into the one above it (the top one
    # keeps its sources), and every lower subedge fires into its tree
    # parent through its own pre-edge sources
    for (e2, m, d2) in keys:
        if m == l and e2 == e:
            continue
        cand = [key for key in keys if key[0] == e2 - 1 and key[2] < d2] or                [key for key in keys if key[0] == e2 - 1 and key[2] == d2 - 2 ** (m - e2 + 2)]
        if not cand:
            continue
        parent = max(cand, key=lambda key: key[2])
        if m == l:
            sub_chart = Chart(frozenset(by_key[(e2, m, d2)]),
                              frozenset(ed for ed in out.edges
                                        if owner[ed[1]] == (e2, m, d2)
                                        and owner[ed[2]] == (e2, m, d2)),
                              out.window)
            srcs = _differential_sources(sub_chart)
        else:
            pre = build_edge_prime(e2, m)
            srcs = [c.at(c.x + d2, c.y) for c in _differential_sources(pre)]
        fire(parent, srcs)
    # the extra eta pair: x dies by its own differential into the chart,
    # killing the top class two gradings below; y keeps a short tower
    ycls = Chart.build([(T, 0, "y", False, True), (T, 1, "y", False, False)],
                       [], out.window)
    out = remove_classes(out, dead)
    classes = set(out.classes) | set(ycls.classes)
    edges = set(out.edges)
    yl = sorted(ycls.classes, key=lambda c: c.y)
    edges.add((H0, yl[0].id, yl[1].id))
    # d_2 of the x class removes the class at (T - 2, 2)
    hit = [c for c in classes if c.x == T - 2 and c.y == 2]
    if hit:
        classes.discard(hit[0])
        edges = {ed for ed in edges if hit[0].id not in (ed[1], ed[2])}
    out = Chart(frozenset(classes), frozenset(edges), out.window)
    # blanket exotic extensions: every class added beyond the old pre-edge
    # extents (except the top-level pre-edge and y) extends into the class
    # above it in its column
    new_ids = set()
    for key, ext in old_extent.items():
        if ext is None or key[0] == e:
            continue
        for c in by_key[key]:
            if c.x > ext:
                new_ids.add(c.id)
    ids = out.by_id()
    has2out = {ed[1] for ed in out.edges if ed[0] in TWO_FAMILY}
    has2in = {ed[2] for ed in out.edges if ed[0] in TWO_FAMILY}
    extra = []
    for cid in new_ids:
        if cid not in ids or cid in has2out:
            continue
        c = ids[cid]
        above = sorted((d for d in out.classes
                        if d.x == c.x and d.y > c.y and d.id not in has2in),
                       key=lambda d: d.y)
        if above:
            extra.append((X2, cid, above[0].id))
            has2in.add(above[0].id)
            has2out.add(cid)
    return out.with_edges(extra)


A1_STAR = [(-6, 1), (-8, 0)]
A2_STAR_TILDE = {
    "classes": [(-10, 0), (-9, 1), (-8, 1), (-7, 2), (-6, 0), (-6, 1), (-6, 3)],
    "edges": [(ETA, (-10, 0), (-9, 1)), (ETA, (-8, 1), (-7, 2)),
              (ETA, (-7, 2), (-6, 3)), (H0, (-6, 0), (-6, 1)),
              (X2, (-6, 1), (-6, 3))]}
A3_STAR_TILDE = {
    "classes": [(-20, 0), (-18, 1), (-17, 1), (-16, 1), (-16, 2), (-15, 2),
                (-14, 3), (-10, 0), (-10, 4), (-9, 1), (-8, 5), (-7, 6),
                (-6, 0), (-6, 1), (-6, 3), (-6, 7)],
    "edges": [(ETA, (-17, 1), (-16, 2)), (H0, (-16, 1), (-16, 2)),
              (ETA, (-16, 1), (-15, 2)), (ETA, (-15, 2), (-14, 3)),
              (ETA, (-10, 0), (-9, 1)), (H0, (-6, 0), (-6, 1)),
              (X2, (-6, 1), (-6, 7)), (ETA, (-8, 5), (-7, 6)),
              (ETA, (-7, 6), (-6, 7))]}


def _fixed_chart(data, window):
    by = {}
    cl = []
    from .chart import ChartClass, _fresh_id
    for (x, y) in data["classes"]:
        c = ChartClass(_fresh_id(), x, y, "A*", False, False)
        by[(x, y)] = c
        cl.append(c)
    ed = [(kind, by[a].id, by[b].id) for kind, a, b in data["edges"]]
    return Chart(frozenset(cl), frozenset(ed), window).validate()


@lru_cache(maxsize=None)
def build_A_star(k: int, x_max: int = 0) -> Chart:
    """Reduced starred A summand, stored at x = -(cohomological degree).

    k = 1 is two classes; k in {2, 3} are fixed finite charts; k >= 4 is
    the reflected extended-pre-edge description.
    """
    if k < 1:
        raise ChartError("build_A_star requires k >= 1")
    if k == 1:
        return Chart.build([(x, y, "A1*", False, True) for x, y in A1_STAR],
                           [], (-8, 0))
    if k == 2:
        return _fixed_chart(A2_STAR_TILDE, (-10, -6))
    if k == 3:
        return _fixed_chart(A3_STAR_TILDE, (-20, -6))
    t = (k - 1) // 2
    eps = k - 2 * t
    pivot = 2 ** (2 * t + eps + 1) + 8 * t + 4
    desc = a_star_dual_description(k, x_max)
    return suspend(desc, -pivot)
