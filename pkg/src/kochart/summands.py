"""The A- and B-family summand charts.

An A summand is the direct sum of its placed edges (the upper edge at
suspension 0 and the recursive subedge tree) together with three families
of exotic extensions.  A B summand for k >= 3 has four parts: a clipped
M-portion pushed up in filtration, a kept-sources edge tree, a height-cut
subchart of the limiting pre-edge with another edge tree under it, and a
string of eta pairs receiving exotic extensions.  For k <= 2 the B
summands are direct pairing folds.
"""
from __future__ import annotations

from functools import lru_cache

from .chart import (ALL, Chart, ChartClass, ChartError, ETA, ETA_FAMILY,
                    FLASH, H0, StructureError, TWO_FAMILY, X2, XETA,
                    _fresh_id, cup_d1, direct_sum, phi, remove_classes,
                    restrict, suspend)
from .charts import make_M, make_Mhat
from .edges import (build_edge, build_edge_prime, closed_form_upper_edge,
                    edge_differentials, edge_prime_infinity)
from .numeric import alpha, h_k, nu


def edge_placements(k: int):
    """All placed edges of the k-th A summand: (e, l, suspension)."""
    if k < 2:
        raise ChartError("edge_placements requires k >= 2")
    out = [(1, k, 0)]
    stack = [(1, k, 0)]
    while stack:
        e, l, d = stack.pop()
        if e > k - 2:
            continue
        for dd in range(2, l - e + 1):
            child = (e + 1, e + dd, d + 2 ** (dd + 1))
            out.append(child)
            stack.append(child)
    return sorted(out, key=lambda t: (t[2], t[0], t[1]))


def edge_placements_by_indices(k: int):
    """Same set, from the binary-arithmetic description: the (e, l) edge
    sits at suspension 8i exactly when alpha(i) = e-1 and nu(i) = l-e-1."""
    out = [(1, k, 0)]
    for i in range(1, 2 ** (k - 2)):
        e = alpha(i) + 1
        out.append((e, alpha(i) + nu(i) + 2, 8 * i))
    return sorted(out, key=lambda t: (t[2], t[0], t[1]))


def subtree(root_e, root_l, root_d):
    """Placed edges strictly under a placed root edge."""
    out = []
    stack = [(root_e, root_l, root_d)]
    while stack:
        e, l, d = stack.pop()
        for dd in range(2, l - e + 1):
            child = (e + 1, e + dd, d + 2 ** (dd + 1))
            out.append(child)
            stack.append(child)
    return sorted(out, key=lambda t: (t[2], t[0], t[1]))


def _extent(chart: Chart):
    return (chart.min_x(), chart.max_x())


def _merge(parts: dict, window):
    """Disjoint union of placed parts with fresh ids; returns the chart
    and an owner map id -> part key."""
    from dataclasses import replace
    classes = set()
    edges = set()
    owner = {}
    for key, part in parts.items():
        remap = {}
        for c in part.classes:
            nc = replace(c, id=_fresh_id())
            remap[c.id] = nc.id
            classes.add(nc)
            owner[nc.id] = key
        for kind, a, b in part.edges:
            if kind != "v14":
                edges.add((kind, remap[a], remap[b]))
    return Chart(frozenset(classes), frozenset(edges), window), owner


def _unmoved_two_classes(e: int, l: int):
    """Gradings of the 2 mod 8 classes of an edge eligible for the third
    extension family: the leftmost-generator classes not displaced by the
    block corrections, read off the built edge."""
    ch = build_edge(e, l)
    cols = ch.columns()
    out = []
    a, b = divmod(e, 4)
    n = 2 ** (l - 1 - e)
    for i in range(n):
        x = 8 * (i + a) + 2
        if x not in cols:
            continue
        if b == 3 and i >= 1 and i & (i - 1) == 0:
            continue  # displaced generator
        out.append(x)
    return out


def _final_two_class(e: int, l: int):
    """Grading of the final 2 mod 8 element (the extra class of the b = 3
    correction), when the edge has one."""
    a, b = divmod(e, 4)
    if b != 3:
        ch = build_edge(e, l)
        xs = [x for x in ch.gradings() if x % 8 == 2]
        last = 2 ** (l + 2 - e) + 8 * a + 2
        return last if last in xs else None
    return 2 ** (l + 2 - e) + 8 * a + 2


def a_extensions(k: int, placements=None):
    """Exotic extensions of the k-th reduced A summand, as
    (grading, (sub_e, sub_l, sub_susp), (par_e, par_l, par_susp), family).
    """
    if placements is None:
        placements = edge_placements(k)
    pset = set(placements)
    out = []
    # family 1: into the upper edge from the top-level (2, l) edges
    for (e, l, d) in placements:
        if e != 2 or not 4 <= l <= k:
            continue
        if d != 2 ** l:
            continue
        for i in range(3 * 2 ** (l - 4), 2 ** (l - 2)):
            out.append((8 * i + 2, (2, l, d), (1, k, 0), 1))
    by_parent = {}
    for (e, l, d) in placements:
        for dd in range(2, l - e + 1):
            child = (e + 1, e + dd, d + 2 ** (dd + 1))
            if child in pset:
                by_parent.setdefault((e, l, d), []).append(child)
    for parent, children in by_parent.items():
        e, l, d = parent
        if e < 2:
            continue
        for (e2, m, d2) in children:
            ext = _extent(build_edge(e2, m))
            if ext[0] is None:
                continue
            if m == l:
                # family 2: grading 6 mod 8 through the whole subedge
                for x in range(d2 + ext[0], d2 + ext[1] + 1):
                    if x % 8 == 6:
                        out.append((x, (e2, m, d2), parent, 2))
            # family 3: grading 2 mod 8 at the undisplaced generators
            for x0 in _unmoved_two_classes(e2, m):
                out.append((d2 + x0, (e2, m, d2), parent, 3))
            fin = _final_two_class(e2, m)
            if fin is not None and e % 4 in (0, 3):
                out.append((d2 + fin, (e2, m, d2), parent, 3))
    return sorted(out)


def _not_in_eta_image(chart: Chart, x: int):
    """The class at grading x with no incoming eta-family edge."""
    receives = {t for kk, s, t in chart.edges if kk in ETA_FAMILY}
    cands = [c for c in chart.column(x) if c.id not in receives]
    if len(cands) != 1:
        raise StructureError(
            f"extension target at grading {x} is ambiguous ({len(cands)})")
    return cands[0]


def _add_extension(chart: Chart, x: int, src_pred, tgt_pred):
    """Join the two classes at grading x selected by the predicates with
    an exotic multiplication-by-2 (lower filtration to higher)."""
    col = chart.column(x)
    srcs = [c for c in col if src_pred(c)]
    tgts = [c for c in col if tgt_pred(c)]
    if len(srcs) != 1 or len(tgts) != 1 or srcs[0] is tgts[0]:
        raise StructureError(f"cannot resolve extension at grading {x}")
    s, t = srcs[0], tgts[0]
    if s.y > t.y:
        s, t = t, s
    return chart.with_edges([(X2, s.id, t.id)])


@lru_cache(maxsize=None)
def build_A_tilde(k: int, x_max: int = 0) -> Chart:
    """The reduced A summand: placed edges plus exotic extensions."""
    if k < 2:
        raise ChartError("build_A_tilde requires k >= 2")
    placements = edge_placements(k)
    parts = {}
    for (e, l, d) in placements:
        base = closed_form_upper_edge(k) if e == 1 else build_edge(e, l)
        parts[(e, l, d)] = suspend(base, d)
    hi = max(p.max_x() for p in parts.values())
    out, owner = _merge(parts, (0, max(hi, x_max)))
    for (x, sub, par, fam) in a_extensions(k, placements):
        in_sub = lambda c, sub=sub: owner[c.id] == sub
        in_par = lambda c, par=par: owner[c.id] == par
        if fam == 1:
            receives = {t for kk, s_, t in out.edges if kk in ETA_FAMILY}
            cands = [c for c in out.column(x)
                     if in_par(c) and c.id not in receives]
            if len(cands) != 1:
                raise StructureError(
                    f"family-1 target at grading {x} is ambiguous")
            col = [c for c in out.column(x) if in_sub(c)]
            if len(col) != 1:
                raise StructureError(f"family-1 source at {x} ambiguous")
            out = out.with_edges([(X2, col[0].id, cands[0].id)])
        else:
            out = _add_extension(out, x, in_sub, in_par)
    return out.validate()


def build_A(k: int, x_max: int = 0) -> Chart:
    """The k-th A summand in absolute grading."""
    if k < 1:
        raise ChartError("build_A requires k >= 1")
    if k == 1:
        return Chart.build([(2, 0, "A1", False, True), (4, 1, "A1", False, True)],
                           [], (0, max(4, x_max)))
    out = suspend(build_A_tilde(k), 2 ** (k + 1))
    lo, hi = out.window
    return Chart(out.classes, out.edges, (lo, max(hi, x_max)))


# -- B summands -------------------------------------------------------------

def _part1(k: int, l: int, i: int):
    """Filtration 0..k portion of the suspended M chart, pushed up by
    2^k - k - 1, omitting a filtration-k class in grading 1 mod 8."""
    m = make_M(l - k + 3, i, 2 ** (k + 1) + 16)
    keep = [c for c in m.classes if c.y <= k and not (c.y == k and c.x % 8 == 1)]
    ids = {c.id for c in keep}
    ed = [e for e in m.edges if e[0] != "v14" and e[1] in ids and e[2] in ids]
    ch = Chart(frozenset(keep), frozenset(ed), m.window)
    return suspend(phi(ch, 2 ** k - k - 1), 2 ** (k + 1))


def _edge_tree(root, keep_root_sources, x_max, root_chart=None,
               frozen_depth=None):
    """A placed edge (or a supplied root chart) with every subedge under
    it, differentials applied, and the within-tree exotic extensions.

    With ``frozen_depth`` set, differentials operate only between depths
    below it: children at that depth lose just their upward sources and
    deeper edges stay complete pre-edges.
    """
    e0, l0, d0 = root
    tree = [(e0, l0, d0)] + subtree(e0, l0, d0)
    depth = {root: 0}
    for (e, l, d) in tree:
        if (e, l, d) == root:
            continue
        depth[(e, l, d)] = e - e0
    parts = {}
    for (e, l, d) in tree:
        if (e, l, d) == root and root_chart is not None:
            parts[root] = root_chart
            continue
        if frozen_depth is not None and depth[(e, l, d)] >= frozen_depth + 1:
            base = build_edge_prime(e, l)
        elif frozen_depth is not None and depth[(e, l, d)] == frozen_depth:
            base = build_edge(e, l, sub_hits=False)
        else:
            base = build_edge(
                e, l, keep_sources=(keep_root_sources and (e, l, d) == root))
        parts[(e, l, d)] = suspend(base, d)
    hi = max((p.max_x() for p in parts.values() if p.max_x() is not None),
             default=0)
    out, owner = _merge(parts, (0, max(hi, x_max)))
    pset = set(tree)
    exts = []
    for parent in tree:
        e, l, d = parent
        if e < 2:
            continue
        for dd in range(2, l - e + 1):
            child = (e + 1, e + dd, d + 2 ** (dd + 1))
            if child not in pset:
                continue
            e2, m, d2 = child
            ext = _extent(build_edge(e2, m))
            if ext[0] is not None and m == l:
                for x in range(d2 + ext[0], d2 + ext[1] + 1):
                    if x % 8 == 6:
                        exts.append((x, child, parent))
            for x0 in _unmoved_two_classes(e2, m):
                exts.append((d2 + x0, child, parent))
            fin = _final_two_class(e2, m)
            if fin is not None and e % 4 in (0, 3):
                exts.append((d2 + fin, child, parent))
    for (x, sub, par) in exts:
        try:
            out = _add_extension(out, x,
                                 lambda c, sub=sub: owner[c.id] == sub,
                                 lambda c, par=par: owner[c.id] == par)
        except StructureError:
            pass  # extension grading outside the realized parent chart
    return out


def _part3(k: int, l: int, i: int, x_max: int):
    """Height cut of the limiting pre-edge plus the tree under the placed
    (2+i, k+1+i) edge, with the differentials from that tree into the cut."""
    d0 = 2 ** (k + 1)
    span = max(x_max - d0 + 8, 24)
    inf = edge_prime_infinity(2 + i, span)
    keep = [c for c in inf.classes if c.y >= h_k(k + i, c.x)]
    ids = {c.id for c in keep}
    ed = [e for e in inf.edges if e[0] != "v14" and e[1] in ids and e[2] in ids]
    cut = Chart(frozenset(keep), frozenset(ed), inf.window)
    dead = set()
    for (e2, m, d2) in subtree(2 + i, k + 1 + i, 0):
        sub = build_edge_prime(e2, m)
        try:
            for _, tgt in edge_differentials(cut, sub, d2):
                dead.add(tgt.id)
        except StructureError:
            pass  # sources beyond the cut find nothing to hit
    cut = remove_classes(cut, dead)
    return _edge_tree((2 + i, k + 1 + i, d0), False, x_max,
                      root_chart=suspend(cut, d0))


def _part4(k: int, l: int, i: int):
    """The eta pairs and their exotic companions."""
    cl = []
    edges = []
    lo_j = (k + 3 + i) // 4
    hi_j = 2 ** (k - 2) + (i + 3) // 4 - 1
    info = []
    for j in range(lo_j, hi_j + 1):
        x = 2 ** (k + 1) + 1 + 8 * j
        y = 2 ** k - k - 1 + 4 * j - i
        xj = ChartClass(_fresh_id(), x, y, "B4", True, True)
        cl.append(xj)
        exj = None
        if not (i % 4 == 1 and j == 2 ** (k - 2) + (i - 1) // 4):
            exj = ChartClass(_fresh_id(), x + 1, y + 1, "B4", False, False)
            cl.append(exj)
            edges.append((ETA, xj.id, exj.id))
        info.append((j, xj, exj))
    return cl, edges, info


@lru_cache(maxsize=None)
def build_B_tilde(k: int, l: int, z: int = 0, x_max: int = 0) -> Chart:
    """The reduced B summand for k >= 3 (small k goes through the pairing
    folds), assembled from its four parts."""
    if not 3 <= k < l:
        raise ChartError("build_B_tilde requires 3 <= k < l")
    i = z
    hi = max(2 ** (k + 2) + 16, x_max)
    p1 = _part1(k, l, i)
    p2 = _edge_tree((l - k + i + 1, l + i, 0), True, hi, frozen_depth=1)
    p3 = _part3(k, l, i, hi)
    out = direct_sum(direct_sum(p1, p2), p3)
    cl4, ed4, info = _part4(k, l, i)
    classes = set(out.classes) | set(cl4)
    edges = set(out.edges) | set(ed4)
    out = Chart(frozenset(classes), frozenset(edges), (0, hi))
    # exotic extensions into the eta pairs, with their companions
    by_pos = {}
    for c in out.classes:
        by_pos.setdefault((c.x, c.y), c)
    for (j, xj, exj) in info:
        if j < 2 ** (k - 3) + (i + 3) // 4:
            continue
        src = by_pos.get((2 ** (k + 1) + 8 * j + 2, 4 * j - k - i))
        if src is not None and exj is not None:
            edges.add((X2, src.id, exj.id))
        gamma = by_pos.get((2 ** (k + 1) + 8 * j, 4 * j - k - i - 1))
        if gamma is not None:
            edges.add((XETA, gamma.id, xj.id))
    out = Chart(frozenset(classes), frozenset(edges), (0, hi))
    # the eta extension of the aligned-residue case: last element of the
    # kept-sources edge into the bottom of the pushed-up M part
    if (l - k + i) % 4 == 0:
        root = build_edge(l - k + i + 1, l + i, keep_sources=True)
        last_x = root.max_x()
        p1lo = min(p1.classes, key=lambda c: (c.x, c.y), default=None)
        if p1lo is not None and p1lo.x == last_x + 1:
            srcs = [c for c in out.classes if c.x == last_x]
            tgts = sorted((c for c in out.classes if c.x == p1lo.x),
                          key=lambda c: c.y)
            if srcs and tgts:
                src = max(srcs, key=lambda c: c.y)
                tgt = tgts[0]
                kind = ETA if tgt.y == src.y + 1 else XETA
                out = out.with_edges([(kind, src.id, tgt.id)])
    return out.validate()


@lru_cache(maxsize=None)
def build_B_tilde_small(k: int, l: int, z: int = 0, x_max: int = 0) -> Chart:
    """The reduced B summands for k in {1, 2}, by the pairing folds."""
    if k not in (1, 2) or l <= k:
        raise ChartError("build_B_tilde_small requires k in {1,2}, l > k")
    span = max(2 ** (k + 2) + 24, x_max + 8)

    def term(kk, ss, susp):
        ch = suspend(make_M(kk, ss, span - susp), susp)
        return Chart(ch.classes, ch.edges, (0, span))

    if k == 1:
        out = cup_d1(term(l + 2, 2 + z, 0), term(l + 2, z, 9), ALL)
    else:
        acc = cup_d1(term(4, l - 1 + z, 1), term(l + 2, z, 8), FLASH)
        acc = direct_sum(acc, term(l + 2, 2 + z, 9))
        out = cup_d1(acc, term(4, 1 + z, 16), ALL)
    out = restrict(out, 0, max(2 ** (k + 2) + 8, x_max))
    return out


def build_B(k: int, l: int, z: int = 0, x_max: int = 0) -> Chart:
    """The (k, l) B summand in absolute grading."""
    b = (build_B_tilde_small if k <= 2 else build_B_tilde)(k, l, z, x_max)
    out = suspend(b, 2 ** (l + 2))
    lo, hi = out.window
    return Chart(out.classes, out.edges, (lo, max(hi, x_max)))
