"""Bigraded chart model and generic chart operations.

A chart is a finite set of classes at integer positions (x, y) with
structure edges: vertical multiplication-by-2 lines, diagonal eta lines,
v1^4 periodicity lines, and their "exotic" dashed variants whose vertical
extent is unconstrained.  Charts carry an inclusive window [lo, hi] of
gradings in which they are authoritative.  All operations are pure.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field, replace

H0 = "h0"          # multiplication by 2, (0, +1)
ETA = "eta"        # eta, (+1, +1)
V14 = "v14"        # v1^4 periodicity, (+8, +4)
X2 = "x2"          # exotic multiplication by 2, (0, any)
XETA = "xeta"      # exotic eta, (+1, any)

KINDS = (H0, ETA, V14, X2, XETA)
TWO_FAMILY = frozenset({H0, X2})
ETA_FAMILY = frozenset({ETA, XETA})

_counter = itertools.count()


class ChartError(Exception):
    pass


class PairingError(ChartError):
    """A d1 source has no available target class."""


class StructureError(ChartError):
    """A pairing or extension rule found no (or an ambiguous) match."""


@dataclass(frozen=True)
class ChartClass:
    """One Z/2 basis class at (grading x, filtration y).

    ``tag`` records which constructor produced the class.  ``eta`` records
    whether eta acts nontrivially on it in the module the constructor was
    built from, and ``gen`` whether the class sat at the bottom of its
    2-chain there; both can differ from the surviving edge data after
    pairings, and both feed the source-selection rules of the pairing
    machinery.
    """

    id: int
    x: int
    y: int
    tag: str = ""
    eta: bool = False
    gen: bool = False

    def at(self, x, y):
        return replace(self, x=x, y=y)


def _fresh_id() -> int:
    return next(_counter)


@dataclass(frozen=True)
class Chart:
    classes: frozenset = frozenset()      # frozenset[ChartClass]
    edges: frozenset = frozenset()        # frozenset[(kind, src_id, tgt_id)]
    window: tuple = (0, 0)                # inclusive grading interval

    # -- construction helpers -------------------------------------------

    @staticmethod
    def build(classes, edges, window, name=""):
        """classes: iterable of (x, y, tag, eta) or ChartClass."""
        cl = []
        for c in classes:
            if isinstance(c, ChartClass):
                cl.append(c)
            else:
                x, y, *rest = c
                tag = rest[0] if rest else ""
                eta = rest[1] if len(rest) > 1 else False
                gen = rest[2] if len(rest) > 2 else False
                cl.append(ChartClass(_fresh_id(), x, y, tag, eta, gen))
        return Chart(frozenset(cl), frozenset(edges), tuple(window))

    @staticmethod
    def empty(window=(0, 0)):
        return Chart(frozenset(), frozenset(), tuple(window))

    def with_edges(self, more):
        return Chart(self.classes, self.edges | frozenset(more), self.window)

    # -- basic queries ---------------------------------------------------

    def by_id(self):
        return {c.id: c for c in self.classes}

    def column(self, x):
        return sorted((c for c in self.classes if c.x == x), key=lambda c: c.y)

    def columns(self):
        cols = defaultdict(list)
        for c in self.classes:
            cols[c.x].append(c)
        return {x: sorted(v, key=lambda c: c.y) for x, v in cols.items()}

    def gradings(self):
        return sorted({c.x for c in self.classes})

    def edge_list(self, *kinds):
        ks = set(kinds) if kinds else set(KINDS)
        return [e for e in self.edges if e[0] in ks]

    def is_empty(self):
        return not self.classes

    def min_x(self):
        return min((c.x for c in self.classes), default=None)

    def max_x(self):
        return max((c.x for c in self.classes), default=None)

    def max_y(self):
        return max((c.y for c in self.classes), default=0)

    # -- chains under the multiplication-by-2 family ----------------------

    def two_chains(self, x=None):
        """Maximal paths of {h0, x2} edges, each a bottom-to-top class list."""
        ids = self.by_id()
        nxt, prv = {}, {}
        for kind, s, t in self.edges:
            if kind in TWO_FAMILY and s in ids and t in ids:
                nxt[s] = t
                prv[t] = s
        chains = []
        for c in self.classes:
            if x is not None and c.x != x:
                continue
            if c.id in prv:
                continue
            chain = [c]
            while chain[-1].id in nxt:
                chain.append(ids[nxt[chain[-1].id]])
            chains.append(chain)
        return chains

    def chain_generators(self, x):
        """Bottom classes of the 2-chains in column x."""
        return [ch[0] for ch in self.two_chains(x)]

    def validate(self):
        ids = self.by_id()
        if len(ids) != len(self.classes):
            raise ChartError("duplicate class ids")
        out2, in2, oute, ine, outv, inv = ({} for _ in range(6))
        for kind, s, t in self.edges:
            if s not in ids or t not in ids:
                raise ChartError(f"dangling edge {(kind, s, t)}")
            a, b = ids[s], ids[t]
            if kind == H0 and (b.x != a.x or b.y != a.y + 1):
                raise ChartError(f"bad h0 geometry {a} -> {b}")
            if kind == X2 and b.x != a.x:
                raise ChartError(f"bad x2 geometry {a} -> {b}")
            if kind == ETA and (b.x != a.x + 1 or b.y != a.y + 1):
                raise ChartError(f"bad eta geometry {a} -> {b}")
            if kind == XETA and b.x != a.x + 1:
                raise ChartError(f"bad xeta geometry {a} -> {b}")
            if kind == V14 and (b.x != a.x + 8 or b.y != a.y + 4):
                raise ChartError(f"bad v14 geometry {a} -> {b}")
            group = (out2, in2) if kind in TWO_FAMILY else \
                    (oute, ine) if kind in ETA_FAMILY else (outv, inv)
            if s in group[0] or t in group[1]:
                raise ChartError(f"branching {kind} at {a} -> {b}")
            group[0][s] = t
            group[1][t] = s
        lo, hi = self.window
        for c in self.classes:
            if not lo <= c.x <= hi:
                raise ChartError(f"class {c} outside window {self.window}")
        return self

    def __len__(self):
        return len(self.classes)


# -- elementary operations ------------------------------------------------

def suspend(chart: Chart, s: int) -> Chart:
    """Shift every grading by s; filtrations and edges untouched."""
    if s == 0:
        return chart
    cl = frozenset(c.at(c.x + s, c.y) for c in chart.classes)
    lo, hi = chart.window
    return Chart(cl, chart.edges, (lo + s, hi + s))


def phi(chart: Chart, i: int) -> Chart:
    """Raise every filtration by i."""
    if i == 0:
        return chart
    cl = frozenset(c.at(c.x, c.y + i) for c in chart.classes)
    return Chart(cl, chart.edges, chart.window)


def direct_sum(a: Chart, b: Chart) -> Chart:
    """Disjoint union on the intersection of authoritative windows."""
    if a.is_empty() and not a.edges:
        win = b.window if b.classes else a.window
        return Chart(b.classes, b.edges, win)
    if b.is_empty() and not b.edges:
        return a
    lo = max(a.window[0], b.window[0])
    hi = min(a.window[1], b.window[1])
    remap = {}
    cl = set(a.classes)
    used = {c.id for c in cl}
    for c in b.classes:
        nid = c.id
        if nid in used:
            nid = _fresh_id()
        remap[c.id] = nid
        cl.add(replace(c, id=nid))
        used.add(nid)
    edges = set(a.edges)
    for kind, s, t in b.edges:
        edges.add((kind, remap[s], remap[t]))
    return Chart(frozenset(cl), frozenset(edges), (lo, hi))


def restrict(chart: Chart, lo, hi) -> Chart:
    """Drop classes (and incident edges) outside gradings [lo, hi]."""
    keep = {c.id for c in chart.classes if lo <= c.x <= hi}
    cl = frozenset(c for c in chart.classes if c.id in keep)
    ed = frozenset(e for e in chart.edges if e[1] in keep and e[2] in keep)
    return Chart(cl, ed, (max(chart.window[0], lo), min(chart.window[1], hi)))


def remove_classes(chart: Chart, ids) -> Chart:
    ids = set(ids)
    cl = frozenset(c for c in chart.classes if c.id not in ids)
    ed = frozenset(e for e in chart.edges if e[1] not in ids and e[2] not in ids)
    return Chart(cl, ed, chart.window)


def group_at(chart: Chart, x: int):
    """Cyclic 2-group exponents at grading x: chain of length m -> Z/2^m."""
    lo, hi = chart.window
    if not lo <= x <= hi:
        raise ChartError(f"grading {x} outside window {chart.window}")
    return sorted(len(ch) for ch in chart.two_chains(x))


def groups(chart: Chart):
    return {x: group_at(chart, x) for x in chart.gradings()}


def dual(chart: Chart, n: int) -> Chart:
    """Pontryagin-dual chart: reflect gradings about n, flip filtrations.

    v14 edges crossing the reflected window are dropped; all other edges
    are reversed and re-based at the reflected coordinates.
    """
    ymax = chart.max_y()
    cl = frozenset(c.at(n - c.x, ymax - c.y) for c in chart.classes)
    ids = {c.id: c for c in cl}
    edges = set()
    for kind, s, t in chart.edges:
        if s in ids and t in ids:
            edges.add((kind, t, s))
    lo, hi = chart.window
    return Chart(cl, frozenset(edges), (n - hi, n - lo)).validate()


# -- equivalence -----------------------------------------------------------

def _edge_signature(chart: Chart):
    """Local incident-edge fingerprint per class, used to order classes
    that share a filtration."""
    sig = {c.id: [] for c in chart.classes}
    ids = chart.by_id()
    for kind, s, t in chart.edges:
        if kind == V14:
            continue
        fam = "2" if kind in TWO_FAMILY else "e"
        a, b = ids[s], ids[t]
        sig[s].append(("o", fam, b.x - a.x, b.y - a.y))
        sig[t].append(("i", fam, b.x - a.x, b.y - a.y))
    return {k: tuple(sorted(v)) for k, v in sig.items()}


def _column_order_map(a: Chart, b: Chart):
    """Forced bijection matching columns by within-column filtration order.

    Classes sharing a filtration are ordered by their incident-edge
    fingerprints.  Returns id map from a to b, or None when column sizes
    differ.
    """
    ca, cb = a.columns(), b.columns()
    if set(ca) != set(cb):
        return None
    siga, sigb = _edge_signature(a), _edge_signature(b)
    m = {}
    for x in ca:
        la = sorted(ca[x], key=lambda c: (c.y, siga[c.id]))
        lb = sorted(cb[x], key=lambda c: (c.y, sigb[c.id]))
        if len(la) != len(lb):
            return None
        for p, q in zip(la, lb):
            m[p.id] = q.id
    return m


def _edge_multiset(chart: Chart, id_map, exact_kinds):
    out = []
    for kind, s, t in chart.edges:
        if kind == V14:
            continue
        fam = kind if exact_kinds else ("2" if kind in TWO_FAMILY else "eta")
        out.append((fam, id_map.get(s, s), id_map.get(t, t)))
    return sorted(out)


def weak_equiv(a: Chart, b: Chart) -> bool:
    """Bijection preserving gradings, within-column filtration order, and
    structure edges up to exotic/plain distinction (v14 edges ignored)."""
    m = _column_order_map(a, b)
    if m is None:
        return False
    ident = {c.id: c.id for c in b.classes}
    return _edge_multiset(a, m, False) == _edge_multiset(b, ident, False)


def strict_equiv(a: Chart, b: Chart) -> bool:
    """Bijection preserving (x, y) positions and exact edge kinds."""
    pos_a = defaultdict(list)
    pos_b = defaultdict(list)
    for c in a.classes:
        pos_a[(c.x, c.y)].append(c.id)
    for c in b.classes:
        pos_b[(c.x, c.y)].append(c.id)
    if {k: len(v) for k, v in pos_a.items()} != {k: len(v) for k, v in pos_b.items()}:
        return False
    # co-located classes are matched by their incident-edge fingerprints
    siga, sigb = _edge_signature(a), _edge_signature(b)
    m = {}
    for p in pos_a:
        la = sorted(pos_a[p], key=lambda i: siga[i])
        lb = sorted(pos_b[p], key=lambda i: sigb[i])
        for i, j in zip(la, lb):
            m[i] = j
    ident = {c.id: c.id for c in b.classes}
    return _edge_multiset(a, m, True) == _edge_multiset(b, ident, True)


def group_equiv(a: Chart, b: Chart, shift=0, reflect=None) -> bool:
    """Per-grading group agreement; b is read at x+shift or at reflect-x.

    Only gradings where both windows are authoritative are compared.
    """
    lo_a, hi_a = a.window
    for x in range(lo_a, hi_a + 1):
        bx = (reflect - x) if reflect is not None else (x + shift)
        if not b.window[0] <= bx <= b.window[1]:
            continue
        if group_at(a, x) != group_at(b, bx):
            return False
    return True


# -- the d1 pairing fold ----------------------------------------------------

FLASH = "flash"
ALL = "all"
BENEATH = "beneath"

_FLASH_RESIDUES = {1, 3, 4, 5, 7}


def _sources(d: Chart, mode: str):
    """Classes of d supporting d1's, bottom-of-column first.

    Outside ``all`` mode only birth-bottom classes (``gen`` flag) fire: a
    class that became the bottom of its chain through an earlier
    truncation is 2-divisible in the underlying module and supports no
    differential.
    """
    eta_out = {e[1] for e in d.edges if e[0] in ETA_FAMILY}
    out = []
    for x, col in sorted(d.columns().items()):
        r = x % 8
        if mode == ALL:
            out.extend(col)
        elif mode == FLASH:
            if r in _FLASH_RESIDUES:
                # a 3-tower generator without a drawn eta (clipped column)
                # supports no differential
                out.extend(c for c in col
                           if c.gen and (r != 3 or c.id in eta_out))
        elif mode == BENEATH:
            if r == 5:
                out.extend(c for c in col if c.gen)
            elif r == 6:
                out.extend(col)
        else:
            raise ValueError(f"unknown source mode {mode!r}")
    return out


def cup_d1(c: Chart, d: Chart, mode: str = FLASH) -> Chart:
    """Adjoin chart d to c with d1 differentials from d into c.

    Each firing source removes itself together with the top surviving
    class of column x-1 of c.  In ``flash`` mode the sources are the
    2-chain generators of d in gradings not congruent to 0, 2, 6 mod 8 and
    a source with an empty target column simply survives; in ``all`` mode
    every class of d must fire (PairingError otherwise); ``beneath`` mode
    fires chain generators in grading 5 mod 8 and whole columns in grading
    6 mod 8, skipping empty targets.

    After the kills, an eta extension is inserted from the surviving class
    above each fired chain generator to the top surviving class of column
    x+1 of c, when both exist.  v14 edges are dropped from the result.
    """
    receives = {t for kind, s, t in c.edges if kind in ETA_FAMILY}
    # live c classes; at equal filtration, classes carrying incoming eta
    # outlive the pairing (the differential hits the structureless one)
    c_cols = {x: sorted(col, key=lambda cl: (cl.y, cl.id not in receives))
              for x, col in c.columns().items()}
    had_c = {x: bool(col) for x, col in c_cols.items()}
    dead_c = set()
    dead_d = set()
    fired = []   # (source class, target class)
    for s in _sources(d, mode):
        pool = c_cols.get(s.x - 1, [])
        if not pool:
            if mode == ALL:
                raise PairingError(
                    f"source at grading {s.x} has no target in column {s.x - 1}")
            continue
        tgt = pool.pop()  # max filtration
        dead_c.add(tgt.id)
        dead_d.add(s.id)
        fired.append((s, tgt))

    # rigid placement of the surviving d classes: a fired source sits one
    # filtration below its target
    if fired:
        shift = max(t.y - 1 - s.y for s, t in fired)
    else:
        shift = 0

    d_alive = {cls.id: cls.at(cls.x, cls.y + shift)
               for cls in d.classes if cls.id not in dead_d}
    c_alive = {cls.id: cls for cls in c.classes if cls.id not in dead_c}

    classes = set(c_alive.values()) | set(d_alive.values())
    edges = set()
    for kind, s, t in c.edges:
        if kind != V14 and s in c_alive and t in c_alive:
            edges.add((kind, s, t))
    for kind, s, t in d.edges:
        if kind != V14 and s in d_alive and t in d_alive:
            a, b = d_alive[s], d_alive[t]
            if kind == ETA and b.y != a.y + 1:
                kind = XETA
            if kind == H0 and b.y != a.y + 1:
                kind = X2
            edges.add((kind, s, t))

    # eta insertion: when the generator alpha of a d column fired into
    # beta and 2*alpha survives, 2*alpha gets an eta into the class at
    # position v1*beta = (beta.x + 2, beta.y + 1).  A 3 mod 8 column whose
    # generator was already lost to filtration truncation behaves the same
    # way, with beta the surviving top of column x-1.
    d_next = {}
    for kind, s, t in d.edges:
        if kind in TWO_FAMILY:
            d_next[s] = t
    insertions = []
    for s, tgt in fired:
        up = d_next.get(s.id)
        if up is not None and up in d_alive:
            insertions.append((s.x, d_alive[up]))
    if mode == FLASH:
        fired_cols = {s.x for s, _ in fired}
        for x, col in d.columns().items():
            if x % 8 != 3 or x in fired_cols:
                continue
            # column whose generator was lost to truncation, or whose
            # clipped generator carries only a hidden eta: the surviving
            # bottom still acquires the eta of the stable pattern
            low = next((cls for cls in col if cls.id in d_alive), None)
            if low is None or not had_c.get(x - 1):
                continue
            if col[0].gen and not col[0].eta:
                continue
            insertions.append((x, d_alive[low.id]))
    for x, two_alpha in insertions:
        pool = c_cols.get(x + 1, [])
        if not pool:
            continue
        v1_beta = pool[-1]
        kind = ETA if v1_beta.y == two_alpha.y + 1 else XETA
        if not any(e[0] in ETA_FAMILY and e[1] == two_alpha.id for e in edges):
            edges.add((kind, two_alpha.id, v1_beta.id))

    if mode == BENEATH:
        # the adjoined chart extends the 2-towers downward: join a
        # surviving d class to the class directly above it
        has_out = {e[1] for e in edges if e[0] in TWO_FAMILY}
        has_in = {e[2] for e in edges if e[0] in TWO_FAMILY}
        by_pos = {(cls.x, cls.y): cls for cls in c_alive.values()}
        for cls in d_alive.values():
            up = by_pos.get((cls.x, cls.y + 1))
            if up is not None and cls.id not in has_out and up.id not in has_in:
                edges.add((H0, cls.id, up.id))

    lo = min(c.window[0], d.window[0])
    hi = min(c.window[1], d.window[1]) if c.classes else d.window[1]
    hi = max(hi, lo)
    return Chart(frozenset(classes), frozenset(edges), (lo, hi))


def normalize_ids(chart: Chart) -> Chart:
    """Renumber ids deterministically by (x, y); useful for serialization."""
    order = sorted(chart.classes, key=lambda c: (c.x, c.y, c.tag))
    remap = {c.id: i for i, c in enumerate(order)}
    cl = frozenset(replace(c, id=remap[c.id]) for c in order)
    ed = frozenset((k, remap[s], remap[t]) for k, s, t in chart.edges)
    return Chart(cl, ed, chart.window)
