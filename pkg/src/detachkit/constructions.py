"""Generators and combination operators for the matroid and graph families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bits import spread_index
from .connectivity import fans
from .errors import PreconditionError
from .extensions import (
    coextend_by_flats,
    extend_by_flats,
    is_modular_flat,
    principal_extension,
)
from .matroid import Matroid


@dataclass(frozen=True)
class GraphSpec:
    """A multigraph on vertices ``0..vertices-1`` with labelled edges."""

    vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None
    name: str = "G"

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
            if len(self.labels) != len(self.edges):
                raise PreconditionError("one label per edge is required")
            if len(set(self.labels)) != len(self.labels):
                raise PreconditionError("edge labels must be unique")
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise PreconditionError(f"edge ({u}, {v}) uses a vertex out of range")

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(len(self.edges)))

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def to_networkx(self):
        import networkx as nx

        G = nx.MultiGraph()
        G.add_nodes_from(range(self.vertices))
        for (u, v), lab in zip(self.edges, self.edge_labels):
            G.add_edge(u, v, label=lab)
        return G


@dataclass(frozen=True)
class WheelAttachmentSpec:
    """Parameters for the two wheel-attachment constructions.

    ``legs`` and ``wheel_ranks`` describe wheels glued to a spike with tip
    and cotip; ``line_size`` switches to the common-spoke construction.
    """

    legs: int = 3
    wheel_ranks: tuple[int, ...] = ()
    line_size: int | None = None
    delete_s: bool = False

    def __post_init__(self):
        object.__setattr__(self, "wheel_ranks", tuple(int(r) for r in self.wheel_ranks))
        if any(r < 3 for r in self.wheel_ranks):
            raise PreconditionError("each wheel must have rank at least 3")
        if self.line_size is None:
            if self.legs < 2:
                raise PreconditionError("the spike needs at least two legs")
            if len(self.wheel_ranks) > self.legs:
                raise PreconditionError("at most one wheel per leg")
        else:
            if self.line_size < 3:
                raise PreconditionError("the spoke line needs at least three points")
            if len(self.wheel_ranks) < 3:
                raise PreconditionError("the common-spoke construction needs at least three wheels")


# -- basic families -------------------------------------------------------------


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise PreconditionError("uniform matroids need 0 <= r <= n")
    bases = [sum(1 << e for e in c) for c in combinations(range(n), r)]
    return Matroid(bases, n=n, name=f"U{r},{n}", validate=False)


def graphic(G: GraphSpec | list, labels=None, name: str | None = None) -> Matroid:
    if not isinstance(G, GraphSpec):
        G = GraphSpec(1 + max(max(e) for e in G), tuple(G), labels)
    return Matroid.from_graph(G.edges, G.edge_labels, name or G.name)


def wheel_graph(r: int) -> GraphSpec:
    """Hub 0, rim vertices ``1..r``; edges ordered s1, r1, s2, r2, ..."""
    if r < 2:
        raise PreconditionError("wheels have rank at least 2")
    edges, labels = [], []
    for i in range(1, r + 1):
        edges.append((0, i))
        labels.append(f"s{i}")
        edges.append((i, i % r + 1))
        labels.append(f"r{i}")
    return GraphSpec(r + 1, tuple(edges), tuple(labels), f"W{r}")


def wheel(r: int) -> Matroid:
    if r < 2:
        raise PreconditionError("wheels have rank at least 2")
    if r == 2:
        # the rank-2 wheel graph has a doubled rim edge
        G = GraphSpec(3, ((0, 1), (1, 2), (0, 2), (2, 1)), ("s1", "r1", "s2", "r2"), "W2")
        return graphic(G)
    return graphic(wheel_graph(r), name=f"W{r}")


def whirl(r: int) -> Matroid:
    """The wheel with its rim circuit-hyperplane relaxed."""
    W = wheel(r)
    rim = sum(1 << i for i, lab in enumerate(W.labels) if lab.startswith("r"))
    if r == 2:
        return uniform(2, 4).relabel(W.labels, "W^2")
    return Matroid(list(W.basis_masks()) + [rim], n=W.n, labels=W.labels, name=f"W^{r}")


def complete_bipartite_graph(a: int, b: int) -> GraphSpec:
    edges, labels = [], []
    for i in range(a):
        for j in range(b):
            edges.append((i, a + j))
            labels.append(f"a{i}b{j}")
    return GraphSpec(a + b, tuple(edges), tuple(labels), f"K{a},{b}")


def k33k(k: int) -> Matroid:
    """``M(K_{3,k})``."""
    if k < 3:
        raise PreconditionError("k must be at least 3")
    return graphic(complete_bipartite_graph(3, k), name=f"M(K3,{k})")


def complete_graph(n: int) -> GraphSpec:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return GraphSpec(n, tuple(edges), tuple(f"{i}{j}" for i, j in edges), f"K{n}")


_FANO_COLS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
FANO_LABELS = ("a", "b", "c", "d", "e", "f", "g")


def fano(labels=FANO_LABELS) -> Matroid:
    rows = [[c[i] for c in _FANO_COLS] for i in range(3)]
    return Matroid.from_matrix(rows, 2, labels, "F7")


def non_fano(labels=FANO_LABELS) -> Matroid:
    rows = [[c[i] for c in _FANO_COLS] for i in range(3)]
    return Matroid.from_matrix(rows, 3, labels, "F7-")


# -- extensions -----------------------------------------------------------------------


def free_extension(M: Matroid, F=None, label: str = "e", name: str | None = None) -> Matroid:
    """Add ``label`` freely on the flat ``F`` (the whole ground set by default)."""
    fm = M.full if F is None else M._mask(F)
    if M.closure_mask(fm) != fm:
        raise PreconditionError("free extensions are taken on flats")
    if label in M.labels:
        raise PreconditionError(f"label {label!r} already used")
    return principal_extension(M, fm, label, name)


def truncate(M: Matroid, name: str | None = None) -> Matroid:
    """Truncation to rank ``r - 1`` (free extension, then contract the new element)."""
    if M.r == 0:
        raise PreconditionError("cannot truncate a rank-0 matroid")
    T = principal_extension(M, M.full, "__free__")
    return T.contract(1 << M.n).renamed(name or M.name)


def spike(t: int, tip: bool = False, cotip: bool = False) -> Matroid:
    """The free spike with ``t`` legs ``{x_i, y_i}``, optionally with tip and cotip.

    The tipped version is the rank-``t`` truncation of the cycle matroid of
    the graph with edge ``t = uv`` and paths ``u - w_i - v``; the tip is
    that edge.  The cotip is added by the coextension whose modular cut (in
    the dual) is generated by the legs.
    """
    if t < 2 or (t == 2 and not (tip and cotip)):
        raise PreconditionError("spikes need t >= 3 (t = 2 only with tip and cotip)")
    edges = [(0, 1)]
    labels = ["t"]
    for i in range(1, t + 1):
        edges += [(0, 1 + i), (1 + i, 1)]
        labels += [f"x{i}", f"y{i}"]
    G = graphic(GraphSpec(t + 2, tuple(edges), tuple(labels)))
    M = truncate(G)
    legs = [M.indices((f"x{i}", f"y{i}")) for i in range(1, t + 1)]
    legs = [sum(1 << e for e in L) for L in legs]
    if cotip:
        M = coextend_by_flats(M, [M.dual().closure_mask(L) for L in legs], "s")
    if not tip:
        M = M.delete(1 << M.index("t"))
    # put the legs first, then tip and cotip
    order_labels = [x for i in range(1, t + 1) for x in (f"x{i}", f"y{i}")]
    if tip:
        order_labels.append("t")
    if cotip:
        order_labels.append("s")
    M = M.permute([M.index(x) for x in order_labels])
    suffix = ("+t" if tip else "") + ("+s" if cotip else "")
    return M.renamed(f"spike{t}{suffix}")


def spike_legs(M: Matroid) -> list[int]:
    """Leg masks of a matroid produced by :func:`spike` (labels ``x_i``, ``y_i``)."""
    out = []
    i = 1
    while f"x{i}" in M.labels:
        out.append(1 << M.index(f"x{i}") | 1 << M.index(f"y{i}"))
        i += 1
    return out


def tip_extension(M: Matroid, legs, label: str = "t") -> Matroid:
    """Extension by an element in the closure of every leg (modular cut they generate)."""
    return extend_by_flats(M, [M.closure_mask(L) for L in legs], label)


def cotip_coextension(M: Matroid, legs, label: str = "s") -> Matroid:
    return coextend_by_flats(M, [M.dual().closure_mask(L) for L in legs], label)


# -- combination operators ------------------------------------------------------------------


def two_sum(M1: Matroid, M2: Matroid, p: str, name: str | None = None) -> Matroid:
    """2-sum along the common basepoint label ``p``."""
    if p not in M1.labels or p not in M2.labels:
        raise PreconditionError(f"basepoint {p!r} must be in both ground sets")
    common = set(M1.labels) & set(M2.labels)
    if common != {p}:
        raise PreconditionError("the ground sets may share only the basepoint")
    for M in (M1, M2):
        e = M.index(p)
        if M.rank_mask(1 << e) == 0 or e in M.coloops():
            raise PreconditionError("the basepoint must be neither a loop nor a coloop")
    p1, p2 = M1.index(p), M2.index(p)
    k1 = tuple(e for e in range(M1.n) if e != p1)
    k2 = tuple(e for e in range(M2.n) if e != p2)
    i1, i2 = spread_index(k1), spread_index(k2)
    a1 = M1.table[i1].astype(np.int16)
    b1 = M1.table[i1 | 1 << p1].astype(np.int16)
    a2 = M2.table[i2].astype(np.int16)
    b2 = M2.table[i2 | 1 << p2].astype(np.int16)
    rk = np.minimum(a2[:, None] + a1[None, :], b2[:, None] + b1[None, :] - 1).ravel()
    labels = [M1.labels[e] for e in k1] + [M2.labels[e] for e in k2]
    return Matroid.from_table(rk.astype(np.int8), labels, name or f"{M1.name}(+)2{M2.name}")


def gpc_triangle(M1: Matroid, M2: Matroid, T, name: str | None = None) -> Matroid:
    """Generalized parallel connection along a common triangle ``T`` (labels).

    The result has the elements of ``M1`` first (same order), then the
    elements of ``M2 - T``.  ``T`` must be a modular flat of ``M1`` or ``M2``.
    """
    T = tuple(T)
    if len(T) != 3:
        raise PreconditionError("the common set must be a triangle")
    common = set(M1.labels) & set(M2.labels)
    if common != set(T):
        raise PreconditionError("the ground sets must meet exactly in the triangle")
    t1 = sum(1 << M1.index(x) for x in T)
    t2 = sum(1 << M2.index(x) for x in T)
    if not (M1.is_circuit_mask(t1) and M2.is_circuit_mask(t2)):
        raise PreconditionError("the common set must be a triangle of both matroids")
    if not (is_modular_flat(M2, t2) or is_modular_flat(M1, t1)):
        raise PreconditionError("the triangle must be a modular flat of one side")
    n1 = M1.n
    rest2 = [e for e in range(M2.n) if not t2 >> e & 1]
    n = n1 + len(rest2)
    pos2 = {}  # P-bit -> M2-bit
    for x in T:
        pos2[M1.index(x)] = M2.index(x)
    for i, e in enumerate(rest2):
        pos2[n1 + i] = e
    X = np.arange(1 << n, dtype=np.int64)

    def to2(arr):
        out = np.zeros_like(arr)
        for b, q in pos2.items():
            out |= ((arr >> b) & 1) << q
        return out

    def from2(arr):
        out = np.zeros_like(arr)
        for b, q in pos2.items():
            out |= ((arr >> q) & 1) << b
        return out

    cl1, cl2 = M1.closure_array(), M2.closure_array()
    e1 = (1 << n1) - 1
    F = X
    for _ in range(n + 1):
        nxt = cl1[F & e1] | from2(cl2[to2(F)])
        if np.array_equal(nxt, F):
            break
        F = nxt
    rk = M1.table[F & e1].astype(np.int16) + M2.table[to2(F)] - M1.table[F & t1]
    labels = list(M1.labels) + [M2.labels[e] for e in rest2]
    return Matroid.from_table(rk.astype(np.int8), labels, name or f"P({M1.name},{M2.name})")


def _k4_for_triangle(a: str, b: str, c: str, primes: tuple[str, str, str]) -> Matroid:
    # vertices 1..4 -> 0..3: a=(2,3), b=(1,3), c=(1,2), a'=(1,4), b'=(2,4), c'=(3,4)
    edges = [(1, 2), (0, 2), (0, 1), (0, 3), (1, 3), (2, 3)]
    return Matroid.from_graph(edges, [a, b, c, *primes], "M(K4)")


def delta_y(M: Matroid, tri, name: str | None = None) -> Matroid:
    """Delta-Y exchange on the triangle ``tri`` (element indices or labels).

    Ground set and labels are preserved: the new element replacing ``a``
    keeps the label and position of ``a``.
    """
    tri = tuple(M.index(x) if isinstance(x, str) else int(x) for x in tri)
    if len(tri) != 3 or not M.is_circuit_mask(sum(1 << e for e in tri)):
        raise PreconditionError("delta_y needs a triangle")
    a, b, c = (M.labels[e] for e in tri)
    primes = tuple(_fresh(M, x) for x in (a, b, c))
    K = _k4_for_triangle(a, b, c, primes)
    P = gpc_triangle(M, K, (a, b, c))
    P = P.delete(sum(1 << e for e in tri))
    order = []
    for e in range(M.n):
        lab = M.labels[e]
        if e in tri:
            lab = primes[tri.index(e)]
        order.append(P.index(lab))
    return P.permute(order).relabel(M.labels, name or M.name)


def y_delta(M: Matroid, triad, name: str | None = None) -> Matroid:
    triad = tuple(M.index(x) if isinstance(x, str) else int(x) for x in triad)
    if len(triad) != 3 or not M.is_cocircuit_mask(sum(1 << e for e in triad)):
        raise PreconditionError("y_delta needs a triad")
    return delta_y(M.dual(), triad).dual().renamed(name or M.name)


def _fresh(M: Matroid, base: str) -> str:
    lab = base + "'"
    while lab in M.labels:
        lab += "'"
    return lab


def graph_delta_y(G: GraphSpec, tri) -> GraphSpec:
    """Replace the triangle edges by a new degree-3 vertex.

    The edge replacing a triangle edge joins the new vertex to the triangle
    vertex opposite that edge and keeps its label and position.
    """
    tri = [int(i) for i in tri]
    verts = set()
    for i in tri:
        verts.update(G.edges[i])
    if len(tri) != 3 or len(verts) != 3:
        raise PreconditionError("not a triangle of the graph")
    w = G.vertices
    edges = list(G.edges)
    for i in tri:
        (opp,) = verts - set(G.edges[i])
        edges[i] = (opp, w)
    return GraphSpec(w + 1, tuple(edges), G.labels, G.name)


def graph_y_delta(G: GraphSpec, star) -> GraphSpec:
    """Inverse of :func:`graph_delta_y` on the three edges at a degree-3 vertex."""
    star = [int(i) for i in star]
    ends = [set(G.edges[i]) for i in star]
    common = set.intersection(*ends)
    if len(common) != 1:
        raise PreconditionError("the edges must share one vertex")
    (w,) = common
    others = [next(iter(s - {w})) for s in ends]
    if len(set(others)) != 3:
        raise PreconditionError("not a star of three distinct neighbours")
    edges = list(G.edges)
    for k, i in enumerate(star):
        u, v = [others[j] for j in range(3) if j != k]
        edges[i] = (u, v)
    return GraphSpec(G.vertices, tuple(edges), G.labels, G.name)


# -- wheel attachments -----------------------------------------------------------------------


def _wheel_for_triangle(rank: int, s1: str, r1: str, s2: str, prefix: str) -> Matroid:
    W = wheel(rank)
    labels = []
    for lab in W.labels:
        labels.append({"s1": s1, "r1": r1, "s2": s2}.get(lab, prefix + lab))
    return W.relabel(labels)


def attach_wheels_to_spike(spec: WheelAttachmentSpec, check: bool = True) -> Matroid:
    """Glue wheels to a tip-cotip spike along triangles ``{t, x_i, y_i}``, deleting each ``x_i``."""
    if spec.line_size is not None:
        raise PreconditionError("this spec describes a common-spoke construction")
    q = spec.legs
    M = spike(q, tip=True, cotip=True)
    for i, rank in enumerate(spec.wheel_ranks, start=1):
        W = _wheel_for_triangle(rank, "t", f"x{i}", f"y{i}", f"w{i}_")
        M = gpc_triangle(M, W, ("t", f"x{i}", f"y{i}"))
        M = M.delete(1 << M.index(f"x{i}"))
    M = M.renamed(f"spike{q}+wheels{list(spec.wheel_ranks)}")
    if check and spec.wheel_ranks:
        fs = fans(M)
        t, s = M.index("t"), M.index("s")
        good = [f for f in fs if len(f) % 2 == 0 and set(f.ends) == {t, s}]
        if len(good) != q or len(fs) != q:
            raise AssertionError("wheel attachment did not produce q even fans with ends t and s")
    return M


def common_spoke_wheels(spec: WheelAttachmentSpec, delete_s: bool | None = None) -> Matroid:
    """Glue wheels to a line ``{s, t, l_1, ...}`` along triangles through ``{s, t}``.

    The extra line points are deleted afterwards, and ``s`` too when asked.
    """
    if spec.line_size is None:
        raise PreconditionError("this spec describes a spike attachment")
    if delete_s is None:
        delete_s = spec.delete_s
    m = spec.line_size
    extra = [f"l{j}" for j in range(1, m - 1)]
    M = uniform(2, m).relabel(["s", "t", *extra], "L")
    for i, rank in enumerate(spec.wheel_ranks):
        lj = extra[i % len(extra)]
        W = _wheel_for_triangle(rank, "s", lj, "t", f"w{i}_")
        M = gpc_triangle(M, W, ("s", lj, "t"))
    drop = [e for e, lab in enumerate(M.labels) if lab.startswith("l")]
    if delete_s:
        drop.append(M.index("s"))
    return M.delete(sum(1 << e for e in drop)).renamed("paddle" + ("\\s" if delete_s else ""))


# -- graph families -----------------------------------------------------------------------


def double_quad_spider_example(p: int = 3, alpha: int = 1, beta: int = 2) -> Matroid:
    """A 10-element rank-5 matroid whose elements ``p1..p4, q1..q4`` form a double-quad spider.

    The restriction to the spider is ``M(K_{2,4})`` (legs ``{p1,p2}``,
    ``{p3,p4}``, ``{q1,q2}``, ``{q3,q4}`` are the 2-edge paths), and the
    two extra points ``a, b`` lie on the line spanned by ``w1 - w2`` and
    ``w3 - w4``; any two distinct nonzero ``alpha, beta`` work over GF(p).
    """
    if not (0 < alpha < p and 0 < beta < p and alpha != beta):
        raise PreconditionError("alpha, beta must be distinct nonzero residues")
    cols = []
    for i in range(4):
        w = [0] * 4
        w[i] = -1
        cols.append([1, *w])  # u - w_i
        w = [0] * 4
        w[i] = 1
        cols.append([0, *w])  # w_i - v, with v at the origin
    for c in (alpha, beta):
        cols.append([0, 1, -1, c, -c])
    rows = [[col[k] % p for col in cols] for k in range(5)]
    labels = ("p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4", "a", "b")
    return Matroid.from_matrix(rows, p, labels=labels, name="DQS10")


def twisted_wheel(j: int, k: int) -> GraphSpec:
    """K4 with non-adjacent edges e=01 and f=23 subdivided j and k times.

    New vertices on e are joined to u=2 (an end of f), new vertices on f to
    v=0 (an end of e).
    """
    if j < 0 or k < 0:
        raise PreconditionError("j and k must be non-negative")
    edges = [(0, 2), (0, 3), (1, 2), (1, 3)]
    nv = 4
    path = [0]
    for _ in range(j):
        path.append(nv)
        edges.append((nv, 2))
        nv += 1
    path.append(1)
    edges += list(zip(path, path[1:]))
    path = [2]
    for _ in range(k):
        path.append(nv)
        edges.append((nv, 0))
        nv += 1
    path.append(3)
    edges += list(zip(path, path[1:]))
    return GraphSpec(nv, tuple(edges), None, f"TW({j},{k})")


def multidim_wheel(spoke_lengths, unhinged: bool = False) -> GraphSpec:
    """Path u-h-v plus parallel u-v paths, each internal vertex joined to h."""
    spoke_lengths = [int(m) for m in spoke_lengths]
    if len(spoke_lengths) < 3 or any(m < 1 for m in spoke_lengths):
        raise PreconditionError("need at least three spokes, each subdivided at least once")
    u, h, v = 0, 1, 2
    edges = [] if unhinged else [(u, h)]
    edges.append((h, v))
    nv = 3
    for m in spoke_lengths:
        path = [u]
        for _ in range(m):
            path.append(nv)
            edges.append((nv, h))
            nv += 1
        path.append(v)
        edges += list(zip(path, path[1:]))
    name = ("UMW" if unhinged else "MW") + str(tuple(spoke_lengths))
    return GraphSpec(nv, tuple(edges), None, name)


def unhinged_multidim_wheel(spoke_lengths) -> GraphSpec:
    return multidim_wheel(spoke_lengths, unhinged=True)


__all__ = [
    "FANO_LABELS",
    "GraphSpec",
    "WheelAttachmentSpec",
    "attach_wheels_to_spike",
    "common_spoke_wheels",
    "complete_bipartite_graph",
    "complete_graph",
    "cotip_coextension",
    "delta_y",
    "double_quad_spider_example",
    "fano",
    "free_extension",
    "gpc_triangle",
    "graph_delta_y",
    "graph_y_delta",
    "graphic",
    "k33k",
    "multidim_wheel",
    "non_fano",
    "spike",
    "spike_legs",
    "tip_extension",
    "truncate",
    "twisted_wheel",
    "two_sum",
    "uniform",
    "unhinged_multidim_wheel",
    "wheel",
    "whirl",
    "wheel_graph",
    "y_delta",
]

