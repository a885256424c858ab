"""Catalogs of small 3-connected matroids.

The exhaustive part grows size by size.  By the wheels-and-whirls theorem,
every 3-connected matroid on ``n + 1 >= 5`` elements is a wheel, a whirl,
or a single-element extension or coextension of a 3-connected matroid on
``n`` elements.  Since each level is closed under duality, coextensions
are the duals of extensions, so it is enough to extend every matroid of
the previous level and add the duals of the survivors.

Isomorph rejection buckets candidates by :func:`invariant_key` and runs a
full isomorphism test only inside a bucket.

Named families up to twelve elements are added on top; they are tagged
with their family name and parameters.
"""

from __future__ import annotations

import gzip
import json
import logging
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import constructions as C
from .connectivity import is_3_connected
from .errors import DetachkitError, PreconditionError
from .example import build_example
from .extensions import single_element_extensions
from .isomorphism import find_isomorphism, invariant_key
from .matroid import Matroid

log = logging.getLogger(__name__)

CATALOG_RESOURCE = "catalog.json.gz"
CATALOG_VERSION = 1
EXHAUSTIVE_MAX = 8
FAMILY_MAX = 12


@dataclass
class CatalogEntry:
    id: str
    matroid: Matroid
    source: str  # "exhaustive" | "family"
    family: str | None = None
    params: dict = field(default_factory=dict)
    graph: C.GraphSpec | None = None
    aliases: list[dict] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.matroid.n

    @property
    def graphic(self) -> bool:
        return self.graph is not None

    def to_dict(self) -> dict:
        M = self.matroid
        out = {
            "id": self.id,
            "n": M.n,
            "r": M.r,
            "labels": list(M.labels),
            "bases": [[e for e in range(M.n) if b >> e & 1] for b in M.basis_masks()],
            "source": self.source,
            "family": self.family,
            "params": self.params,
        }
        if self.aliases:
            out["aliases"] = self.aliases
        if self.graph is not None:
            out["graph"] = {"vertices": self.graph.vertices, "edges": [list(e) for e in self.graph.edges]}
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "CatalogEntry":
        n = d["n"]
        bases = [sum(1 << e for e in b) for b in d["bases"]]
        M = Matroid(bases, n, labels=d["labels"], name=d["id"], validate=False)
        g = d.get("graph")
        G = C.GraphSpec(g["vertices"], [tuple(e) for e in g["edges"]], tuple(d["labels"])) if g else None
        return cls(d["id"], M, d["source"], d.get("family"), d.get("params") or {}, G, d.get("aliases") or [])


class IsoBuckets:
    """A set of matroids up to isomorphism, each carrying an optional payload."""

    def __init__(self):
        self._b: dict[int, list[tuple[Matroid, object]]] = {}

    def _lookup(self, M: Matroid, key: int):
        for other, payload in self._b.get(key, ()):
            if other.n == M.n and find_isomorphism(M, other) is not None:
                return other, payload
        return None

    def add(self, M: Matroid, payload=None) -> bool:
        key = invariant_key(M)
        if self._lookup(M, key) is not None:
            return False
        self._b.setdefault(key, []).append((M, payload))
        return True

    def find(self, M: Matroid):
        """``(representative, payload)`` of the class of ``M``, or ``None``."""
        return self._lookup(M, invariant_key(M))

    def __len__(self) -> int:
        return sum(len(b) for b in self._b.values())


def _canon_labels(M: Matroid, name: str) -> Matroid:
    return M.relabel([str(i) for i in range(M.n)], name)


def exhaustive_levels(n_max: int = EXHAUSTIVE_MAX, progress: bool = False) -> dict[int, list[Matroid]]:
    """All 3-connected matroids on 4..n_max elements, up to isomorphism, by size."""
    levels: dict[int, list[Matroid]] = {4: [_canon_labels(C.uniform(2, 4), "U2,4")]}
    for n in range(5, n_max + 1):
        t0 = time.perf_counter()
        seen = IsoBuckets()
        out: list[Matroid] = []
        for M in levels[n - 1]:
            for E in single_element_extensions(M, label=str(M.n), simple=True):
                if E.r < 2 or not is_3_connected(E):
                    continue
                if seen.add(E):
                    out.append(E)
                    D = E.dual()
                    if seen.add(D):
                        out.append(D)
        if n % 2 == 0:
            for W in (C.wheel(n // 2), C.whirl(n // 2)):
                W = _canon_labels(W, W.name)
                if seen.add(W):
                    out.append(W)
        levels[n] = out
        if progress:
            log.info("n=%d: %d matroids in %.1fs", n, len(out), time.perf_counter() - t0)
    return levels


def _family_members(max_n: int = FAMILY_MAX):
    """(family, params, matroid, graph or None) for every named family member up to ``max_n``."""
    for r in range(3, max_n // 2 + 1):
        yield "wheel", {"r": r}, C.wheel(r), C.wheel_graph(r)
        yield "whirl", {"r": r}, C.whirl(r), None
    for k in range(3, 5):
        if 3 * k <= max_n:
            G = C.complete_bipartite_graph(3, k)
            M = C.graphic(G, name=f"M(K3,{k})")
            yield "K3k", {"k": k}, M, G
            yield "K3k_dual", {"k": k}, M.dual().renamed(f"M*(K3,{k})"), None
    for t in range(3, max_n // 2 + 1):
        for tip in (False, True):
            for cotip in (False, True):
                if 2 * t + tip + cotip <= max_n:
                    yield "spike", {"t": t, "tip": tip, "cotip": cotip}, C.spike(t, tip, cotip), None
    yield "Q6", {}, C.spike(2, True, True), None
    yield "fano", {}, C.fano(), None
    yield "non_fano", {}, C.non_fano(), None
    for n in range(5, 8):
        G = C.complete_graph(n)
        if len(G.edges) <= max_n:
            yield "complete", {"n": n}, C.graphic(G, name=f"M(K{n})"), G
    for spec in wheel_attachment_specs(max_n):
        M = C.attach_wheels_to_spike(spec)
        yield "wheels_on_spike", _spec_params(spec), M, None
    for spec in common_spoke_specs(max_n):
        for ds in (False, True):
            M = C.common_spoke_wheels(spec, delete_s=ds)
            if M.n <= max_n and is_3_connected(M):
                p = _spec_params(spec) | {"delete_s": ds}
                yield "common_spoke", p, M, None
                if ds:
                    yield "common_spoke_dual", p, M.dual().renamed(M.name + "*"), None
    for j in range(0, 4):
        for k in range(j, 4):
            G = C.twisted_wheel(j, k)
            if len(G.edges) <= max_n:
                yield "twisted_wheel", {"j": j, "k": k}, C.graphic(G, name=f"TW({j},{k})"), G
    for lengths in _spoke_length_tuples(max_n):
        G = C.unhinged_multidim_wheel(lengths)
        if len(G.edges) <= max_n:
            yield "unhinged_multidim_wheel", {"lengths": list(lengths)}, C.graphic(G, name=f"UMW{lengths}"), G
    if max_n >= 10:
        yield "spider_example", {"p": 3}, C.double_quad_spider_example(), None
    for G in simple_3_connected_graphs(max_n):
        yield "graph", {"edges": [list(e) for e in G.edges]}, C.graphic(G, name=G.name), G
    for reading in ("A", "B"):
        M, _, _ = build_example(reading)
        yield "example", {"reading": reading}, M, None


def simple_3_connected_graphs(max_edges: int) -> list[C.GraphSpec]:
    """Every simple 3-connected graph with at most ``max_edges`` edges, up to isomorphism.

    The networkx atlas covers up to 7 vertices.  Minimum degree 3 forces
    ``3v <= 2|E|``, so with at most 12 edges the only other graphs are the
    cubic ones on 8 vertices, enumerated directly.
    """
    import networkx as nx

    if max_edges > 12:
        raise PreconditionError("graph enumeration is complete only up to 12 edges")
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() < 4:
            continue
        if g.number_of_edges() > max_edges or nx.node_connectivity(g) < 3:
            continue
        edges = sorted(tuple(sorted(e)) for e in g.edges())
        out.append(C.GraphSpec(g.number_of_nodes(), edges, name=f"G{g.number_of_nodes()}:{len(out)}"))
    if max_edges >= 12:
        for edges in cubic_graphs(8):
            g = nx.Graph(edges)
            if nx.node_connectivity(g) >= 3:
                out.append(C.GraphSpec(8, edges, name=f"G8:{len(out)}"))
    return out


def cubic_graphs(v: int) -> list[list[tuple[int, int]]]:
    """Simple cubic graphs on ``v`` vertices, one per isomorphism class."""
    import networkx as nx

    found: list = []

    def rec(deg: list[int], edges: list[tuple[int, int]]):
        u = next((i for i in range(v) if deg[i] < 3), None)
        if u is None:
            g = nx.Graph(edges)
            if not any(nx.is_isomorphic(g, h) for h in found):
                found.append(g)
            return
        used = {b for a, b in edges if a == u} | {a for a, b in edges if b == u}
        for w in range(u + 1, v):
            if deg[w] < 3 and w not in used:
                deg[u] += 1
                deg[w] += 1
                rec(deg, edges + [(u, w)])
                deg[u] -= 1
                deg[w] -= 1

    # relabel so the neighbours of vertex 0 are 1, 2, 3
    rec([3, 1, 1, 1] + [0] * (v - 4), [(0, 1), (0, 2), (0, 3)])
    return sorted(sorted(tuple(sorted(e)) for e in g.edges()) for g in found)


def wheel_attachment_specs(max_n: int):
    """Specs of wheels-on-spike instances with at most ``max_n`` elements."""
    out = []
    for legs in range(2, max_n // 2 + 1):
        base = 2 * legs + 2
        if base > max_n:
            break
        for p in range(0, legs + 1):
            for ranks in _nondecreasing(p, 3, 3 + (max_n - base) // 2):
                # each wheel of rank k adds 2k - 3 elements and removes x_i
                size = base + sum(2 * k - 4 for k in ranks)
                if size <= max_n:
                    out.append(C.WheelAttachmentSpec(legs=legs, wheel_ranks=tuple(ranks)))
    return out


def common_spoke_specs(max_n: int):
    out = []
    for m in range(3, 6):
        for w in range(3, 6):
            for ranks in _nondecreasing(w, 3, 3 + max_n // 2):
                size = 2 + sum(2 * k - 3 for k in ranks)
                if size <= max_n + 1:
                    out.append(C.WheelAttachmentSpec(legs=w, wheel_ranks=tuple(ranks), line_size=m))
    return out


def _nondecreasing(length: int, lo: int, hi: int):
    if length == 0:
        yield ()
        return
    for first in range(lo, hi + 1):
        for rest in _nondecreasing(length - 1, first, hi):
            yield (first,) + rest


def _spoke_length_tuples(max_n: int):
    for k in range(3, 5):
        for lengths in _nondecreasing(k, 1, 3):
            yield lengths


def _spec_params(spec: C.WheelAttachmentSpec) -> dict:
    d = {"legs": spec.legs, "wheel_ranks": list(spec.wheel_ranks)}
    if spec.line_size is not None:
        d["line_size"] = spec.line_size
    return d


class Catalog:
    def __init__(self, entries: list[CatalogEntry], exhaustive_max: int = EXHAUSTIVE_MAX):
        self.entries = entries
        self.exhaustive_max = exhaustive_max
        self._by_id = {e.id: e for e in entries}

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: str) -> CatalogEntry:
        return self._by_id[key]

    def matroids(self, max_n: int | None = None, min_n: int = 0) -> list[Matroid]:
        return [e.matroid for e in self.select(max_n, min_n)]

    def select(self, max_n: int | None = None, min_n: int = 0, source: str | None = None) -> list[CatalogEntry]:
        return [
            e
            for e in self.entries
            if e.n >= min_n and (max_n is None or e.n <= max_n) and (source is None or e.source == source)
        ]

    def graphic_entries(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.graphic]

    def to_json(self) -> dict:
        return {
            "version": CATALOG_VERSION,
            "exhaustive_max": self.exhaustive_max,
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Catalog":
        if d.get("version") != CATALOG_VERSION:
            raise DetachkitError(f"unsupported catalog version {d.get('version')}")
        return cls([CatalogEntry.from_dict(x) for x in d["entries"]], d["exhaustive_max"])

    def save(self, path) -> None:
        data = json.dumps(self.to_json(), separators=(",", ":")).encode()
        Path(path).write_bytes(gzip.compress(data, mtime=0))

    @classmethod
    def load(cls, path) -> "Catalog":
        return cls.from_json(json.loads(gzip.decompress(Path(path).read_bytes())))


def build_catalog(exhaustive_max: int = EXHAUSTIVE_MAX, family_max: int = FAMILY_MAX, progress: bool = False) -> Catalog:
    entries: list[CatalogEntry] = []
    known = IsoBuckets()
    levels = exhaustive_levels(exhaustive_max, progress)
    for n in sorted(levels):
        for i, M in enumerate(levels[n]):
            cid = f"x{n}.{i}"
            e = CatalogEntry(cid, _canon_labels(M, cid), "exhaustive")
            known.add(e.matroid, e)
            entries.append(e)
    counter: dict[str, int] = {}
    extra = []
    if exhaustive_max >= 8 and family_max >= 9:
        extra = [("separator_example", {"kind": k}, M, None) for k, M in separator_examples(levels[8])]
    for fam, params, M, G in list(_family_members(family_max)) + extra:
        if M.n > family_max or not is_3_connected(M):
            continue
        hit = known.find(M)
        if hit is not None:
            e = hit[1]
            if e.family is None:
                e.family, e.params = fam, params
            elif (fam, params) != (e.family, e.params):
                e.aliases.append({"family": fam, "params": params})
            if G is not None and e.graph is None:
                e.graph = _graph_for(G, find_isomorphism(M, e.matroid), e.matroid)
            continue
        k = counter.get(fam, 0)
        counter[fam] = k + 1
        cid = f"{fam}.{k}"
        e = CatalogEntry(cid, M.renamed(cid), "family", fam, params, G)
        known.add(e.matroid, e)
        entries.append(e)
    return Catalog(entries, exhaustive_max)


SEPARATOR_EXAMPLE_KINDS = ("TWISTED", "QUAD_PLUS_PAIR", "VAMOS_LIKE_PRIMAL", "VAMOS_LIKE_DUAL")


def separator_examples(eight: list[Matroid]) -> list[tuple[str, Matroid]]:
    """One 9-element instance per kind with three elements outside the separator.

    The first 3-connected single-element extension (or coextension) of an
    8-element matroid that keeps a separator of the kind is taken.
    """
    from .separators import detect_all

    out = []
    for kind in SEPARATOR_EXAMPLE_KINDS:
        hit = None
        for M in eight:
            if not detect_all(M, [kind]):
                continue
            for base, dualise in ((M, False), (M.dual(), True)):
                for E in single_element_extensions(base, label=str(M.n), simple=True):
                    X = E.dual() if dualise else E
                    if is_3_connected(X) and detect_all(X, [kind]):
                        hit = X
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is not None:
            out.append((kind, hit.renamed(f"sep9-{kind}")))
    return out


def _graph_for(G: C.GraphSpec, iso: dict[int, int], target: Matroid) -> C.GraphSpec:
    """Reorder the edges of ``G`` so edge ``iso[i]`` of the target is edge ``i`` of ``G``."""
    edges = [None] * len(G.edges)
    for i, j in iso.items():
        edges[j] = G.edges[i]
    return C.GraphSpec(G.vertices, edges, target.labels, G.name)


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    """The shipped catalog, built and cached on first use if the resource is missing."""
    global _DEFAULT
    if _DEFAULT is None:
        try:
            ref = resources.files("detachkit").joinpath("data", CATALOG_RESOURCE)
            with resources.as_file(ref) as p:
                _DEFAULT = Catalog.load(p)
        except (FileNotFoundError, OSError):
            log.info("catalog resource missing; building")
            _DEFAULT = build_catalog()
    return _DEFAULT


__all__ = [
    "Catalog",
    "CatalogEntry",
    "IsoBuckets",
    "build_catalog",
    "default_catalog",
    "exhaustive_levels",
    "simple_3_connected_graphs",
    "wheel_attachment_specs",
]
