"""Case analysis for pairs ``(M, N)``, the graphic variant, and the no-pair scan.

:func:`verify_main_theorem` looks for a witness of each outcome in turn:
an N-detachable pair, then a single exchange giving one, then a 3-separator
of one of the listed kinds.  Anything left over is reported as
``COUNTEREXAMPLE``, which would mean a bug somewhere in this package.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import constructions as C
from .connectivity import essential_elements, is_3_connected
from .errors import PreconditionError
from .isomorphism import find_isomorphism
from .matroid import Matroid
from .minors import delta_y_detachable, detachable_pairs, has_minor, is_wheel_or_whirl, minor_search
from .separators import (
    NON_GRAPHIC_KINDS,
    SeparatorCertificate,
    augmentations,
    detect_all,
    validate_certificate,
)

CASES = ("DETACHABLE_PAIR", "DELTA_Y_DETACHABLE", "SEPARATOR", "SMALL_EXCEPTION", "COUNTEREXAMPLE")

# kind -> (relation, bound) on |E(M)| - |E(N)|; None means unbounded
GAP_BOUNDS: dict[str, tuple[str, int] | None] = {
    "QUAD": ("==", 5),  # augmented quads only
    "VAMOS_LIKE_PRIMAL": ("==", 5),
    "VAMOS_LIKE_DUAL": ("==", 5),
    "TWISTED": ("<=", 7),
    "QUAD_PLUS_PAIR": ("<=", 7),
    "DOUBLE_QUAD_SPIDER": ("<=", 9),
    "SPIKE_LIKE": None,
}

THEOREM_KINDS = ("QUAD", "VAMOS_LIKE_PRIMAL", "VAMOS_LIKE_DUAL", "TWISTED", "QUAD_PLUS_PAIR", "DOUBLE_QUAD_SPIDER", "SPIKE_LIKE")

LARGE = 13


def gap_ok(kind: str, gap: int) -> bool:
    b = GAP_BOUNDS[kind]
    if b is None:
        return True
    rel, v = b
    return gap == v if rel == "==" else gap <= v


def threads() -> int:
    try:
        return max(1, int(os.environ.get("DETACHKIT_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, n_workers: int | None = None) -> list:
    """``map`` over a process pool; results come back in input order."""
    items = list(items)
    n_workers = threads() if n_workers is None else n_workers
    if n_workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n_workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * n_workers))))


# -- main theorem ----------------------------------------------------------------


@dataclass
class SeparatorWitness:
    cert: SeparatorCertificate
    P: int  # the set used, including the augmenting element if any
    gap: int
    bound_ok: bool
    outside: int  # least |E(M)-E(N) - P| over N-labellings, capped at 2

    def to_dict(self, M: Matroid) -> dict:
        return {
            "certificate": self.cert.to_dict(M),
            "P": sorted(M.labels[e] for e in range(M.n) if self.P >> e & 1),
            "size": self.P.bit_count(),
            "gap": self.gap,
            "gap_bound": _bound_text(self.cert.kind),
            "gap_bound_ok": self.bound_ok,
            "removed_outside_P": self.outside if self.outside < 2 else ">=2",
        }


def _bound_text(kind: str) -> str:
    b = GAP_BOUNDS.get(kind)
    return "none" if b is None else f"{b[0]} {b[1]}"


@dataclass
class TheoremOutcome:
    case: str
    kind: str | None = None
    evidence: dict = field(default_factory=dict)
    readings: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"case": self.case, "kind": self.kind, "evidence": self.evidence, "readings": self.readings}
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


def _outside(M: Matroid, N: Matroid, P: int) -> int:
    """0, 1 or 2 (meaning at least two): elements any N-labelling must remove outside ``P``."""
    S = minor_search(N)
    if S.find(M, allowed=P) is not None:
        return 0
    for e in range(M.n):
        if not P >> e & 1 and S.find(M, allowed=P | 1 << e) is not None:
            return 1
    return 2


def separator_witnesses(M: Matroid, N: Matroid) -> tuple[list[SeparatorWitness], list[SeparatorWitness]]:
    """Witnesses for the separator outcome, and augmentations of the other kinds.

    The first list holds augmented quads and the plain separators of the
    other kinds; the second holds augmentations of the non-quad kinds,
    which only the containment reading uses.
    """
    gap = M.n - N.n
    main, extra = [], []
    for cert in detect_all(M, THEOREM_KINDS):
        try:
            augs = augmentations(M, cert)
        except PreconditionError:
            augs = []
        if cert.kind == "QUAD":
            for z, side in augs:
                c = cert.augmented(z, side)
                P = cert.mask | 1 << z
                main.append(SeparatorWitness(c, P, gap, gap_ok("QUAD", gap), _outside(M, N, P)))
            continue
        main.append(SeparatorWitness(cert, cert.mask, gap, gap_ok(cert.kind, gap), _outside(M, N, cert.mask)))
        for z, side in augs:
            P = cert.mask | 1 << z
            extra.append(SeparatorWitness(cert.augmented(z, side), P, gap, gap_ok(cert.kind, gap), _outside(M, N, P)))
    return main, extra


def _check_pair_preconditions(M: Matroid, N: Matroid, min_gap: int = 5) -> None:
    if not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    if not is_3_connected(N):
        raise PreconditionError("N must be 3-connected")
    if N.n < 4:
        raise PreconditionError("need |E(N)| >= 4")
    if M.n - N.n < min_gap:
        raise PreconditionError(f"need |E(M)| - |E(N)| >= {min_gap}")
    if has_minor(M, N) is None:
        raise PreconditionError("M has no N-minor")


def verify_main_theorem(M: Matroid, N: Matroid, all_witnesses: bool = False) -> TheoremOutcome:
    """Find which outcome holds for ``(M, N)``; the first witness in the fixed order wins."""
    _check_pair_preconditions(M, N)
    gap = M.n - N.n
    found: list[TheoremOutcome] = []

    pairs = detachable_pairs(M, N, first_only=not all_witnesses)
    for p in pairs:
        assert p.evidence is not None and p.evidence.validate(M, N)
        found.append(TheoremOutcome("DETACHABLE_PAIR", None, {"pair": p.to_dict(M)}))
    if found and not all_witnesses:
        return found[0]

    hit = delta_y_detachable(M, N)
    if hit is not None:
        found.append(
            TheoremOutcome(
                "DELTA_Y_DETACHABLE",
                None,
                {
                    "op": hit.op,
                    "site": [M.labels[e] for e in hit.site],
                    "pair": hit.pair.to_dict(hit.matroid),
                },
            )
        )
        if not all_witnesses:
            return found[0]

    main, extra = separator_witnesses(M, N)
    readings = {
        "theorem": any(_theorem_reading(M, w) for w in main),
        "containment": any(_containment_reading(M, N, w) for w in main + extra),
        "small_joint": M.n < LARGE and any(N.n < w.P.bit_count() for w in main + extra),
        "small_alone": M.n < LARGE,
    }
    good = sorted((w for w in main if _theorem_reading(M, w)), key=lambda w: (w.outside, w.P.bit_count()))
    for w in good:
        found.append(TheoremOutcome("SEPARATOR", w.cert.kind, {"separator": w.to_dict(M)}, readings))
        if not all_witnesses:
            break
    if not good:
        small = [w for w in main + extra if N.n < w.P.bit_count()]
        if M.n < LARGE and small:
            w = min(small, key=lambda w: (w.outside, w.P.bit_count()))
            found.append(
                TheoremOutcome(
                    "SMALL_EXCEPTION",
                    w.cert.kind,
                    {"separator": w.to_dict(M), "size_M": M.n, "size_N": N.n, "size_P": w.P.bit_count()},
                    readings,
                )
            )
    if not found:
        ev = {"gap": gap, "candidates": [w.to_dict(M) for w in main + extra]}
        return TheoremOutcome("COUNTEREXAMPLE", None, ev, readings)
    if all_witnesses:
        first = found[0]
        first.witnesses = [o.to_dict() for o in found[1:]]
        return first
    return found[0]


def _theorem_reading(M: Matroid, w: SeparatorWitness) -> bool:
    """Kind-specific gap bound, plus containment up to one element when ``|E(M)| >= 13``."""
    return w.bound_ok and (M.n < LARGE or w.outside <= 1)


def _containment_reading(M: Matroid, N: Matroid, w: SeparatorWitness) -> bool:
    """``E(M)-E(N)`` inside ``P`` when ``|E(M)| >= 13``; otherwise ``|E(N)| < |P|``."""
    if M.n >= LARGE:
        return w.outside == 0
    return N.n < w.P.bit_count()


# -- graphic variant -------------------------------------------------------------


@dataclass
class GraphOutcome:
    case: str  # DETACHABLE_PAIR | DELTA_Y_DETACHABLE | NONE
    evidence: dict
    conjecture_case: str  # same cases, graph-native exchanges only
    conjecture_evidence: dict
    separator_bug: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "evidence": self.evidence,
            "conjecture_case": self.conjecture_case,
            "conjecture_evidence": self.conjecture_evidence,
            "separator_bug": self.separator_bug,
        }


def is_simple_3_connected_graph(G: C.GraphSpec) -> bool:
    import networkx as nx

    if not G.is_simple():
        return False
    g = nx.Graph(list(G.edges))
    g.add_nodes_from(range(G.vertices))
    g.remove_nodes_from([v for v in list(g.nodes) if g.degree(v) == 0])
    return g.number_of_nodes() >= 4 and nx.node_connectivity(g) >= 3


def _vertex_stars(G: C.GraphSpec) -> list[tuple[int, int, int]]:
    inc: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(G.edges):
        inc.setdefault(u, []).append(i)
        inc.setdefault(v, []).append(i)
    return [tuple(es) for v, es in sorted(inc.items()) if len(es) == 3]


def _graph_triangles(G: C.GraphSpec) -> list[tuple[int, int, int]]:
    out = []
    for a, b, c in combinations(range(len(G.edges)), 3):
        vs = set(G.edges[a]) | set(G.edges[b]) | set(G.edges[c])
        if len(vs) == 3:
            out.append((a, b, c))
    return out


def verify_graphic_theorem(G: C.GraphSpec, H: C.GraphSpec) -> GraphOutcome:
    if not is_simple_3_connected_graph(G) or not is_simple_3_connected_graph(H):
        raise PreconditionError("G and H must be simple 3-connected graphs")
    MG, MH = C.graphic(G), C.graphic(H)
    _check_pair_preconditions(MG, MH)
    bug = [c.to_dict(MG) for c in detect_all(MG, NON_GRAPHIC_KINDS)]

    case, ev = "NONE", {}
    pairs = detachable_pairs(MG, MH, first_only=True)
    if pairs:
        case, ev = "DETACHABLE_PAIR", {"pair": pairs[0].to_dict(MG)}
    else:
        hit = delta_y_detachable(MG, MH)
        if hit is not None:
            case = "DELTA_Y_DETACHABLE"
            ev = {"op": hit.op, "site": [MG.labels[e] for e in hit.site], "pair": hit.pair.to_dict(hit.matroid)}

    # graph-native reading: only exchanges that stay graphs (Y-Delta at vertex stars)
    if case == "DETACHABLE_PAIR":
        ccase, cev = case, ev
    else:
        ccase, cev = "NONE", {"note": "Y-Delta restricted to vertex stars; separating triads are not graph exchanges"}
        for op, sites, fn in (
            ("delta_y", _graph_triangles(G), C.graph_delta_y),
            ("y_delta", _vertex_stars(G), C.graph_y_delta),
        ):
            for site in sites:
                G2 = fn(G, site)
                if not G2.is_simple():
                    continue
                p = detachable_pairs(C.graphic(G2), MH, first_only=True, require_3c=False)
                if p:
                    ccase = "DELTA_Y_DETACHABLE"
                    cev = {"op": op, "site": [MG.labels[e] for e in site], "pair": p[0].to_dict(C.graphic(G2))}
                    break
            if ccase != "NONE":
                break
    return GraphOutcome(case, ev, ccase, cev, bug)


# -- no-pair scan ----------------------------------------------------------------------


def is_spike(M: Matroid) -> bool:
    """``2r`` elements, ``r >= 3``, partitioned into pairs whose two-pair unions are quads."""
    if M.n % 2 or M.n < 6 or M.r != M.n // 2:
        return False
    coc = M.cocircuit_set()
    quads = {c for c in M.circuit_masks() if c.bit_count() == 4 and c in coc}

    def rec(rest: int, legs: list[int]) -> bool:
        if not rest:
            return True
        a = rest & -rest
        for b in _bits(rest ^ a):
            L = a | 1 << b
            if all(L | x in quads for x in legs) and rec(rest ^ L, legs + [L]):
                return True
        return False

    return rec(M.full, [])


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _family_candidates(n: int):
    from .catalog import common_spoke_specs, wheel_attachment_specs

    for k in range(3, n // 3 + 1):
        if 3 * k == n:
            M = C.k33k(k)
            yield "K3k", {"k": k}, M
            yield "K3k_dual", {"k": k}, M.dual()
    for spec in wheel_attachment_specs(n):
        M = C.attach_wheels_to_spike(spec, check=False)
        if M.n == n:
            yield "wheels_on_spike", {"legs": spec.legs, "wheel_ranks": list(spec.wheel_ranks)}, M
    for spec in common_spoke_specs(n):
        M = C.common_spoke_wheels(spec, delete_s=True)
        if M.n == n:
            p = {"legs": spec.legs, "wheel_ranks": list(spec.wheel_ranks), "line_size": spec.line_size}
            yield "common_spoke_minus_s", p, M
            yield "common_spoke_minus_s_dual", p, M.dual()


def classify_no_pair(M: Matroid) -> list[dict]:
    """Families from the no-pair list that ``M`` belongs to (possibly several)."""
    out = []
    if is_wheel_or_whirl(M):
        out.append({"family": "wheel_or_whirl", "params": {"r": M.r}})
    if is_spike(M):
        out.append({"family": "spike", "params": {"legs": M.n // 2}})
    for fam, params, F in _family_candidates(M.n):
        if F.r == M.r and find_isomorphism(M, F) is not None:
            out.append({"family": fam, "params": params})
    return out


@dataclass
class ChainRecord:
    id: str
    n: int
    plain_pair: bool
    delta_y_pair: bool
    families: list
    non_essential: int

    @property
    def unclassified(self) -> bool:
        return not self.plain_pair and not self.delta_y_pair and not self.families

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "plain_pair": self.plain_pair,
            "delta_y_pair": self.delta_y_pair,
            "families": self.families,
            "non_essential": self.non_essential,
            "unclassified": self.unclassified,
        }


def chain_record(item: tuple[str, Matroid]) -> ChainRecord:
    cid, M = item
    if detachable_pairs(M, None, first_only=True):
        return ChainRecord(cid, M.n, True, False, [], -1)
    dy = delta_y_detachable(M, None) is not None
    fams = classify_no_pair(M)
    ne = M.n - len(essential_elements(M))
    return ChainRecord(cid, M.n, False, dy, fams, ne)


def chain_scan(n_max: int, catalog=None, n_min: int = 4) -> dict:
    """Scan catalog matroids for ones with no detachable pair and classify them."""
    if catalog is None:
        from .catalog import default_catalog

        catalog = default_catalog()
    if n_max > 12:
        raise PreconditionError("catalogs stop at 12 elements")
    items = [(e.id, e.matroid) for e in catalog.select(max_n=n_max, min_n=n_min)]
    if not items:
        raise PreconditionError("catalog has no matroids in range")
    recs = parallel_map(chain_record, items)
    no_pair = [r for r in recs if not r.plain_pair]
    return {
        "n_max": n_max,
        "scanned": len(recs),
        "no_plain_pair": [r.to_dict() for r in no_pair],
        "unclassified": [r.id for r in no_pair if r.unclassified],
    }


# -- catalog-level theorem runs ------------------------------------------------------


def _theorem_task(item):
    mid, M, nid, N = item
    if M.n - N.n < 5 or M.r < N.r or M.n - M.r < N.n - N.r:
        return None
    if has_minor(M, N) is None:
        return None
    out = verify_main_theorem(M, N)
    return {"M": mid, "N": nid, "outcome": out.to_dict()}


def theorem_pairs(catalog, max_m: int = 12, min_n: int = 4) -> list[tuple]:
    ms = catalog.select(max_n=max_m)
    ns = [e for e in catalog.select(min_n=min_n) if e.n <= max_m - 5]
    return [(m.id, m.matroid, n.id, n.matroid) for m in ms for n in ns if m.n - n.n >= 5]


def verify_catalog(catalog, minor: Matroid | None = None, max_m: int = 12) -> list[dict]:
    """Run :func:`verify_main_theorem` on every qualifying pair (or every M against ``minor``)."""
    if minor is None:
        items = theorem_pairs(catalog, max_m)
    else:
        items = [(e.id, e.matroid, minor.name, minor) for e in catalog.select(max_n=max_m)]
    return [r for r in parallel_map(_theorem_task, items) if r is not None]


def validate_outcome_certificate(M: Matroid, outcome: TheoremOutcome) -> bool:
    """Re-check the certificate inside a separator outcome against ``M``."""
    if outcome.case not in ("SEPARATOR", "SMALL_EXCEPTION"):
        return True
    d = outcome.evidence["separator"]["certificate"]
    roles = tuple((k, M.index(v)) for k, v in d["roles"].items())
    legs = tuple(tuple(M.index(x) for x in L) for L in d.get("legs", []))
    aug = M.index(d["aug"]) if "aug" in d else None
    cert = SeparatorCertificate(
        d["kind"], M.indices(d["elements"]), roles, legs, aug, d.get("aug_side"), None, d.get("extended", False)
    )
    return validate_certificate(M, cert)


__all__ = [
    "CASES",
    "GAP_BOUNDS",
    "ChainRecord",
    "GraphOutcome",
    "TheoremOutcome",
    "chain_scan",
    "classify_no_pair",
    "gap_ok",
    "is_simple_3_connected_graph",
    "is_spike",
    "parallel_map",
    "theorem_pairs",
    "validate_outcome_certificate",
    "verify_catalog",
    "verify_graphic_theorem",
    "verify_main_theorem",
]
