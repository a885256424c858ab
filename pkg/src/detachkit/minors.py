"""N-minor detection, N-labellings, switching and detachable pairs.

Minor search contracts only non-loops and deletes only non-coloops, so the
number of contractions is fixed at ``r(M) - r(N)`` and the number of
deletions at ``r*(M) - r*(N)``.  Elements are removed in increasing order,
which visits every (C, D) split once; leaf matroids are compared with N
through an isomorphism cache keyed by rank-table bytes.
"""

from __future__ import annotations

from collections import OrderedDict, deque
from dataclasses import dataclass, field
from itertools import combinations
from threading import RLock

import numpy as np

from .bits import bits_of, popcounts, spread_index, to_set, with_bit, without_bit
from .connectivity import is_3_connected, triads, triangles
from .errors import PreconditionError
from .isomorphism import IsoTarget, find_isomorphism
from .matroid import Matroid, check_limit

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class NLabelling:
    """``M / C \\ D`` is isomorphic to ``N`` under ``witness`` (M element -> N element)."""

    C: frozenset[int]
    D: frozenset[int]
    witness: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple:
        return (tuple(sorted(self.C)), tuple(sorted(self.D)))

    def mapping(self) -> dict[int, int]:
        return dict(self.witness)

    def validate(self, M: Matroid, N: Matroid) -> bool:
        if self.C & self.D:
            return False
        if len(self.C) + len(self.D) != M.n - N.n:
            return False
        minor = M.minor(contract=self.C, delete=self.D)
        kept = [e for e in range(M.n) if e not in self.C and e not in self.D]
        if self.witness:
            m = self.mapping()
            perm = [kept.index(x) for x, _ in sorted(m.items(), key=lambda kv: kv[1])]
            if sorted(m.values()) != list(range(N.n)):
                return False
            return np.array_equal(minor.permute(perm).table, N.table)
        return find_isomorphism(minor, N) is not None

    def to_dict(self, M: Matroid | None = None) -> dict:
        if M is None:
            return {"C": sorted(self.C), "D": sorted(self.D)}
        return {"C": sorted(M.labels[e] for e in self.C), "D": sorted(M.labels[e] for e in self.D)}


@dataclass(frozen=True)
class DetachablePair:
    pair: tuple[int, int]
    kind: str  # "contract" | "delete"
    evidence: NLabelling | None = None

    def labels(self, M: Matroid) -> tuple[str, str]:
        return (M.labels[self.pair[0]], M.labels[self.pair[1]])

    def result(self, M: Matroid) -> Matroid:
        m = 1 << self.pair[0] | 1 << self.pair[1]
        return M.contract(m) if self.kind == "contract" else M.delete(m)

    def to_dict(self, M: Matroid | None = None) -> dict:
        out = {"pair": list(self.pair) if M is None else list(self.labels(M)), "kind": self.kind}
        if self.evidence is not None:
            out["evidence"] = self.evidence.to_dict(M)
        return out


class LabellingList(list):
    """A list of labellings that remembers whether a cap cut it short."""

    truncated: bool = False


class MinorSearch:
    """Reusable N-minor search; the leaf cache persists across calls."""

    def __init__(self, N: Matroid):
        self.N = N
        self.target = IsoTarget(N)
        self.rN = N.r
        self.cN = N.n - N.r
        self.nbases = N.num_bases()
        self._leaf: dict[bytes, tuple[int, ...] | None] = {}
        self._lock = RLock()

    def leaf(self, T: np.ndarray) -> tuple[int, ...] | None:
        """Image in ``N`` of each element of the table's matroid, or ``None``."""
        key = T.tobytes()
        try:
            return self._leaf[key]
        except KeyError:
            pass
        n = self.N.n
        res = None
        if T.size == 1 << n and int(T[-1]) == self.rN:
            nb = int(np.count_nonzero((T == self.rN) & (popcounts(n) == self.rN)))
            if nb == self.nbases:
                iso = find_isomorphism(Matroid.from_table(T.copy()), self.N)
                if iso is not None:
                    res = tuple(iso[i] for i in range(n))
        with self._lock:
            self._leaf[key] = res
        return res

    def find(self, M: Matroid, allowed: int | None = None) -> NLabelling | None:
        """An N-labelling of ``M``; with ``allowed``, only those elements may be removed."""
        check_limit(M.n, "minor search")
        cb = M.r - self.rN
        db = (M.n - M.r) - self.cN
        if cb < 0 or db < 0:
            return None
        allowed = M.full if allowed is None else allowed & M.full
        if allowed.bit_count() < cb + db:
            return None
        hit = self._rec(M.table, list(range(M.n)), 0, cb, db, 0, 0, allowed)
        if hit is None:
            return None
        C, D, alive, images = hit
        return NLabelling(to_set(C), to_set(D), tuple(zip(alive, images)))

    def _rec(self, T, alive, start, cb, db, C, D, allowed):
        if cb == 0 and db == 0:
            images = self.leaf(T)
            if images is None:
                return None
            return C, D, alive, images
        n = len(alive)
        r = int(T[-1])
        full = (1 << n) - 1
        for i in range(start, n):
            if n - i < cb + db:
                break
            if not allowed >> alive[i] & 1:
                continue
            rest = alive[:i] + alive[i + 1:]
            if cb and T[1 << i] != 0:
                child = T[with_bit(n, i)] - T[1 << i]
                hit = self._rec(child, rest, i, cb - 1, db, C | 1 << alive[i], D, allowed)
                if hit is not None:
                    return hit
            if db and T[full ^ 1 << i] == r:
                child = T[without_bit(n, i)]
                hit = self._rec(child, rest, i, cb, db - 1, C, D | 1 << alive[i], allowed)
                if hit is not None:
                    return hit
        return None


_SEARCHES: "OrderedDict[tuple, MinorSearch]" = OrderedDict()
_SEARCH_LOCK = RLock()


def minor_search(N: Matroid) -> MinorSearch:
    key = (N.n, N.table.tobytes())
    with _SEARCH_LOCK:
        s = _SEARCHES.get(key)
        if s is None:
            s = MinorSearch(N)
            _SEARCHES[key] = s
            while len(_SEARCHES) > 64:
                _SEARCHES.popitem(last=False)
        else:
            _SEARCHES.move_to_end(key)
        return s


def has_minor(M: Matroid, N: Matroid) -> NLabelling | None:
    """Some N-labelling of ``M``, or ``None`` when ``M`` has no N-minor."""
    if N.n > M.n:
        return None
    return minor_search(N).find(M)


def all_labellings(M: Matroid, N: Matroid, cap: int = DEFAULT_CAP) -> LabellingList:
    """Every disjoint ``(C, D)`` with ``M/C\\D`` isomorphic to ``N``, in lexicographic order."""
    check_limit(M.n, "labelling enumeration")
    out = LabellingList()
    if N.n > M.n:
        return out
    search = minor_search(N)
    rk = M.table
    found = []
    for K in combinations(range(M.n), N.n):
        kmask = sum(1 << e for e in K)
        rest = tuple(e for e in range(M.n) if not kmask >> e & 1)
        base = spread_index(K)
        for cc in range(1 << len(rest)):
            C = 0
            for j, e in enumerate(rest):
                if cc >> j & 1:
                    C |= 1 << e
            rc = int(rk[C])
            if int(rk[kmask | C]) - rc != N.r:
                continue
            T = (rk[base | C] - rc).astype(np.int8)
            images = search.leaf(T)
            if images is None:
                continue
            D = (M.full ^ kmask) ^ C
            found.append(NLabelling(to_set(C), to_set(D), tuple(zip(K, images))))
            if len(found) >= cap:
                out.truncated = True
                break
        if out.truncated:
            break
    found.sort(key=lambda L: L.key)
    out.extend(found)
    return out


def _is_parallel_or_series(M: Matroid, x: int, y: int, C: int, D: int) -> bool:
    m = 1 << x | 1 << y
    sub = M.minor(contract=C & ~m, delete=D & ~m)
    kept = [e for e in range(M.n) if not ((C | D) & ~m) >> e & 1]
    a, b = kept.index(x), kept.index(y)
    pair = 1 << a | 1 << b
    return sub.is_circuit_mask(pair) or sub.is_cocircuit_mask(pair)


def switch_class(M: Matroid, N: Matroid, L: NLabelling, cap: int = DEFAULT_CAP) -> LabellingList:
    """Closure of ``{L}`` under switching the labels of parallel or series pairs.

    A contract-label ``c`` and delete-label ``d`` may be swapped when
    ``{c, d}`` is a parallel or series pair of ``M/(C-c)\\(D-d)``; swapping
    two such elements is an automorphism there, so the result is again an
    N-labelling.  Each member is re-validated.
    """
    seen = {L.key: L}
    queue = deque([L])
    out = LabellingList()
    while queue:
        cur = queue.popleft()
        C = sum(1 << e for e in cur.C)
        D = sum(1 << e for e in cur.D)
        for c in sorted(cur.C):
            for d in sorted(cur.D):
                if not _is_parallel_or_series(M, c, d, C, D):
                    continue
                nC = (cur.C - {c}) | {d}
                nD = (cur.D - {d}) | {c}
                new = NLabelling(frozenset(nC), frozenset(nD))
                if new.key in seen:
                    continue
                if not new.validate(M, N):
                    raise AssertionError("switching produced an invalid labelling")
                seen[new.key] = new
                queue.append(new)
                if len(seen) >= cap:
                    out.truncated = True
                    queue.clear()
                    break
            if out.truncated:
                break
    out.extend(sorted(seen.values(), key=lambda x: x.key))
    return out


@dataclass(frozen=True)
class ElementFlags:
    contractible: bool
    deletable: bool

    @property
    def doubly_labelled(self) -> bool:
        return self.contractible and self.deletable


def is_deletable(M: Matroid, N: Matroid, e: int) -> bool:
    return has_minor(M.delete(1 << e), N) is not None


def is_contractible(M: Matroid, N: Matroid, e: int) -> bool:
    return has_minor(M.contract(1 << e), N) is not None


def classify_elements(M: Matroid, N: Matroid) -> dict[int, ElementFlags]:
    """Per element: is it N-contractible, N-deletable, or both."""

    def build():
        if has_minor(M, N) is None:
            raise PreconditionError("M has no N-minor")
        return {e: ElementFlags(is_contractible(M, N, e), is_deletable(M, N, e)) for e in range(M.n)}

    return M._cached(("classify", N.n, N.table.tobytes()), build)


# -- detachable pairs ------------------------------------------------------------------


def detachable_pairs(M: Matroid, N: Matroid | None = None, first_only: bool = False, require_3c: bool = True) -> list[DetachablePair]:
    """Pairs whose joint contraction or deletion is 3-connected (with an N-minor)."""
    if require_3c and not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    check_limit(M.n, "detachable pair search")
    out = []
    for x, y in combinations(range(M.n), 2):
        m = 1 << x | 1 << y
        for kind in ("contract", "delete"):
            R = M.contract(m) if kind == "contract" else M.delete(m)
            if not is_3_connected(R):
                continue
            ev = None
            if N is not None:
                lab = has_minor(R, N)
                if lab is None:
                    continue
                kept = [e for e in range(M.n) if not m >> e & 1]
                C = {kept[i] for i in lab.C}
                D = {kept[i] for i in lab.D}
                if kind == "contract":
                    C |= {x, y}
                else:
                    D |= {x, y}
                ev = NLabelling(frozenset(C), frozenset(D), tuple((kept[a], b) for a, b in lab.witness))
            out.append(DetachablePair((x, y), kind, ev))
            if first_only:
                return out
    return out


def unfortunate_sets(M: Matroid, N: Matroid) -> list[tuple[int, str]]:
    """Triangles and triads where no pair can be removed in any of the four ways keeping an N-minor."""
    out = []
    for kind, sets in (("triangle", triangles(M)), ("triad", triads(M))):
        for T in sets:
            ok = True
            for a, b in combinations(bits_of(T), 2):
                ma, mb = 1 << a, 1 << b
                for c, d in ((ma | mb, 0), (ma, mb), (mb, ma), (0, ma | mb)):
                    if has_minor(M.minor(contract=c, delete=d), N) is not None:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append((T, kind))
    return out


def all_unfortunate(M: Matroid, N: Matroid) -> bool:
    n_sets = len(triangles(M)) + len(triads(M))
    return len(unfortunate_sets(M, N)) == n_sets


def is_wheel_or_whirl(M: Matroid) -> bool:
    from .constructions import wheel, whirl

    if M.n != 2 * M.r or M.r < 2:
        return False
    return find_isomorphism(M, wheel(M.r)) is not None or find_isomorphism(M, whirl(M.r)) is not None


@dataclass(frozen=True)
class SplitterStep:
    d: int
    d2: int
    side: str  # "delete" or "contract-in-dual"


def splitter_step(M: Matroid, N: Matroid) -> SplitterStep | None:
    """Find ``d, d'`` with ``M0\\d`` 3-connected and ``M0\\d\\d'`` having an ``N0``-minor.

    ``(M0, N0)`` ranges over ``(M, N)`` and ``(M*, N*)``.  ``None`` means the
    exhaustive search failed, which would contradict the existence claim.
    """
    if not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    if M.n - N.n < 3:
        raise PreconditionError("need |E(M)| - |E(N)| >= 3")
    if has_minor(M, N) is None:
        raise PreconditionError("M has no N-minor")
    if is_wheel_or_whirl(M):
        raise PreconditionError("wheels and whirls are excluded")
    if not all_unfortunate(M, N):
        raise PreconditionError("every triangle and triad must be unfortunate")
    for M0, N0, side in ((M, N, "delete"), (M.dual(), N.dual(), "contract-in-dual")):
        for d in range(M0.n):
            Md = M0.delete(1 << d)
            if not is_3_connected(Md):
                continue
            for d2 in range(M0.n):
                if d2 == d:
                    continue
                if has_minor(M0.delete(1 << d | 1 << d2), N0) is not None:
                    return SplitterStep(d, d2, side)
    return None


@dataclass(frozen=True)
class ExchangeHit:
    op: str  # "delta_y" | "y_delta"
    site: tuple[int, int, int]
    matroid: Matroid = field(compare=False)
    pair: DetachablePair


def delta_y_detachable(M: Matroid, N: Matroid) -> ExchangeHit | None:
    """First triangle (then triad) whose exchange yields a matroid with an N-detachable pair."""
    from .constructions import delta_y, y_delta

    if not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    for op, sets, fn in (("delta_y", triangles(M), delta_y), ("y_delta", triads(M), y_delta)):
        for T in sets:
            site = bits_of(T)
            M2 = fn(M, site)
            pairs = detachable_pairs(M2, N, first_only=True, require_3c=False)
            if pairs:
                return ExchangeHit(op, site, M2, pairs[0])
    return None


__all__ = [
    "DetachablePair",
    "ElementFlags",
    "ExchangeHit",
    "LabellingList",
    "MinorSearch",
    "NLabelling",
    "SplitterStep",
    "all_labellings",
    "all_unfortunate",
    "classify_elements",
    "delta_y_detachable",
    "detachable_pairs",
    "has_minor",
    "is_contractible",
    "is_deletable",
    "is_wheel_or_whirl",
    "splitter_step",
    "switch_class",
    "unfortunate_sets",
]
