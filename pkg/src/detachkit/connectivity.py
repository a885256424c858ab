"""Connectivity function, separations, fans and related predicates.

Everything here runs on the full rank table, so one pass over the
``2**n`` subsets answers questions about all separations at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits_of, popcounts, without_bit
from .errors import PreconditionError
from .matroid import Matroid, check_limit, cosimplify, simplify


@dataclass(frozen=True)
class SeparationWitness:
    side: frozenset[int]
    lam: int
    exact: bool
    kind: str = "plain"  # plain | vertical | cyclic | path
    pivot: int | None = None
    role: str | None = None  # guts | coguts

    def to_dict(self) -> dict:
        return {
            "side": sorted(self.side),
            "lambda": self.lam,
            "exact": self.exact,
            "kind": self.kind,
            "pivot": self.pivot,
            "role": self.role,
        }


@dataclass(frozen=True)
class Fan:
    elements: tuple[int, ...]
    first: str  # kind of the first triple: "triangle" or "triad"
    maximal: bool = True

    @property
    def ends(self) -> tuple[int, int]:
        return (self.elements[0], self.elements[-1])

    def __len__(self) -> int:
        return len(self.elements)


def lambda_(M: Matroid, X) -> int:
    """``r(X) + r(E-X) - r(M)``."""
    m = M._mask(X)
    return M.rank_mask(m) + M.rank_mask(M.full ^ m) - M.r


def lambda_dual_form(M: Matroid, X) -> int:
    """``r(X) + r*(X) - |X|``, computed independently of :func:`lambda_`."""
    m = M._mask(X)
    return M.rank_mask(m) + M.corank_mask(m) - m.bit_count()


def lambda_table(M: Matroid) -> np.ndarray:
    def build():
        rk = M.table.astype(np.int16)
        lam = (rk + rk[::-1] - M.r).astype(np.int8)
        lam.setflags(write=False)
        return lam

    return M._cached("lambda", build)


def enumerate_k_separations(M: Matroid, k: int) -> list[SeparationWitness]:
    """All k-separations, each reported once by the side containing element 0."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    check_limit(M.n, "separation enumeration")
    if M.n == 0:
        return []
    lam = lambda_table(M)
    pc = popcounts(M.n)
    masks = np.arange(1 << M.n, dtype=np.int64)
    sel = (lam <= k - 1) & (pc >= k) & (M.n - pc >= k) & (masks & 1 == 1)
    return [
        SeparationWitness(frozenset(bits_of(int(x))), int(lam[x]), int(lam[x]) == k - 1)
        for x in np.flatnonzero(sel)
    ]


def is_n_connected(M: Matroid, n: int) -> bool:
    """True iff ``M`` has no k-separation for any ``k < n``."""
    if n <= 1 or M.n == 0:
        return True
    lam = lambda_table(M)
    pc = popcounts(M.n)
    small = np.minimum(pc, M.n - pc)
    return not bool(np.any((lam < small) & (lam < n - 1)))


def is_3_connected(M: Matroid) -> bool:
    return M._cached("3conn", lambda: is_n_connected(M, 3))


def _pivot_separations(M: Matroid, z: int, kind: str) -> list[SeparationWitness]:
    n = M.n
    if not 0 <= z < n:
        raise PreconditionError(f"element {z} out of range")
    if n < 7:
        return []
    rk = M.table
    lam = lambda_table(M)
    full = M.full
    zb = 1 << z
    X = without_bit(n, z)
    Y = full ^ zb ^ X
    Xz = X | zb
    Yz = Y | zb
    ok = (lam[Xz] <= 2) & (lam[X] <= 2)
    ok &= (rk[X] >= 3) & (rk[Y] >= 3) & (rk[Xz] >= 3) & (rk[Yz] >= 3)
    ok &= (rk[Xz] == rk[X]) & (rk[Yz] == rk[Y])
    rest = full ^ zb
    ok &= (X & (rest & -rest)) != 0
    role = "guts" if kind == "vertical" else "coguts"
    return [
        SeparationWitness(frozenset(bits_of(int(x))), int(lam[x]), int(lam[x]) == 2, kind, z, role)
        for x in X[ok]
    ]


def vertical_3_separations(M: Matroid, z: int) -> list[SeparationWitness]:
    """Partitions ``(X, {z}, Y)`` that are vertical 3-separations; ``X`` holds the least element."""
    return _pivot_separations(M, z, "vertical")


def cyclic_3_separations(M: Matroid, z: int) -> list[SeparationWitness]:
    """Vertical 3-separations of the dual, relabelled as cyclic ones of ``M``."""
    return _pivot_separations(M.dual(), z, "cyclic")


def si_not_3_connected(M: Matroid, z: int) -> bool:
    S, _ = simplify(M.contract(1 << z))
    return not is_3_connected(S)


def co_not_3_connected(M: Matroid, z: int) -> bool:
    S, _ = cosimplify(M.delete(1 << z))
    return not is_3_connected(S)


def guts_coguts(M: Matroid, X, e: int) -> str:
    """Classify ``e`` against the partition ``(X, {e}, E - X - e)``."""
    xm = M._mask(X)
    if xm >> e & 1:
        raise PreconditionError("e must lie outside X")
    if lambda_(M, xm) != 2:
        raise PreconditionError("X must be exactly 3-separating")
    ym = M.full ^ xm ^ (1 << e)
    in_cl = M.closure_mask(xm) >> e & 1 and M.closure_mask(ym) >> e & 1
    in_cocl = M.coclosure_mask(xm) >> e & 1 and M.coclosure_mask(ym) >> e & 1
    if in_cl and in_cocl:  # impossible in a matroid; kept as a guard
        raise AssertionError("element is both guts and coguts")
    if in_cl:
        return "guts"
    if in_cocl:
        return "coguts"
    return "neither"


def full_closure(M: Matroid, X) -> int:
    """Least set containing ``X`` that is closed and coclosed (as a mask)."""
    m = M._mask(X)
    while True:
        nxt = M.coclosure_mask(M.closure_mask(m))
        if nxt == m:
            return m
        m = nxt


def triangles(M: Matroid) -> list[int]:
    return [c for c in M.circuit_masks() if c.bit_count() == 3]


def triads(M: Matroid) -> list[int]:
    return [c for c in M.cocircuit_masks() if c.bit_count() == 3]


def fans(M: Matroid, max_fans: int = 100000) -> list[Fan]:
    """Maximal fans, as inclusion-maximal element sets with one ordering each.

    A fan is a sequence of at least three distinct elements whose
    consecutive triples are alternately triangles and triads.
    """
    tri = set(triangles(M))
    tad = set(triads(M))
    if not tri and not tad:
        return []
    found: dict[int, tuple[tuple[int, ...], str]] = {}

    def grow(seq: list[int], used: int, first: str, nxt_is_tri: bool):
        extended = False
        pool = tri if nxt_is_tri else tad
        a, b = seq[-2], seq[-1]
        for c in range(M.n):
            if used >> c & 1:
                continue
            if (1 << a | 1 << b | 1 << c) in pool:
                extended = True
                seq.append(c)
                grow(seq, used | 1 << c, first, not nxt_is_tri)
                seq.pop()
        if not extended and len(seq) >= 3:
            key = used
            cand = (tuple(seq), first)
            if key not in found or cand < found[key]:
                found[key] = cand
            if len(found) > max_fans:
                raise PreconditionError("too many fans")

    for kind, pool in (("triangle", tri), ("triad", tad)):
        for T in sorted(pool):
            els = bits_of(T)
            for a, b, c in _orders(els):
                grow([a, b, c], T, kind, kind != "triangle")
    keys = sorted(found)
    out = []
    for k in keys:
        if any(o != k and o & k == k for o in keys):
            continue
        seq, first = found[k]
        out.append(Fan(seq, first, True))
    out.sort(key=lambda f: (-len(f), f.elements))
    return out


def _orders(els):
    a, b, c = els
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def essential_elements(M: Matroid) -> frozenset[int]:
    """Elements ``e`` for which neither ``M\\e`` nor ``M/e`` is 3-connected."""
    out = set()
    for e in range(M.n):
        if not is_3_connected(M.delete(1 << e)) and not is_3_connected(M.contract(1 << e)):
            out.add(e)
    return frozenset(out)


def blocks(M: Matroid, d: int, X) -> bool:
    """Whether ``d`` blocks the exactly 3-separating set ``X`` of ``M\\d``."""
    xm = M._mask(X)
    if xm >> d & 1:
        raise PreconditionError("X must avoid d")
    if not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    Md = M.delete(1 << d)
    if not is_3_connected(Md):
        raise PreconditionError("M\\d must be 3-connected")
    xd = _compress(xm, d)
    if lambda_(Md, xd) != 2:
        raise PreconditionError("X must be exactly 3-separating in M\\d")
    blocked = lambda_(M, xm) > 2
    if blocked:
        assert M.coclosure_mask(xm) >> d & 1, "a blocking element lies in the coclosure"
    return blocked


def _compress(mask: int, d: int) -> int:
    low = mask & ((1 << d) - 1)
    return low | (mask >> (d + 1)) << d


__all__ = [
    "Fan",
    "SeparationWitness",
    "blocks",
    "co_not_3_connected",
    "cyclic_3_separations",
    "enumerate_k_separations",
    "essential_elements",
    "fans",
    "full_closure",
    "guts_coguts",
    "is_3_connected",
    "is_n_connected",
    "lambda_",
    "lambda_dual_form",
    "lambda_table",
    "si_not_3_connected",
    "triads",
    "triangles",
    "vertical_3_separations",
]

