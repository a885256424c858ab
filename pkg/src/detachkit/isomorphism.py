"""Matroid isomorphism by colour refinement and circuit-checked backtracking.

Element colours start from the number of circuits and cocircuits of each
size through the element, then are refined by the colour multisets of
those circuits until stable.  Colours are stable hashes, so they are
comparable across matroids and across runs.  The backtracking search maps
elements colour-to-colour and rejects a partial map as soon as some fully
mapped circuit lands outside the circuit set of the target; with equal
circuit counts, a bijection sending circuits to circuits is an isomorphism.
"""

from __future__ import annotations

import hashlib
from collections import Counter, defaultdict

import numpy as np

from .bits import bits_of, popcounts
from .matroid import Matroid, check_limit


def stable_hash(obj) -> int:
    return int.from_bytes(hashlib.blake2b(repr(obj).encode(), digest_size=8).digest(), "big")


def _size_profile(masks: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    if not masks:
        return [()] * n
    arr = np.fromiter(masks, dtype=np.int64)
    sizes = popcounts(n)[arr]
    out = []
    for e in range(n):
        sel = ((arr >> e) & 1).astype(bool)
        out.append(tuple(np.bincount(sizes[sel], minlength=n + 1).tolist()))
    return out


def refined_colours(M: Matroid) -> tuple[int, ...]:
    """Isomorphism-invariant element colours."""

    def build():
        check_limit(M.n, "isomorphism invariants")
        circ = M.circuit_masks()
        cocirc = M.cocircuit_masks()
        cp = _size_profile(circ, M.n)
        kp = _size_profile(cocirc, M.n)
        colours = [stable_hash((cp[e], kp[e])) for e in range(M.n)]
        circ_bits = [bits_of(c) for c in circ]
        cocirc_bits = [bits_of(c) for c in cocirc]
        through_c: list[list[int]] = [[] for _ in range(M.n)]
        through_k: list[list[int]] = [[] for _ in range(M.n)]
        for i, c in enumerate(circ_bits):
            for e in c:
                through_c[e].append(i)
        for i, c in enumerate(cocirc_bits):
            for e in c:
                through_k[e].append(i)
        distinct = len(set(colours))
        for _ in range(M.n):
            csig = [stable_hash(tuple(sorted(colours[x] for x in c))) for c in circ_bits]
            ksig = [stable_hash(tuple(sorted(colours[x] for x in c))) for c in cocirc_bits]
            new = [
                stable_hash(
                    (
                        colours[e],
                        tuple(sorted(csig[i] for i in through_c[e])),
                        tuple(sorted(ksig[i] for i in through_k[e])),
                    )
                )
                for e in range(M.n)
            ]
            count = len(set(new))
            colours = new
            if count == distinct:
                break
            distinct = count
        return tuple(colours)

    return M._cached("colours", build)


def invariant_key(M: Matroid) -> int:
    """Hash of isomorphism invariants; equal for isomorphic matroids."""

    def build():
        return stable_hash(
            (
                M.n,
                M.r,
                M.num_bases(),
                tuple(sorted(Counter(len(bits_of(c)) for c in M.circuit_masks()).items())),
                tuple(sorted(Counter(refined_colours(M)).items())),
            )
        )

    return M._cached("invariant_key", build)


def _search_order(M: Matroid, colours) -> list[int]:
    class_size = Counter(colours)
    circ = M.circuit_masks()
    touch = [[c for c in circ if c >> e & 1] for e in range(M.n)]
    order: list[int] = []
    placed = 0
    remaining = set(range(M.n))
    while remaining:
        def score(e: int):
            closing = sum(1 for c in touch[e] if (c & ~placed) == 1 << e)
            return (-closing, class_size[colours[e]], e)

        e = min(remaining, key=score)
        order.append(e)
        placed |= 1 << e
        remaining.discard(e)
    return order


def find_isomorphism(M1: Matroid, M2: Matroid) -> dict[int, int] | None:
    """An element bijection ``M1 -> M2`` preserving bases, or ``None``."""
    if M1.n != M2.n or M1.r != M2.r:
        return None
    if M1.n == 0:
        return {}
    if invariant_key(M1) != invariant_key(M2):
        return None
    if len(M1.cocircuit_masks()) != len(M2.cocircuit_masks()):
        return None
    return _backtrack(M1, M2, refined_colours(M1), refined_colours(M2))


def is_isomorphic(M1: Matroid, M2: Matroid) -> dict[int, int] | None:
    return find_isomorphism(M1, M2)


def _backtrack(M1: Matroid, M2: Matroid, col1, col2) -> dict[int, int] | None:
    n = M1.n
    order = _search_order(M1, col1)
    pos = {e: i for i, e in enumerate(order)}
    circ_checks: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for c in M1.circuit_masks():
        els = bits_of(c)
        circ_checks[max(pos[x] for x in els)].append(els)
    cocirc_checks: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for c in M1.cocircuit_masks():
        els = bits_of(c)
        cocirc_checks[max(pos[x] for x in els)].append(els)
    target_c = M2.circuit_set()
    target_k = M2.cocircuit_set()
    by_colour: dict[int, list[int]] = defaultdict(list)
    for e in range(n):
        by_colour[col2[e]].append(e)

    img = [0] * n
    used = 0

    def consistent(i: int) -> bool:
        for els in circ_checks[i]:
            m = 0
            for x in els:
                m |= img[x]
            if m not in target_c:
                return False
        for els in cocirc_checks[i]:
            m = 0
            for x in els:
                m |= img[x]
            if m not in target_k:
                return False
        return True

    # iterative DFS over positions
    cands: list[list[int]] = [[] for _ in range(n)]
    ptr = [0] * n
    i = 0
    cands[0] = list(by_colour[col1[order[0]]])
    while i >= 0:
        e = order[i]
        if img[e]:
            used &= ~img[e]
            img[e] = 0
        advanced = False
        while ptr[i] < len(cands[i]):
            f = cands[i][ptr[i]]
            ptr[i] += 1
            if used >> f & 1:
                continue
            img[e] = 1 << f
            used |= 1 << f
            if consistent(i):
                advanced = True
                break
            used &= ~img[e]
            img[e] = 0
        if not advanced:
            ptr[i] = 0
            i -= 1
            continue
        if i == n - 1:
            return {x: img[x].bit_length() - 1 for x in range(n)}
        i += 1
        cands[i] = [f for f in by_colour[col1[order[i]]] if not used >> f & 1]
        ptr[i] = 0
    return None


class IsoTarget:
    """Repeated isomorphism tests against one fixed matroid."""

    def __init__(self, N: Matroid):
        self.N = N
        self.key = invariant_key(N)
        self.nbases = N.num_bases()
        self.ncirc = len(N.circuit_masks())

    def quick_reject(self, M: Matroid) -> bool:
        if M.n != self.N.n or M.r != self.N.r:
            return True
        return M.num_bases() != self.nbases

    def match(self, M: Matroid) -> dict[int, int] | None:
        if self.quick_reject(M):
            return None
        return find_isomorphism(M, self.N)
