"""Single-element extensions through linear subclasses of hyperplanes.

A single-element extension ``M + e`` is determined by the set of
hyperplanes of ``M`` that contain ``e`` in their closure (a linear
subclass), together with the degenerate coloop case.  The element ``e``
lies in ``cl(X)`` exactly when every hyperplane containing ``X`` belongs
to the subclass, which gives the new rank table in one vectorised pass.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .bits import superset_or
from .errors import PreconditionError
from .matroid import Matroid


def _colines(M: Matroid) -> list[list[int]]:
    """For each rank-(r-2) flat, the indices of the hyperplanes above it."""
    hyps = M.hyperplane_masks()
    out = []
    for L in M.flat_masks(M.r - 2):
        above = [i for i, H in enumerate(hyps) if H & L == L]
        if len(above) >= 2:
            out.append(above)
    return out


def linear_subclass_closure(M: Matroid, generators: Iterable[int]) -> frozenset[int]:
    """Hyperplanes of the smallest modular cut containing the given flats."""
    hyps = M.hyperplane_masks()
    gens = [M.closure_mask(int(g)) for g in generators]
    inside = {i for i, H in enumerate(hyps) if any(H & g == g for g in gens)}
    colines = _colines(M)
    changed = True
    while changed:
        changed = False
        for above in colines:
            hit = sum(1 for i in above if i in inside)
            if 2 <= hit < len(above):
                inside.update(above)
                changed = True
    return frozenset(hyps[i] for i in inside)


def extend(M: Matroid, subclass: Iterable[int] | None, label: str = "e", name: str | None = None) -> Matroid:
    """Extension by a new last element; ``subclass=None`` adds a coloop."""
    rk = M.table
    n = M.n
    if subclass is None:
        new = np.concatenate([rk, rk + 1])
        return Matroid.from_table(new.astype(np.int8), M.labels + (label,), name or M.name)
    keep = set(int(h) for h in subclass)
    bad = np.zeros(1 << n, dtype=bool)
    for H in M.hyperplane_masks():
        if H not in keep:
            bad[H] = True
    superset_or(bad, n)
    new = np.concatenate([rk, rk + bad.astype(np.int8)])
    return Matroid.from_table(new.astype(np.int8), M.labels + (label,), name or M.name)


def coextend(M: Matroid, subclass_of_dual: Iterable[int] | None, label: str = "e", name: str | None = None) -> Matroid:
    """Coextension: the dual of an extension of the dual."""
    return extend(M.dual(), subclass_of_dual, label).dual().renamed(name or M.name)


def extend_by_flats(M: Matroid, flats: Iterable[int], label: str = "e", name: str | None = None) -> Matroid:
    """Extension by the modular cut generated by ``flats``."""
    return extend(M, linear_subclass_closure(M, flats), label, name)


def coextend_by_flats(M: Matroid, coflats: Iterable[int], label: str = "e", name: str | None = None) -> Matroid:
    """Coextension by the modular cut of ``M*`` generated by ``coflats``."""
    D = M.dual()
    return coextend(M, linear_subclass_closure(D, coflats), label, name)


def principal_extension(M: Matroid, F: int, label: str = "e", name: str | None = None) -> Matroid:
    if M.closure_mask(F) != F:
        raise PreconditionError("principal extensions are taken on flats")
    return extend(M, [H for H in M.hyperplane_masks() if H & F == F], label, name)


def is_modular_flat(M: Matroid, F: int) -> bool:
    if M.closure_mask(F) != F:
        return False
    rk = M.table
    flats = np.fromiter(M.flat_masks(), dtype=np.int64)
    lhs = rk[F] + rk[flats].astype(np.int16)
    rhs = rk[flats | F].astype(np.int16) + rk[flats & F]
    return bool(np.all(lhs == rhs))


def linear_subclasses(M: Matroid, simple: bool = False) -> Iterator[frozenset[int]]:
    """Every linear subclass of hyperplanes of ``M``.

    With ``simple=True`` only subclasses whose extension adds neither a loop
    nor an element parallel to an existing one are produced; the coloop
    extension is never produced here.
    """
    hyps = M.hyperplane_masks()
    k = len(hyps)
    colines = _colines(M)
    by_hyp: list[list[int]] = [[] for _ in range(k)]
    for j, above in enumerate(colines):
        for i in above:
            by_hyp[i].append(j)
    points: list[list[int]] = []
    by_hyp_pt: list[list[int]] = [[] for _ in range(k)]
    if simple:
        low = set(M.flat_masks(0)) | set(M.flat_masks(1)) if M.r >= 1 else set()
        for p in sorted(low):
            above = [i for i, H in enumerate(hyps) if H & p == p]
            points.append(above)
            for i in above:
                by_hyp_pt[i].append(len(points) - 1)

    state = [0] * k  # 0 undecided, 1 in, -1 out

    def propagate(start: int, trail: list[int]) -> bool:
        queue = [start]
        while queue:
            h = queue.pop()
            for j in by_hyp[h]:
                above = colines[j]
                ins = sum(1 for i in above if state[i] == 1)
                if ins >= 2:
                    for i in above:
                        if state[i] == -1:
                            return False
                        if state[i] == 0:
                            state[i] = 1
                            trail.append(i)
                            queue.append(i)
            for j in by_hyp_pt[h]:
                if all(state[i] == 1 for i in points[j]):
                    return False
        return True

    def rec(i: int) -> Iterator[frozenset[int]]:
        while i < k and state[i] != 0:
            i += 1
        if i == k:
            yield frozenset(hyps[x] for x in range(k) if state[x] == 1)
            return
        for choice in (-1, 1):
            trail = [i]
            state[i] = choice
            ok = propagate(i, trail)
            if ok:
                yield from rec(i + 1)
            for x in trail:
                state[x] = 0

    if simple and (M.r == 0 or any(len(p) == 0 for p in points)):
        return  # in rank 0 the only non-coloop extension is a loop
    yield from rec(0)


def single_element_extensions(M: Matroid, label: str = "e", simple: bool = False) -> Iterator[Matroid]:
    for H in linear_subclasses(M, simple=simple):
        yield extend(M, H, label)


def element_in_closure_of_each(M: Matroid, e: int, sets: Iterable[int]) -> bool:
    return all(M.closure_mask(s) >> e & 1 for s in sets)


def element_in_coclosure_of_each(M: Matroid, e: int, sets: Iterable[int]) -> bool:
    return all(M.coclosure_mask(s) >> e & 1 for s in sets)


__all__ = [
    "coextend",
    "coextend_by_flats",
    "extend",
    "extend_by_flats",
    "is_modular_flat",
    "linear_subclass_closure",
    "linear_subclasses",
    "principal_extension",
    "single_element_extensions",
]

