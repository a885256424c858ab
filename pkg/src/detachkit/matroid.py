"""Immutable matroids backed by a full rank table.

Every matroid with at most ``TABLE_LIMIT`` elements carries ``table``, an
int8 numpy array with ``table[X] == r(X)`` for each subset mask ``X``.  All
structural queries (closures, circuits, minors, duals, connectivity) are
computed from that one table, whatever the original input was.  Matrix and
graph inputs above the limit keep their rank oracle instead; queries that
need the whole lattice then raise :class:`SizeLimitError`.
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .bits import (
    bits_of,
    iter_bits,
    popcounts,
    spread_index,
    subset_max,
    superset_or,
    to_mask,
    to_set,
)
from .errors import MatroidError, SizeLimitError

TABLE_LIMIT = 16
VALIDATE_BELOW = 13

_limits = {"enum": 16}


def enumeration_limit() -> int:
    return _limits["enum"]


def set_enumeration_limit(n: int) -> None:
    """Change the element-count ceiling for exhaustive enumerations."""
    _limits["enum"] = int(n)


def check_limit(n: int, what: str = "enumeration") -> None:
    if n > _limits["enum"]:
        raise SizeLimitError(f"{what} on {n} elements exceeds the limit of {_limits['enum']}")


def table_from_bases(masks: Iterable[int], n: int) -> np.ndarray:
    indep = np.zeros(1 << n, dtype=bool)
    indep[np.fromiter(masks, dtype=np.int64)] = True
    superset_or(indep, n)
    rk = np.where(indep, popcounts(n), 0).astype(np.int8)
    return subset_max(rk, n)


def is_matroid_table(rk: np.ndarray, n: int) -> bool:
    """Check unit increase and local submodularity of a rank table."""
    if rk[0] != 0:
        return False
    idx = np.arange(1 << n, dtype=np.int64)
    for e in range(n):
        be = 1 << e
        base = idx[(idx & be) == 0]
        step = rk[base | be] - rk[base]
        if np.any((step < 0) | (step > 1)):
            return False
    for e, f in combinations(range(n), 2):
        both = (1 << e) | (1 << f)
        base = idx[(idx & both) == 0]
        lhs = rk[base | (1 << e)].astype(np.int16) + rk[base | (1 << f)]
        rhs = rk[base | both].astype(np.int16) + rk[base]
        if np.any(lhs < rhs):
            return False
    return True


def _rank_mod_p(vectors: Sequence[Sequence[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _forest_rank(edges: Sequence[tuple[int, int]], mask: int) -> int:
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent.get(v, v) != v:
            parent[v] = parent.get(parent[v], parent[v])
            v = parent[v]
        return v

    rank = 0
    for i in iter_bits(mask):
        u, v = edges[i]
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            rank += 1
    return rank


class Matroid:
    """A matroid on elements ``0..n-1`` with optional string labels.

    Construct from a basis family, or use :meth:`from_matrix` /
    :meth:`from_graph`.  Instances are immutable; derived data (circuits,
    cocircuits, the dual) is cached on first use under a lock, so a matroid
    can be shared between threads.
    """

    __slots__ = ("n", "r", "labels", "name", "backend", "source", "_rk", "_oracle", "_cache", "_lock")

    def __init__(
        self,
        bases: Iterable[Iterable[int] | int],
        n: int | None = None,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        validate: bool | None = None,
    ):
        masks = sorted({to_mask(b) for b in bases})
        if not masks:
            raise MatroidError("the basis family must be nonempty")
        if n is None:
            n = len(labels) if labels is not None else max(m.bit_length() for m in masks)
        if any(m >> n for m in masks):
            raise MatroidError(f"basis element out of range for a ground set of size {n}")
        if len({m.bit_count() for m in masks}) != 1:
            raise MatroidError("bases must all have the same cardinality")
        if n > TABLE_LIMIT:
            raise SizeLimitError(f"explicit basis families are limited to {TABLE_LIMIT} elements")
        rk = table_from_bases(masks, n)
        if validate is None:
            validate = n < VALIDATE_BELOW
        if validate:
            if not is_matroid_table(rk, n):
                raise MatroidError("basis family violates the basis exchange axiom")
            r = masks[0].bit_count()
            if int(np.count_nonzero((rk == r) & (popcounts(n) == r))) != len(masks):
                raise MatroidError("basis family violates the basis exchange axiom")
        self._setup(rk, n, labels, name, "bases", None)

    # -- construction helpers -------------------------------------------------

    def _setup(self, rk, n, labels, name, backend, source, oracle=None, r=None):
        self.n = n
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise MatroidError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise MatroidError("element labels must be unique")
        self.labels = labels
        self.name = name or "M"
        self.backend = backend
        self.source = source
        self._oracle = oracle
        if rk is not None:
            rk.setflags(write=False)
            self.r = int(rk[-1])
        else:
            self.r = int(r)
        self._rk = rk
        self._cache: dict = {}
        self._lock = threading.RLock()

    @classmethod
    def from_table(cls, rk: np.ndarray, labels=None, name=None, backend="bases", source=None) -> "Matroid":
        n = int(rk.size).bit_length() - 1
        if rk.size != 1 << n:
            raise MatroidError("rank table length must be a power of two")
        obj = cls.__new__(cls)
        obj._setup(np.ascontiguousarray(rk, dtype=np.int8), n, labels, name, backend, source)
        return obj

    @classmethod
    def from_oracle(cls, rank_fn: Callable[[int], int], n: int, labels=None, name=None, backend="oracle", source=None):
        obj = cls.__new__(cls)
        obj._setup(None, n, labels, name, backend, source, oracle=rank_fn, r=rank_fn((1 << n) - 1))
        return obj

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], p: int, labels=None, name=None) -> "Matroid":
        """Column matroid of a matrix over the prime field GF(p)."""
        rows = [[int(x) % p for x in row] for row in rows]
        n = len(rows[0]) if rows else 0
        if any(len(row) != n for row in rows):
            raise MatroidError("matrix rows have unequal lengths")
        cols = [[row[j] for row in rows] for j in range(n)]
        source = {"p": p, "rows": tuple(tuple(r) for r in rows)}

        def rank_fn(mask: int) -> int:
            return _rank_mod_p([cols[j] for j in iter_bits(mask)], p)

        if n > TABLE_LIMIT:
            return cls.from_oracle(rank_fn, n, labels, name, "matrix", source)
        r = rank_fn((1 << n) - 1)
        bases = [m for m in _subsets(n, r) if rank_fn(m) == r] if n else [0]
        obj = cls.from_table(table_from_bases(bases, n), labels, name, "matrix", source)
        return obj

    @classmethod
    def from_graph(cls, edges: Sequence[tuple[int, int]], labels=None, name=None) -> "Matroid":
        """Cycle matroid of a multigraph given as an edge list (loops allowed)."""
        edges = [(int(u), int(v)) for u, v in edges]
        n = len(edges)
        source = {"edges": tuple(edges)}

        def rank_fn(mask: int) -> int:
            return _forest_rank(edges, mask)

        if n > TABLE_LIMIT:
            return cls.from_oracle(rank_fn, n, labels, name, "graph", source)
        r = rank_fn((1 << n) - 1)
        bases = [m for m in _subsets(n, r) if rank_fn(m) == r] if n else [0]
        return cls.from_table(table_from_bases(bases, n), labels, name, "graph", source)

    # -- pickling / equality --------------------------------------------------

    def __reduce__(self):
        if self._rk is None:
            raise TypeError("oracle-backed matroids cannot be pickled")
        return (_rebuild, (self._rk.tobytes(), self.labels, self.name, self.backend, self.source))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        if self._rk is None or other._rk is None:
            return self is other
        return self.n == other.n and self.labels == other.labels and np.array_equal(self._rk, other._rk)

    def __hash__(self) -> int:
        if self._rk is None:
            return id(self)
        return hash((self.n, self.labels, self._rk.tobytes()))

    def __repr__(self) -> str:
        return f"Matroid({self.name!r}, n={self.n}, r={self.r})"

    def __len__(self) -> int:
        return self.n

    # -- basic data -----------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def ground(self) -> range:
        return range(self.n)

    @property
    def table(self) -> np.ndarray:
        return self._need_table()

    def has_table(self) -> bool:
        return self._rk is not None

    def _need_table(self) -> np.ndarray:
        if self._rk is None:
            raise SizeLimitError(f"{self.n}-element matroid has no materialised rank table")
        return self._rk

    def _cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    def _mask(self, X) -> int:
        m = to_mask(X)
        if m >> self.n or m < 0:
            raise MatroidError(f"element set {X!r} not contained in the ground set of size {self.n}")
        return m

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise MatroidError(f"no element labelled {label!r}") from None

    def indices(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def label_set(self, X) -> frozenset[str]:
        return frozenset(self.labels[e] for e in iter_bits(to_mask(X)))

    # -- rank calculus --------------------------------------------------------

    def rank_mask(self, m: int) -> int:
        if self._rk is not None:
            return int(self._rk[m])
        return self._oracle(m)

    def rank(self, X=None) -> int:
        if X is None:
            return self.r
        return self.rank_mask(self._mask(X))

    def corank_mask(self, m: int) -> int:
        return m.bit_count() + self.rank_mask(self.full ^ m) - self.r

    def corank(self, X=None) -> int:
        if X is None:
            return self.n - self.r
        return self.corank_mask(self._mask(X))

    def closure_mask(self, m: int) -> int:
        r = self.rank_mask(m)
        out = m
        for e in range(self.n):
            b = 1 << e
            if not m & b and self.rank_mask(m | b) == r:
                out |= b
        return out

    def closure(self, X) -> frozenset[int]:
        return to_set(self.closure_mask(self._mask(X)))

    def coclosure_mask(self, m: int) -> int:
        r = self.corank_mask(m)
        out = m
        for e in range(self.n):
            b = 1 << e
            if not m & b and self.corank_mask(m | b) == r:
                out |= b
        return out

    def coclosure(self, X) -> frozenset[int]:
        return to_set(self.coclosure_mask(self._mask(X)))

    def is_independent(self, X) -> bool:
        m = self._mask(X)
        return self.rank_mask(m) == m.bit_count()

    def is_spanning(self, X) -> bool:
        return self.rank_mask(self._mask(X)) == self.r

    def is_basis(self, X) -> bool:
        m = self._mask(X)
        return m.bit_count() == self.r and self.rank_mask(m) == self.r

    def is_circuit_mask(self, m: int) -> bool:
        k = m.bit_count()
        if k == 0 or self.rank_mask(m) != k - 1:
            return False
        return all(self.rank_mask(m ^ (1 << e)) == k - 1 for e in iter_bits(m))

    def is_circuit(self, X) -> bool:
        return self.is_circuit_mask(self._mask(X))

    def is_cocircuit_mask(self, m: int) -> bool:
        k = m.bit_count()
        if k == 0 or self.corank_mask(m) != k - 1:
            return False
        return all(self.corank_mask(m ^ (1 << e)) == k - 1 for e in iter_bits(m))

    def is_cocircuit(self, X) -> bool:
        return self.is_cocircuit_mask(self._mask(X))

    def is_flat_mask(self, m: int) -> bool:
        return self.closure_mask(m) == m

    def loops(self) -> frozenset[int]:
        return to_set(self.closure_mask(0))

    def coloops(self) -> frozenset[int]:
        return to_set(self.coclosure_mask(0))

    # -- whole-lattice enumerations ----------------------------------------------

    def basis_masks(self) -> tuple[int, ...]:
        def build():
            rk = self._need_table()
            pc = popcounts(self.n)
            return tuple(int(x) for x in np.flatnonzero((rk == self.r) & (pc == self.r)))

        return self._cached("bases", build)

    def bases(self) -> frozenset[frozenset[int]]:
        return frozenset(to_set(m) for m in self.basis_masks())

    def num_bases(self) -> int:
        return len(self.basis_masks())

    def independent_array(self) -> np.ndarray:
        return self._cached("indep", lambda: self._need_table() == popcounts(self.n))

    def circuit_masks(self) -> tuple[int, ...]:
        """All circuits, ordered by size and then by mask value."""

        def build():
            check_limit(self.n, "circuit enumeration")
            indep = self.independent_array()
            circ = ~indep
            for e in range(self.n):
                v = circ.reshape(-1, 2, 1 << e)
                iv = indep.reshape(-1, 2, 1 << e)
                v[:, 1, :] &= iv[:, 0, :]
            found = np.flatnonzero(circ)
            sizes = popcounts(self.n)[found]
            order = np.lexsort((found, sizes))
            return tuple(int(x) for x in found[order])

        return self._cached("circuits", build)

    def circuits(self) -> frozenset[frozenset[int]]:
        return frozenset(to_set(m) for m in self.circuit_masks())

    def cocircuit_masks(self) -> tuple[int, ...]:
        return self.dual().circuit_masks()

    def cocircuits(self) -> frozenset[frozenset[int]]:
        return frozenset(to_set(m) for m in self.cocircuit_masks())

    def circuit_set(self) -> frozenset[int]:
        return self._cached("circuit_set", lambda: frozenset(self.circuit_masks()))

    def cocircuit_set(self) -> frozenset[int]:
        return self._cached("cocircuit_set", lambda: frozenset(self.cocircuit_masks()))

    def closure_array(self) -> np.ndarray:
        """``closure_array()[X]`` is the closure mask of ``X``."""

        def build():
            rk = self._need_table()
            idx = np.arange(1 << self.n, dtype=np.int64)
            cl = idx.copy()
            for e in range(self.n):
                b = 1 << e
                cl |= np.where(rk[idx | b] == rk, b, 0)
            cl.setflags(write=False)
            return cl

        return self._cached("closure_array", build)

    def flat_masks(self, rank: int | None = None) -> tuple[int, ...]:
        def build():
            cl = self.closure_array()
            return tuple(int(x) for x in np.flatnonzero(cl == np.arange(cl.size)))

        flats = self._cached("flats", build)
        if rank is None:
            return flats
        rk = self._rk
        return tuple(f for f in flats if rk[f] == rank)

    def hyperplane_masks(self) -> tuple[int, ...]:
        return self.flat_masks(self.r - 1)

    # -- derived matroids ---------------------------------------------------------

    def dual(self) -> "Matroid":
        def build():
            name = self.name[:-1] if self.name.endswith("*") else self.name + "*"
            if self._rk is None:
                f, full, r = self._oracle, self.full, self.r
                d = Matroid.from_oracle(
                    lambda m: m.bit_count() + f(full ^ m) - r, self.n, self.labels, name, "oracle"
                )
            else:
                rk = popcounts(self.n) + self._rk[::-1] - self.r
                d = Matroid.from_table(rk.astype(np.int8), self.labels, name)
            d._cache["dual"] = self
            return d

        return self._cached("dual", build)

    def minor(self, contract=(), delete=(), name: str | None = None) -> "Matroid":
        """``M / contract \\ delete`` on the remaining elements, labels preserved."""
        c = self._mask(contract)
        d = self._mask(delete)
        if c & d:
            raise MatroidError("contract and delete sets must be disjoint")
        kept = tuple(e for e in range(self.n) if not (c | d) >> e & 1)
        labels = tuple(self.labels[e] for e in kept)
        name = name or self.name
        if self._rk is None:
            f = self._oracle
            rc = f(c)
            spread = {i: 1 << e for i, e in enumerate(kept)}

            def rank_fn(m: int) -> int:
                full = c
                for i in iter_bits(m):
                    full |= spread[i]
                return f(full) - rc

            return Matroid.from_oracle(rank_fn, len(kept), labels, name, "oracle")
        idx = spread_index(kept)
        rk = self._rk[idx | c] - self._rk[c]
        return Matroid.from_table(rk.astype(np.int8), labels, name)

    def delete(self, X) -> "Matroid":
        return self.minor(delete=X)

    def contract(self, X) -> "Matroid":
        return self.minor(contract=X)

    def restrict(self, X) -> "Matroid":
        return self.minor(delete=self.full ^ self._mask(X))

    def relabel(self, labels: Sequence[str], name: str | None = None) -> "Matroid":
        if self._rk is None:
            return Matroid.from_oracle(self._oracle, self.n, labels, name or self.name, self.backend, self.source)
        return Matroid.from_table(self._rk.copy(), labels, name or self.name, self.backend, self.source)

    def renamed(self, name: str) -> "Matroid":
        return self.relabel(self.labels, name)

    def permute(self, order: Sequence[int], name: str | None = None) -> "Matroid":
        """New matroid whose element ``i`` is this matroid's element ``order[i]``."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise MatroidError("permute needs a permutation of the ground set")
        idx = spread_index(tuple(order))
        rk = self._need_table()[idx]
        return Matroid.from_table(rk.copy(), [self.labels[e] for e in order], name or self.name)


def _rebuild(raw: bytes, labels, name, backend, source) -> Matroid:
    return Matroid.from_table(np.frombuffer(raw, dtype=np.int8).copy(), labels, name, backend, source)


def _subsets(n: int, k: int):
    for combo in combinations(range(n), k):
        m = 0
        for e in combo:
            m |= 1 << e
        yield m


def direct_sum(m1: Matroid, m2: Matroid, name: str | None = None) -> Matroid:
    rk = (m2.table.astype(np.int16)[:, None] + m1.table[None, :]).ravel().astype(np.int8)
    labels = list(m1.labels) + [x if x not in m1.labels else x + "'" for x in m2.labels]
    return Matroid.from_table(rk, labels, name or f"{m1.name}+{m2.name}")


def simplify(M: Matroid) -> tuple[Matroid, dict[int, int | None]]:
    """Delete loops and collapse parallel classes onto their least element.

    Returns the simplification (a restriction of ``M``, labels preserved) and
    a map sending each element of ``M`` to its class representative, or to
    ``None`` for loops.
    """
    loops = M.closure_mask(0)
    rep: dict[int, int | None] = {}
    keep = 0
    for e in range(M.n):
        if loops >> e & 1:
            rep[e] = None
            continue
        if e in rep:
            continue
        cls = M.closure_mask(1 << e) & ~loops
        for f in iter_bits(cls):
            rep[f] = e
        keep |= 1 << e
    return M.restrict(keep), rep


def cosimplify(M: Matroid) -> tuple[Matroid, dict[int, int | None]]:
    S, rep = simplify(M.dual())
    return S.dual(), rep


def labelled(M: Matroid, X) -> tuple[str, ...]:
    return tuple(M.labels[e] for e in bits_of(to_mask(X)))
