"""Bitmask helpers shared by the rank-table code.

Element sets are encoded as Python ints (bit ``i`` set means element ``i``
is present).  Whole-lattice computations run over numpy arrays indexed by
mask, using the reshape trick ``arr.reshape(-1, 2, 1 << e)`` to pair every
mask without bit ``e`` with the same mask plus ``e``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np


def to_mask(elements: Iterable[int] | int) -> int:
    if isinstance(elements, (int, np.integer)):
        return int(elements)
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def bits_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def masks_of_size(n: int, k: int) -> Iterator[int]:
    for combo in combinations(range(n), k):
        m = 0
        for e in combo:
            m |= 1 << e
        yield m


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    arr = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int8)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=4096)
def spread_index(positions: tuple[int, ...]) -> np.ndarray:
    """Map compact masks over ``len(positions)`` bits to masks over ``positions``."""
    idx = np.zeros(1, dtype=np.int64)
    for p in positions:
        idx = np.concatenate([idx, idx | (1 << p)])
    idx.setflags(write=False)
    return idx


def superset_or(arr: np.ndarray, n: int) -> np.ndarray:
    """In place: ``arr[X] |= arr[Y]`` for every ``Y ⊇ X``."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        v[:, 0, :] |= v[:, 1, :]
    return arr


def subset_or(arr: np.ndarray, n: int) -> np.ndarray:
    """In place: ``arr[X] |= arr[Y]`` for every ``Y ⊆ X``."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        v[:, 1, :] |= v[:, 0, :]
    return arr


def subset_max(arr: np.ndarray, n: int) -> np.ndarray:
    """In place: ``arr[X] = max(arr[Y] for Y ⊆ X)``."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return arr


@lru_cache(maxsize=1024)
def with_bit(n: int, e: int) -> np.ndarray:
    """All masks over ``n`` bits that contain ``e``, ascending."""
    arr = np.arange(1 << n, dtype=np.int64).reshape(-1, 2, 1 << e)[:, 1, :].ravel()
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=1024)
def without_bit(n: int, e: int) -> np.ndarray:
    arr = np.arange(1 << n, dtype=np.int64).reshape(-1, 2, 1 << e)[:, 0, :].ravel()
    arr.setflags(write=False)
    return arr
