from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given

from detachkit import constructions as C
from detachkit.errors import PreconditionError
from detachkit.extensions import (
    coextend,
    extend,
    is_modular_flat,
    linear_subclass_closure,
    linear_subclasses,
    principal_extension,
    single_element_extensions,
)
from detachkit.isomorphism import is_isomorphic
from detachkit.matroid import Matroid, is_matroid_table, table_from_bases
from strategies import small_matroids


def brute_extensions(M):
    """Every matroid on E + e (e last) whose deletion of e is M, by trying all basis families."""
    n = M.n + 1
    out = set()
    for r in (M.r, M.r + 1):
        cands = [sum(1 << x for x in c) for c in combinations(range(n), r)]
        for fam in range(1, 1 << len(cands)):
            bases = [cands[i] for i in range(len(cands)) if fam >> i & 1]
            rk = table_from_bases(bases, n)
            if rk is None or not is_matroid_table(rk, n):
                continue
            if (rk[: 1 << M.n] == M.table).all():
                out.add(rk.tobytes())
    return out


@pytest.mark.parametrize("M", [C.uniform(1, 2), C.uniform(2, 2), C.uniform(2, 3), C.uniform(2, 4), C.uniform(1, 3)], ids=str)
def test_extensions_against_brute_force(M):
    got = {extend(M, H).table.tobytes() for H in linear_subclasses(M)}
    coloop = Matroid.from_table(
        __import__("numpy").concatenate([M.table, M.table + 1]).astype("int8"), M.labels + ("e",)
    )
    got.add(coloop.table.tobytes())
    assert got == brute_extensions(M)


def test_uniform_extension_count():
    # U(2,3): loop, three parallel copies, free point; the coloop is separate
    assert len(list(linear_subclasses(C.uniform(2, 3)))) == 5
    simple = list(single_element_extensions(C.uniform(2, 3), simple=True))
    assert len(simple) == 1 and is_isomorphic(simple[0], C.uniform(2, 4))


def test_free_extension_of_line():
    assert is_isomorphic(C.free_extension(C.uniform(2, 3)), C.uniform(2, 4))
    with pytest.raises(PreconditionError):
        C.free_extension(C.fano(), {0, 1})  # not a flat


def test_point_on_a_two_point_line():
    # in U(3,4) put e on the line through 0 and 1
    U = C.uniform(3, 4)
    L = U.closure_mask(0b11)
    assert L == 0b11
    E = principal_extension(U, L)
    e = E.n - 1
    assert E.rank_mask(0b11 | 1 << e) == 2
    assert all(E.rank_mask(1 << x | 1 << e) == 2 for x in range(4))
    with pytest.raises(PreconditionError):
        principal_extension(C.fano(), 0b11)


@given(small_matroids(max_n=6))
def test_every_linear_subclass_extends_to_a_matroid(M):
    for H in linear_subclasses(M):
        E = extend(M, H)
        assert is_matroid_table(E.table, E.n)
        assert (E.delete(1 << M.n).table == M.table).all()
        # the new element lies on exactly the hyperplanes in H
        e = M.n
        for Hm in M.hyperplane_masks():
            assert (E.rank_mask(Hm | 1 << e) == E.rank_mask(Hm)) == (Hm in H)


@given(small_matroids(max_n=6))
def test_simple_subclasses_add_no_loop_or_parallel(M):
    for H in linear_subclasses(M, simple=True):
        E = extend(M, H)
        e = M.n
        assert E.rank_mask(1 << e) == 1
        assert all(E.rank_mask(1 << x | 1 << e) == 2 for x in range(M.n) if M.rank_mask(1 << x) == 1)


@given(small_matroids(max_n=6))
def test_coextension_is_dual_of_extension(M):
    D = M.dual()
    for H in list(linear_subclasses(D))[:6]:
        Ce = coextend(M, H)
        assert (Ce.dual().table == extend(D, H).table).all()
        assert (Ce.contract(1 << M.n).table == M.table).all()


def test_modular_cut_closure_and_modular_flats():
    F = C.fano()
    lines = [H for H in F.hyperplane_masks()]
    # two lines of the Fano plane meet in a point, so the cut they generate is everything above it
    cut = linear_subclass_closure(F, lines[:2])
    p = lines[0] & lines[1]
    assert cut == frozenset(H for H in lines if H & p == p)
    assert all(is_modular_flat(F, H) for H in lines)
    U = C.uniform(3, 6)
    assert not is_modular_flat(U, 0b11)
