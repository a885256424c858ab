from __future__ import annotations

import pickle
from itertools import combinations, product
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from detachkit import constructions as C
from detachkit.bits import bits_of, masks_of_size, popcounts, subset_max, superset_or, to_mask, to_set
from detachkit.errors import DetachkitError, MatroidError, SizeLimitError
from detachkit.isomorphism import is_isomorphic
from detachkit.matroid import Matroid, cosimplify, direct_sum, is_matroid_table, simplify, table_from_bases
from strategies import matrix_matroids, small_matroids, subsets


def brute_rank_gf(cols, p):
    """Rank by counting the span: |span| = p**rank."""
    if not cols:
        return 0
    span = set()
    for coeffs in product(range(p), repeat=len(cols)):
        span.add(tuple(sum(c * v[i] for c, v in zip(coeffs, cols)) % p for i in range(len(cols[0]))))
    return round(np.log(len(span)) / np.log(p))


def brute_circuits(M):
    dep = [X for X in range(1 << M.n) if M.rank_mask(X) < X.bit_count()]
    return {X for X in dep if all(M.rank_mask(X & ~(1 << e)) == X.bit_count() - 1 for e in bits_of(X))}


# -- bits ---------------------------------------------------------------------------------


@given(st.sets(st.integers(0, 20)))
def test_mask_round_trip(s):
    assert to_set(to_mask(s)) == frozenset(s)
    assert bits_of(to_mask(s)) == tuple(sorted(s))


@pytest.mark.parametrize("n,k", [(0, 0), (5, 2), (7, 3), (6, 6)])
def test_masks_of_size_counts(n, k):
    ms = list(masks_of_size(n, k))
    assert len(ms) == len(set(ms)) == comb(n, k)
    assert all(m.bit_count() == k for m in ms)


def test_popcounts_match_bin():
    assert [int(x) for x in popcounts(6)] == [bin(i).count("1") for i in range(64)]


@given(st.lists(st.integers(0, 5), min_size=16, max_size=16))
def test_zeta_transforms_against_brute_force(vals):
    n = 4
    base = np.array(vals, dtype=np.int8)
    sup = superset_or((base > 2).copy(), n)
    mx = subset_max(base.copy(), n)
    for X in range(16):
        assert sup[X] == any(base[Y] > 2 for Y in range(16) if Y & X == X)
        assert mx[X] == max(base[Y] for Y in range(16) if Y & ~X == 0)


# -- rank oracle ----------------------------------------------------------------------------


def test_uniform_ranks():
    U = C.uniform(2, 4)
    assert U.rank({0, 1, 2}) == 2
    assert U.rank(set()) == 0
    assert all(U.rank(X) == min(len(X), 2) for k in range(5) for X in combinations(range(4), k))


def test_fano_rank_and_closure():
    F = C.fano()
    assert F.rank(range(7)) == 3
    assert F.n == 7 and F.num_bases() == 28
    U = C.uniform(2, 4)
    assert U.closure({0, 1}) == frozenset(range(4))


@given(small_matroids())
def test_rank_axioms(M):
    rk = M.table
    for X in range(1 << M.n):
        assert 0 <= rk[X] <= X.bit_count()
        for e in range(M.n):
            assert rk[X] <= rk[X | 1 << e] <= rk[X] + 1
    assert is_matroid_table(rk, M.n)


@given(small_matroids(max_n=6), st.data())
def test_submodular_rank(M, data):
    X = data.draw(subsets(M.n))
    Y = data.draw(subsets(M.n))
    assert M.rank_mask(X) + M.rank_mask(Y) >= M.rank_mask(X & Y) + M.rank_mask(X | Y)


@given(matrix_matroids(max_n=6, max_r=3))
def test_matrix_rank_against_span_count(M):
    if M.source is None:  # rank 0
        assert M.r == 0
        return
    p, rows = M.source["p"], M.source["rows"]
    cols = [[row[j] for row in rows] for j in range(M.n)]
    for X in range(1 << M.n):
        assert M.rank_mask(X) == brute_rank_gf([cols[j] for j in bits_of(X)], p)


def test_graph_rank_against_networkx():
    import networkx as nx

    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 3), (0, 1)]
    M = Matroid.from_graph(edges)
    for X in range(1 << M.n):
        g = nx.MultiGraph()
        g.add_nodes_from(range(4))
        g.add_edges_from(edges[i] for i in bits_of(X))
        assert M.rank_mask(X) == 4 - nx.number_connected_components(g)


def test_loops_and_coloops_in_graph():
    M = Matroid.from_graph([(0, 0), (0, 1), (1, 2), (2, 1)])
    assert M.loops() == frozenset({0})
    assert M.coloops() == frozenset({1})
    assert M.closure(set()) == M.loops()


# -- circuits, cocircuits, duality -------------------------------------------------------------


def test_uniform_circuits_are_three_sets():
    assert C.uniform(2, 4).circuits() == {frozenset(c) for c in combinations(range(4), 3)}


def test_k4_has_seven_circuits():
    W = C.wheel(3)
    sizes = sorted(len(c) for c in W.circuits())
    assert sizes == [3, 3, 3, 3, 4, 4, 4]


@given(small_matroids(max_n=6))
def test_circuits_against_minimal_dependent_sets(M):
    assert set(M.circuit_masks()) == brute_circuits(M)


@given(small_matroids(max_n=6))
def test_cocircuits_are_hyperplane_complements(M):
    hyps = {M.full ^ H for H in M.hyperplane_masks()}
    assert set(M.cocircuit_masks()) == hyps


def _five_element_planes(M):
    return [
        P
        for P in masks_of_size(M.n, 5)
        if M.rank_mask(P) == 3 and all(M.rank_mask(T) == 3 for T in masks_of_size(M.n, 3) if T & P == T)
    ]


def test_fano_has_no_five_element_plane():
    assert _five_element_planes(C.fano()) == []


def test_cocircuits_meet_five_element_planes(small_catalog):
    # orthogonality: a cocircuit meeting a U(3,5)-restriction meets it in at least 3 elements
    seen = 0
    for e in small_catalog:
        M = e.matroid
        for P in _five_element_planes(M):
            seen += 1
            assert all((P & K).bit_count() in (0, 3, 4, 5) for K in M.cocircuit_masks())
    assert seen > 0


@given(small_matroids())
def test_dual_is_involution_and_bases_complement(M):
    D = M.dual()
    assert D.dual() == M
    assert set(D.basis_masks()) == {M.full ^ B for B in M.basis_masks()}


def test_fano_dual_is_not_fano():
    F = C.fano()
    assert is_isomorphic(F, F.dual()) is None
    assert F.dual().r == 4


def test_fano_coclosure_against_dual_ranks():
    F = C.fano()
    rkd = table_from_bases([F.full ^ B for B in F.basis_masks()], 7)
    for K in F.circuit_masks():
        if K.bit_count() != 4:
            continue
        X = F.full ^ K
        want = {e for e in range(7) if rkd[X | 1 << e] == rkd[X]}
        assert F.coclosure(to_set(X)) == frozenset(want)


# -- minors ----------------------------------------------------------------------------------


def test_uniform_minors():
    U = C.uniform(2, 4)
    assert is_isomorphic(U.delete({3}), C.uniform(2, 3))
    assert is_isomorphic(U.contract({3}), C.uniform(1, 3))


@given(small_matroids(max_n=6), st.data())
def test_minor_rank_formula(M, data):
    Cm = data.draw(subsets(M.n))
    Dm = data.draw(subsets(M.n)) & ~Cm
    N = M.minor(contract=Cm, delete=Dm)
    kept = [e for e in range(M.n) if not (Cm | Dm) >> e & 1]
    assert N.labels == tuple(M.labels[e] for e in kept)
    for Y in range(1 << N.n):
        full = sum(1 << kept[i] for i in bits_of(Y))
        assert N.rank_mask(Y) == M.rank_mask(full | Cm) - M.rank_mask(Cm)


@given(small_matroids(max_n=6), st.data())
def test_minor_duality(M, data):
    X = data.draw(subsets(M.n))
    assert M.contract(X).dual() == M.dual().delete(X)
    assert M.delete(X).dual() == M.dual().contract(X)


def test_minor_rejects_overlap():
    with pytest.raises(MatroidError):
        C.uniform(2, 4).minor(contract={0}, delete={0})


# -- simplification ---------------------------------------------------------------------------


def test_simplify_parallel_class():
    S, rep = simplify(C.uniform(1, 3))
    assert S.n == 1
    assert rep == {0: 0, 1: 0, 2: 0}


def test_simplify_three_connected_is_identity():
    F = C.fano()
    S, _ = simplify(F)
    assert S == F


def test_cosimplify_collapses_series_class():
    # a 5-cycle with a chord: series classes {0, 1} and {2, 3, 4}
    M = Matroid.from_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    S, rep = cosimplify(M)
    series = {K for K in M.cocircuit_masks() if K.bit_count() == 2}
    assert series == {0b11, 0b1100, 0b11000, 0b10100}
    assert S.n == 3
    assert rep[0] == rep[1] and rep[2] == rep[3] == rep[4] and rep[0] != rep[2]


# -- construction and validation -------------------------------------------------------------


def test_invalid_basis_family_is_rejected():
    with pytest.raises(MatroidError):
        Matroid([0b0011, 0b1100], 4)
    with pytest.raises(MatroidError):
        Matroid([0b01, 0b110], 3)
    with pytest.raises(MatroidError):
        Matroid([], 3)


def test_labels_must_be_unique():
    with pytest.raises(MatroidError):
        Matroid([0b11], 2, labels=["a", "a"])


def test_error_hierarchy():
    assert issubclass(MatroidError, DetachkitError)
    assert issubclass(SizeLimitError, DetachkitError)


def test_large_matroids_use_an_oracle():
    # 17 columns exceed the table limit; rank queries still work
    rows = [[1 if (j >> i) & 1 else 0 for j in range(1, 18)] for i in range(5)]
    M = Matroid.from_matrix(rows, 2)
    assert not M.has_table()
    assert M.r == 5
    assert M.rank_mask(0b111) == 2  # columns 1, 2, 3 are dependent
    with pytest.raises(SizeLimitError):
        M.table


def test_pickle_and_hash_round_trip():
    M = C.fano()
    N = pickle.loads(pickle.dumps(M))
    assert N == M and hash(N) == hash(M) and N.labels == M.labels


def test_direct_sum_rank_adds():
    S = direct_sum(C.uniform(1, 2), C.uniform(2, 3))
    assert S.n == 5 and S.r == 3
    assert S.rank_mask(0b00011) == 1 and S.rank_mask(0b11100) == 2


def test_permute_relabels_consistently():
    F = C.fano()
    order = [3, 1, 4, 0, 6, 2, 5]
    P = F.permute(order)
    for X in range(1 << 7):
        orig = sum(1 << order[i] for i in bits_of(X))
        assert P.rank_mask(X) == F.rank_mask(orig)
    assert P.labels == tuple(F.labels[i] for i in order)
