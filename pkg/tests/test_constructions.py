from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from detachkit import constructions as C
from detachkit.bits import bits_of
from detachkit.catalog import simple_3_connected_graphs
from detachkit.connectivity import is_3_connected, triads, triangles
from detachkit.errors import PreconditionError
from detachkit.isomorphism import is_isomorphic
from detachkit.matroid import Matroid


def relax(M, X):
    return Matroid(list(M.basis_masks()) + [X], n=M.n, labels=M.labels)


def legs_of(M):
    return C.spike_legs(M)


# -- named families ------------------------------------------------------------------------


def test_small_wheels_and_whirls():
    assert is_isomorphic(C.wheel(3), C.graphic(C.complete_graph(4)))
    assert is_isomorphic(C.whirl(2), C.uniform(2, 4))
    for r in (3, 4):
        W, V = C.wheel(r), C.whirl(r)
        rim = sum(1 << i for i, lab in enumerate(W.labels) if lab.startswith("r"))
        assert W.is_circuit_mask(rim) and W.rank_mask(rim) == r - 1
        assert set(V.basis_masks()) == set(W.basis_masks()) | {rim}
        assert is_3_connected(W) and is_3_connected(V)


def test_fano_is_pg_2_2_and_deletions_are_k4():
    F = C.fano()
    lines = [T for T in triangles(F)]
    assert len(lines) == 7
    # any two points lie on exactly one line
    for a, b in combinations(range(7), 2):
        assert sum(1 for L in lines if L >> a & 1 and L >> b & 1) == 1
    for e in range(7):
        assert is_isomorphic(F.delete(1 << e), C.wheel(3))


def test_non_fano_is_a_relaxed_fano():
    F = C.fano()
    L = triangles(F)[0]
    assert is_isomorphic(relax(F, L), C.non_fano())


def test_k33k():
    M = C.k33k(3)
    assert (M.n, M.r) == (9, 5)
    assert triangles(M) == []
    with pytest.raises(PreconditionError):
        C.k33k(2)


def test_uniform_rejects_bad_rank():
    with pytest.raises(PreconditionError):
        C.uniform(4, 3)


# -- spikes -------------------------------------------------------------------------------


@pytest.mark.parametrize("t", [4, 5])
def test_free_spike_small_circuits_are_leg_pairs(t):
    S = C.spike(t)
    assert (S.n, S.r) == (2 * t, t)
    legs = legs_of(S)
    quads = {a | b for a, b in combinations(legs, 2)}
    assert {K for K in S.circuit_masks() if K.bit_count() <= t} == quads
    assert all(S.is_cocircuit_mask(Q) for Q in quads)


def test_spike_three_quads():
    S = C.spike(3)
    legs = legs_of(S)
    for a, b in combinations(legs, 2):
        assert S.is_circuit_mask(a | b) and S.is_cocircuit_mask(a | b)


def test_tip_and_cotip():
    S = C.spike(4, tip=True, cotip=True)
    t, s = S.index("t"), S.index("s")
    legs = legs_of(S)
    assert {L | 1 << t for L in legs} <= set(triangles(S))
    assert {L | 1 << s for L in legs} <= set(triads(S))
    assert is_3_connected(S)
    assert S.n == 10 and S.r == 5


def test_spike_preconditions():
    with pytest.raises(PreconditionError):
        C.spike(2)
    assert C.spike(2, True, True).n == 6


def test_truncation_lowers_rank_only_at_the_top():
    W = C.wheel(4)
    T = C.truncate(W)
    assert T.r == 3
    assert all(T.rank_mask(X) == min(W.rank_mask(X), 3) for X in range(1 << W.n))


# -- sums and exchanges ---------------------------------------------------------------------


def test_two_sum_sizes_and_lines():
    A = C.uniform(2, 3).relabel(["a", "b", "p"])
    B = C.uniform(2, 3).relabel(["c", "d", "p"])
    S = C.two_sum(A, B, "p")
    assert (S.n, S.r) == (4, 3)
    # two triangles glued on p then p removed: a 4-circuit, which is U(3,4), not U(2,4)
    assert is_isomorphic(S, C.uniform(3, 4))
    assert not is_isomorphic(S, C.uniform(2, 4))


def test_two_sum_of_graphs_is_graphic_two_sum():
    K = C.graphic(C.complete_graph(4))
    A = K.relabel([("p" if lab == "01" else "a" + lab) for lab in K.labels])
    B = K.relabel([("p" if lab == "01" else "b" + lab) for lab in K.labels])
    S = C.two_sum(A, B, "p")
    edges = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)]
    assert (S.n, S.r) == (10, 5)
    assert is_isomorphic(S, Matroid.from_graph(edges))
    with pytest.raises(PreconditionError):
        C.two_sum(A, A, "p")  # ground sets overlap beyond the basepoint


def test_gpc_of_two_k4s_is_a_clique_sum():
    # two K4s on a common triangle {0,1,2}: the graph K5 minus an edge
    e1 = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    e2 = [(0, 1), (0, 2), (1, 2), (0, 4), (1, 4), (2, 4)]
    A = Matroid.from_graph(e1, ["t01", "t02", "t12", "a", "b", "c"])
    B = Matroid.from_graph(e2, ["t01", "t02", "t12", "x", "y", "z"])
    P = C.gpc_triangle(A, B, ("t01", "t02", "t12"))
    want = Matroid.from_graph(e1 + e2[3:], list(A.labels) + ["x", "y", "z"])
    assert P.labels == want.labels
    assert (P.table == want.table).all()


def test_gpc_needs_a_modular_triangle():
    U = C.uniform(3, 6).relabel(list("abcdef"))
    with pytest.raises(PreconditionError):
        C.gpc_triangle(U, U.relabel(list("abcxyz")), ("a", "b", "c"))


def test_delta_y_of_k4():
    K = C.wheel(3)
    T = triangles(K)[0]
    D = C.delta_y(K, bits_of(T))
    assert is_isomorphic(D, C.graphic(C.complete_bipartite_graph(2, 3)))
    assert D.labels == K.labels
    assert D.is_cocircuit_mask(T)


def test_delta_y_round_trip_on_graphs():
    count = 0
    for G in simple_3_connected_graphs(9):
        M = C.graphic(G)
        for T in triangles(M):
            D = C.delta_y(M, bits_of(T))
            back = C.y_delta(D, bits_of(T))
            assert (back.table == M.table).all()
            count += 1
    assert count > 0


def test_exchange_preconditions():
    with pytest.raises(PreconditionError):
        C.delta_y(C.uniform(3, 6), (0, 1, 2))
    with pytest.raises(PreconditionError):
        C.y_delta(C.uniform(3, 6), (0, 1, 2))


def test_graph_exchanges_are_inverse():
    G = C.complete_graph(4)
    D = C.graph_delta_y(G, (0, 1, 3))  # edges 01, 02, 12
    assert D.vertices == 5
    back = C.graph_y_delta(D, (0, 1, 3))
    assert sorted(map(sorted, back.edges)) == sorted(map(sorted, G.edges))
    with pytest.raises(PreconditionError):
        C.graph_delta_y(G, (0, 1, 5))


# -- wheel attachments -------------------------------------------------------------------------


def test_attachment_without_wheels_is_the_spike():
    M = C.attach_wheels_to_spike(C.WheelAttachmentSpec(legs=4, wheel_ranks=()))
    assert (M.table == C.spike(4, True, True).table).all()


def test_attachment_with_wheels_is_three_connected():
    M = C.attach_wheels_to_spike(C.WheelAttachmentSpec(legs=3, wheel_ranks=(3, 4)))
    assert is_3_connected(M)
    # a rank-k wheel glued on a triangle adds 2k - 3 elements, then x_i is deleted
    assert M.n == 8 + (3 - 1) + (5 - 1)


def kprime(n):
    edges = [(0, 1)] + [(i, 3 + j) for i in range(3) for j in range(n)]
    return Matroid.from_graph(edges)


@pytest.mark.parametrize("n", [3, 4])
def test_common_spoke_with_three_point_line_is_k3n_plus_edge(n):
    spec = C.WheelAttachmentSpec(legs=n, wheel_ranks=(3,) * n, line_size=3)
    M = C.common_spoke_wheels(spec, delete_s=True)
    assert is_isomorphic(M, kprime(n))


def test_attachment_spec_validation():
    with pytest.raises(PreconditionError):
        C.WheelAttachmentSpec(legs=3, wheel_ranks=(2,))
    with pytest.raises(PreconditionError):
        C.WheelAttachmentSpec(legs=2, wheel_ranks=(3, 3, 3))
    with pytest.raises(PreconditionError):
        C.WheelAttachmentSpec(legs=3, wheel_ranks=(3, 3), line_size=3)
    with pytest.raises(PreconditionError):
        C.common_spoke_wheels(C.WheelAttachmentSpec(legs=3, wheel_ranks=(3,)))


# -- graph families ---------------------------------------------------------------------------


def test_twisted_wheel_base_case_is_k4():
    G = C.twisted_wheel(0, 0)
    assert nx.is_isomorphic(nx.Graph(G.to_networkx()), nx.complete_graph(4))


@pytest.mark.parametrize("j,k", [(1, 0), (1, 1), (2, 1)])
def test_twisted_wheels_are_three_connected(j, k):
    G = C.twisted_wheel(j, k)
    assert len(G.edges) == 6 + 2 * (j + k) and G.vertices == 4 + j + k
    assert G.is_simple()
    assert nx.node_connectivity(nx.Graph(G.to_networkx())) >= 3


@pytest.mark.parametrize("lengths", [(1, 1, 1), (1, 2, 1), (2, 2, 2)])
def test_multidim_wheel_edge_counts(lengths):
    G = C.multidim_wheel(lengths)
    U = C.unhinged_multidim_wheel(lengths)
    assert len(G.edges) == 2 + sum(2 * m + 1 for m in lengths)
    assert len(U.edges) == len(G.edges) - 1
    assert nx.node_connectivity(nx.Graph(G.to_networkx())) >= 3
    assert is_3_connected(C.graphic(U))
    with pytest.raises(PreconditionError):
        C.multidim_wheel((1, 1))


def test_double_quad_spider_example():
    M = C.double_quad_spider_example()
    assert (M.n, M.r) == (10, 5)
    assert is_3_connected(M)
    spider = sum(1 << M.index(x) for x in ("p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"))
    R = M.minor(delete=M.full ^ spider)
    assert is_isomorphic(R, C.graphic(C.complete_bipartite_graph(2, 4)))
    quadP = sum(1 << M.index(x) for x in ("p1", "p2", "p3", "p4"))
    quadQ = sum(1 << M.index(x) for x in ("q1", "q2", "q3", "q4"))
    assert M.is_circuit_mask(quadP) and M.is_circuit_mask(quadQ)
    with pytest.raises(PreconditionError):
        C.double_quad_spider_example(3, 1, 1)
