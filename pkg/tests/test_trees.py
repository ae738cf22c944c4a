import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanfactor.coloring import find_k_edge_coloring
from spanfactor.errors import GraphInputError, PreconditionError
from spanfactor.families import connected_graphs, trees
from spanfactor.graph import Multigraph, complete, cycle, graft, is_odd_cycle, is_tree, path, star
from spanfactor.sp import sp, sp_formula
from spanfactor.trees import (
    canonical_tree_code,
    classify_AB,
    extend_to_spanning_delta,
    is_sp_delta_tree,
    layered_star_decomposition,
    operprop_case,
    peel_step,
    sp_delta_connected,
    sp_delta_graph,
    tree_centers,
    trees_isomorphic,
    verify_operprop_case,
)

from helpers import trees_st

BROOM = graft(path(3), 3, 0).tree


def test_classify_examples():
    assert classify_AB(star(3)) == ([0], [1, 2, 3])
    assert classify_AB(path(4)) == ([1, 2], [0, 3])
    assert classify_AB(path(2)) == ([0, 1], [])
    with pytest.raises(GraphInputError):
        classify_AB(cycle(3))


def test_layered_star_examples():
    H = layered_star_decomposition(path(4), 0)
    assert H.sorted_edges() == [0, 2] and H.is_spanning()
    assert find_k_edge_coloring(H, 1) is not None
    H = layered_star_decomposition(star(3), 1)
    assert H.sorted_edges() == [1, 2] and H.missed() == [1] and H.max_degree == 2
    H = layered_star_decomposition(path(3), 0)
    assert H.sorted_edges() == [1] and H.missed() == [0]
    with pytest.raises(PreconditionError):
        layered_star_decomposition(path(3), 1)
    with pytest.raises(PreconditionError):
        layered_star_decomposition(path(2), 0)


def test_extend_to_spanning_delta_examples():
    S = star(3)
    H = extend_to_spanning_delta(S, 1, layered_star_decomposition(S, 1))
    assert H.edges == frozenset(range(3))
    P3 = path(3)
    H = extend_to_spanning_delta(P3, 0, layered_star_decomposition(P3, 0))
    assert H.edges == frozenset({0, 1})
    P5 = path(5)
    v = next(v for v in classify_AB(P5).B if layered_star_decomposition(P5, v).missed() == [v])
    H = extend_to_spanning_delta(P5, v, layered_star_decomposition(P5, v))
    assert H.is_spanning() and H.degrees[v] == 1 and find_k_edge_coloring(H, P5.max_degree) is not None
    with pytest.raises(PreconditionError):
        extend_to_spanning_delta(path(4), 0, layered_star_decomposition(path(4), 0))


def test_layered_star_on_all_small_trees():
    for T in trees(12, min_n=3):
        delta = T.max_degree
        sp_is_delta = sp(T) == delta
        for v in classify_AB(T).B:
            H = layered_star_decomposition(T, v)
            assert H.missed() in ([], [v])
            assert H.max_degree <= delta - 1
            if sp_is_delta:
                assert H.missed() == [v]
                H2 = extend_to_spanning_delta(T, v, H)
                assert H2.is_spanning() and H2.degrees[v] == 1


def test_peel_step_examples():
    T1, step = peel_step(path(5))
    assert step.z == 1 and step.p == 2 and T1.n == 3 and is_tree(T1)
    T1, step = peel_step(BROOM)
    assert step.z == 1 and step.p == 2  # lowest-index candidate
    T1, step = peel_step(BROOM, choose=max)
    assert step.z == 3 and step.p == 3 and T1.n == 3 and trees_isomorphic(T1, path(3))
    assert peel_step(star(4)) is None


@pytest.mark.parametrize("T,holds", [(star(3), True), (path(5), True), (path(4), False), (path(2), True), (BROOM, False)])
def test_recognizer_examples(T, holds):
    assert bool(is_sp_delta_tree(T)) == holds == (sp(T) == T.max_degree)


def test_recognizer_matches_formula_on_all_trees():
    for T in trees(12):
        rec = is_sp_delta_tree(T)
        assert rec.holds == (sp_formula(T) == T.max_degree)
        if rec.holds:
            rebuilt, pos = rec.certificate.replay()
            assert trees_isomorphic(T, rebuilt)
            assert sorted(tuple(sorted((pos[u], pos[v]))) for u, v in T.edges) == sorted(
                tuple(sorted(e)) for e in rebuilt.edges
            )


def test_peel_order_independence():
    for T in trees(10):
        answers = {is_sp_delta_tree(T, choose).holds for choose in (min, max, lambda c: c[len(c) // 2])}
        rng = random.Random(T.n)
        answers |= {is_sp_delta_tree(T, rng.choice).holds for _ in range(3)}
        assert len(answers) == 1


@settings(max_examples=200)
@given(trees_st(min_n=3, max_n=9), st.integers(2, 5), st.data())
def test_graft_case_conclusions(T1, p, data):
    B = classify_AB(T1).B
    if not B:
        return
    v = data.draw(st.sampled_from(B))
    case = operprop_case(T1, p, sp(T1))
    if case is not None:
        assert verify_operprop_case(T1, p, v, case)


def test_graft_case_examples():
    assert verify_operprop_case(path(3), 2, 0, "d")
    assert verify_operprop_case(path(4), 2, 0, "c")
    assert verify_operprop_case(star(3), 2, 1, "a")
    with pytest.raises(PreconditionError):
        verify_operprop_case(path(4), 2, 0, "d")


@pytest.mark.parametrize("G,expected", [(cycle(5), True), (cycle(6), False), (complete(4), False), (star(3), True)])
def test_sp_delta_connected_examples(G, expected):
    assert sp_delta_connected(G) == expected


def test_sp_delta_only_for_odd_cycles_and_trees():
    for G in connected_graphs(7):
        exact = sp(G) == G.max_degree
        assert sp_delta_connected(G) == exact
        if exact:
            assert is_odd_cycle(G) or (is_tree(G) and is_sp_delta_tree(G).holds)


def test_component_rule_needs_global_max_degree():
    # C_5 has sp = Δ = 2 on its own, but next to a K_{1,4} plus an edge the global Δ is 4
    C5_plus = Multigraph(11, tuple(cycle(5).edges) + ((5, 6), (5, 7), (5, 8), (5, 9), (9, 10)))
    assert sp(C5_plus) != C5_plus.max_degree
    assert not sp_delta_graph(C5_plus)
    # the looser reading ("some component has sp = Δ") would wrongly say yes
    assert sp_delta_connected(cycle(5))
    both = Multigraph(5 + 4, tuple(cycle(5).edges) + ((5, 6), (5, 7), (5, 8)))
    assert sp(both) == both.max_degree and sp_delta_graph(both)


def test_disconnected_rule_on_pairs_of_small_graphs():
    small = list(connected_graphs(5))
    rng = random.Random(3)
    for _ in range(300):
        A, B = rng.choice(small), rng.choice(small)
        G = Multigraph(A.n + B.n, tuple(A.edges) + tuple((u + A.n, v + A.n) for u, v in B.edges))
        assert sp_delta_graph(G) == (sp(G) == G.max_degree)


def test_canonical_tree_code_matches_networkx_isomorphism():
    sample = list(trees(8))
    rng = random.Random(5)
    for _ in range(400):
        T1, T2 = rng.choice(sample), rng.choice(sample)
        perm = list(range(T2.n))
        rng.shuffle(perm)
        T2 = Multigraph(T2.n, tuple((perm[u], perm[v]) for u, v in T2.edges))
        expected = nx.is_isomorphic(nx.Graph(list(T1.edges)), nx.Graph(list(T2.edges))) if T1.n == T2.n else False
        assert trees_isomorphic(T1, T2) == expected


def test_tree_centers():
    assert tree_centers(path(4)) == [1, 2]
    assert tree_centers(path(5)) == [2]
    assert tree_centers(star(3)) == [0]
    assert canonical_tree_code(path(2)) == "(())"
