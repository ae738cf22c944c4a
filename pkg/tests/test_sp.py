import pytest
from hypothesis import given, settings

from spanfactor.coloring import enumerate_max_k_ecs, is_proper, max_k_ecs, nu_k
from spanfactor.errors import GraphInputError, PreconditionError
from spanfactor.families import connected_graphs, random_suite
from spanfactor.graph import (
    Multigraph,
    Subgraph,
    complete,
    components,
    cycle,
    delete_vertices,
    path,
    prop21_tree,
    star,
)
from spanfactor.sp import (
    FactorWitness,
    certify_sp,
    exchange_to_spanning_max,
    min_factor,
    sp,
    sp2_bruteforce,
    sp3_bruteforce,
    sp_factor_search,
    sp_formula,
    spanning_kecs_from_factor,
    spanning_kecs_search,
    spanning_max_exists,
)

from helpers import brute_sp, multigraphs

DOUBLE_PENDANT = Multigraph(3, ((0, 1), (0, 1), (1, 2)))


@pytest.mark.parametrize("G,value", [(complete(2), 1), (cycle(5), 2), (star(3), 3), (path(4), 1), (complete(4), 1)])
def test_sp_examples(G, value):
    assert sp_formula(G) == sp_factor_search(G).sp_value == sp2_bruteforce(G) == sp3_bruteforce(G) == value


def test_factor_witnesses():
    res = sp_factor_search(path(4))
    assert res.sp_value == 1 and res.witness_factor.subgraph.sorted_edges() == [0, 2]
    res = sp_factor_search(star(3))
    assert res.witness_factor.subgraph.edges == frozenset(range(3))
    assert sp_factor_search(prop21_tree(1, 1, 4)).sp_value == 4


def test_isolated_vertices_rejected():
    G = Multigraph(3, ((0, 1),))
    for f in (sp_formula, sp_factor_search, sp2_bruteforce, sp3_bruteforce):
        with pytest.raises(PreconditionError):
            f(G)


@settings(max_examples=200)
@given(multigraphs(max_n=6, max_m=9, no_isolated=True))
def test_three_definitions_and_formula_agree(G):
    value = brute_sp(G)
    assert sp_factor_search(G).sp_value == value
    assert sp2_bruteforce(G) == value
    assert sp3_bruteforce(G) == value
    assert sp_formula(G) == value
    assert 1 <= value <= G.max_degree


def test_sp_agrees_on_random_multigraphs():
    for _, G in random_suite(150, 8, 12, 3, seed=7):
        value = sp_factor_search(G).sp_value
        assert sp_formula(G) == sp2_bruteforce(G) == value


@settings(max_examples=100)
@given(multigraphs(max_n=8, max_m=14, no_isolated=True))
def test_min_factor_is_smallest(G):
    for k in range(1, G.max_degree + 1):
        F = min_factor(G, k)
        if F is None:
            assert k < sp_factor_search(G).sp_value
            continue
        assert F.is_valid() and F.b == k
        # a minimum [1,k]-factor is a forest of stars and paths: each edge is needed
        for e in F.subgraph.edges:
            smaller = Subgraph(G, F.subgraph.edges - {e})
            assert not smaller.is_spanning()


# --- constructions ------------------------------------------------------------


def test_spanning_kecs_from_factor_examples():
    S = star(3)
    col = spanning_kecs_from_factor(FactorWitness(Subgraph(S, frozenset(range(3))), 1, 3))
    assert len(col.host) == 3 and is_proper(col) and len(set(col.color_of.values())) == 3
    C4 = cycle(4)
    col = spanning_kecs_from_factor(FactorWitness(Subgraph(C4, frozenset(range(4))), 1, 2))
    assert len(col.host) == 3 and col.host.is_spanning() and is_proper(col)
    K4 = complete(4)
    M = Subgraph(K4, frozenset({0, 5}))
    col = spanning_kecs_from_factor(FactorWitness(M, 1, 1))
    assert col.host == M and is_proper(col)
    with pytest.raises(GraphInputError):
        spanning_kecs_from_factor(FactorWitness(Subgraph(K4, frozenset({0})), 1, 1))


@given(multigraphs(max_n=8, max_m=14, no_isolated=True))
def test_spanning_kecs_from_factor_property(G):
    res = sp_factor_search(G)
    col = spanning_kecs_from_factor(res.witness_factor)
    assert col.host.is_spanning() and is_proper(col) and max(col.color_of.values()) <= res.sp_value


def test_exchange_example():
    A = Subgraph(DOUBLE_PENDANT, frozenset({0, 2}))
    H = Subgraph(DOUBLE_PENDANT, frozenset({0, 1}))
    trace: list = []
    R = exchange_to_spanning_max(DOUBLE_PENDANT, 2, A, H, trace)
    assert R.host.sorted_edges() == [0, 2] and is_proper(R)
    assert trace == [("cover", 1, 2)]


def test_exchange_fixed_point_and_preconditions():
    K4 = complete(4)
    H = max_k_ecs(K4, 2)
    assert H.host.is_spanning()
    R = exchange_to_spanning_max(K4, 2, H, H)
    assert R.host == H.host
    C5 = cycle(5)
    with pytest.raises(PreconditionError):
        exchange_to_spanning_max(C5, 1, Subgraph(C5, frozenset({0, 2})), max_k_ecs(C5, 1))
    with pytest.raises(PreconditionError):  # H not maximum
        exchange_to_spanning_max(K4, 2, H, Subgraph(K4, frozenset({0})))
    with pytest.raises(PreconditionError):  # A not 1-colorable
        exchange_to_spanning_max(K4, 1, Subgraph(K4, frozenset(range(6))), max_k_ecs(K4, 1))


def test_exchange_on_every_non_spanning_maximum():
    runs = 0
    for G in connected_graphs(6):
        if G.m > 10:
            continue
        for k in range(1, G.max_degree + 1):
            A = spanning_kecs_search(G, k)
            if A is None:
                continue
            target = nu_k(G, k)
            for H in enumerate_max_k_ecs(G, k):
                if H.host.is_spanning():
                    continue
                R = exchange_to_spanning_max(G, k, A, H)
                assert R.host.is_spanning() and len(R.host) == target and is_proper(R)
                runs += 1
    assert runs >= 291


def test_spanning_max_exists_examples():
    K4 = complete(4)
    assert all(spanning_max_exists(K4, k)[0] for k in (1, 2, 3))
    assert not spanning_max_exists(cycle(5), 1)[0]
    assert not spanning_max_exists(star(3), 2)[0]
    found, R = spanning_max_exists(star(3), 3)
    assert found and R.host.is_spanning()


@given(multigraphs(max_n=7, max_m=12, no_isolated=True))
def test_spanning_max_exists_iff_k_at_least_sp(G):
    value = sp_formula(G)
    for k in range(1, G.max_degree + 1):
        found, R = spanning_max_exists(G, k)
        assert found == (k >= value)
        if found:
            assert R.host.is_spanning() and is_proper(R) and len(R.host) == nu_k(G, k)


@given(multigraphs(max_n=7, max_m=12, no_isolated=True))
def test_certify_sp(G):
    res = certify_sp(G)
    S = res.witness_spanning_max
    assert res.witness_factor.is_valid() and res.witness_factor.b == res.sp_value
    assert S.host.is_spanning() and is_proper(S) and len(S.host) == nu_k(G, res.sp_value)


def _on_cycle(G: Multigraph, e: int) -> bool:
    u, v = G.edges[e]
    rest = Multigraph(G.n, tuple(x for i, x in enumerate(G.edges) if i != e))
    return any(u in c and v in c for c in components(rest))


def test_deleting_a_cycle_edge_never_lowers_sp():
    checked = 0
    for G in connected_graphs(6):
        for e in range(G.m):
            if not _on_cycle(G, e):
                continue
            rest = Multigraph(G.n, tuple(x for i, x in enumerate(G.edges) if i != e))
            if rest.has_isolated_vertex():
                continue
            assert sp(G) <= sp(rest) <= rest.max_degree
            checked += 1
    assert checked >= 976


def test_sp_of_disconnected_graph_is_max_over_components():
    G = Multigraph(9, tuple(cycle(5).edges) + ((5, 6), (5, 7), (5, 8)))
    assert sp(G) == 3
    parts = [delete_vertices(G, set(range(G.n)) - set(c))[0] for c in components(G)]
    assert sp(G) == max(sp(C) for C in parts)
