import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanfactor.errors import GraphInputError, ParseError, PreconditionError
from spanfactor.graph import (
    Multigraph,
    Subgraph,
    bfs_layers,
    canonical,
    complete,
    component_profile,
    cycle,
    decode,
    degree,
    delete_vertices,
    encode,
    graft,
    is_tree,
    max_multiplicity,
    parse,
    path,
    prop21_tree,
    random_multigraph,
    serialize,
    star,
    tightness_graph,
    underlying_simple,
)
from spanfactor.matching import maximum_matching

from helpers import multigraphs, trees_st


# --- representation ---------------------------------------------------------


def test_loops_and_bad_indices_rejected():
    with pytest.raises(GraphInputError):
        Multigraph(2, ((0, 0),))
    with pytest.raises(GraphInputError):
        Multigraph(2, ((0, 2),))
    with pytest.raises(GraphInputError):
        Subgraph(path(3), frozenset({5}))


def test_degree_examples():
    assert degree(path(2), 0) == 1
    assert degree(star(3), 0) == 3
    assert degree(Multigraph(2, ((0, 1), (0, 1))), 0) == 2
    with pytest.raises(GraphInputError):
        degree(path(2), 2)


def test_max_multiplicity_examples():
    assert max_multiplicity(Multigraph(2, ((0, 1), (1, 0)))) == 2
    assert max_multiplicity(complete(4)) == 1
    assert max_multiplicity(Multigraph(3, ())) == 0


def test_underlying_simple_keeps_first_copy():
    G = Multigraph(3, ((0, 1), (1, 2), (1, 0), (2, 1)))
    S, kept = underlying_simple(G)
    assert S.m == 2 and kept == [0, 1]


def test_delete_vertices_examples():
    P, index = delete_vertices(cycle(5), [0])
    assert (P.n, P.m) == (4, 3) and index == {1: 0, 2: 1, 3: 2, 4: 3}
    S, _ = delete_vertices(star(3), [0])
    assert (S.n, S.m) == (3, 0)
    E, _ = delete_vertices(complete(4), [1, 3])
    assert (E.n, E.m) == (2, 1)


def test_component_profile_examples():
    assert component_profile(cycle(5))[1:] == (1, 0)
    assert len(component_profile(cycle(5)).components) == 1
    prof = component_profile(delete_vertices(star(3), [0])[0])
    assert (len(prof.components), prof.odd, prof.isolated) == (3, 3, 3)
    assert component_profile(path(4))[1:] == (0, 0)


def test_bfs_layers_examples():
    assert bfs_layers(path(4), 0) == [[0], [1], [2], [3]]
    assert bfs_layers(star(3), 0) == [[0], [1, 2, 3]]
    assert bfs_layers(cycle(4), 0) == [[0], [1, 3], [2]]
    with pytest.raises(GraphInputError):
        bfs_layers(Multigraph(3, ((0, 1),)), 0)


@given(multigraphs(), st.data())
def test_odd_components_dominate_isolated(G, data):
    S = data.draw(st.sets(st.integers(0, G.n - 1)))
    prof = component_profile(delete_vertices(G, S)[0])
    assert prof.odd >= prof.isolated


@given(trees_st(min_n=2))
def test_tree_edges_join_consecutive_layers(T):
    layers = bfs_layers(T, 0)
    level = {v: i for i, layer in enumerate(layers) for v in layer}
    assert sorted(level) == list(range(T.n))
    assert all(abs(level[u] - level[v]) == 1 for u, v in T.edges)


# --- graft ------------------------------------------------------------------


def test_graft_examples():
    res = graft(path(3), 2, 0)
    assert is_tree(res.tree) and res.tree.n == 5 and sorted(res.tree.degrees) == [1, 1, 2, 2, 2]
    broom = graft(path(3), 3, 0).tree
    assert broom.n == 6 and sorted(broom.degrees) == [1, 1, 1, 2, 2, 3]
    with pytest.raises(PreconditionError):
        graft(path(3), 2, 1)


@settings(max_examples=200)
@given(trees_st(min_n=3), st.integers(2, 6), st.data())
def test_graft_shape(T1, p, data):
    B = [v for v in range(T1.n) if T1.degrees[v] < T1.max_degree]
    if not B:
        return
    v = data.draw(st.sampled_from(B))
    res = graft(T1, p, v)
    T = res.tree
    assert is_tree(T) and T.n == T1.n + p
    assert T.max_degree == max(T1.max_degree, p, T1.degrees[v] + 1)
    assert T.degrees[res.center] == p and res.attach == v


# --- generators ---------------------------------------------------------------


@pytest.mark.parametrize("a,b,n", [(1, 1, 4), (1, 2, 4), (2, 1, 5), (2, 2, 5), (1, 1, 7)])
def test_prop21_vertex_count(a, b, n):
    G = prop21_tree(a, b, n)
    assert is_tree(G) and G.n == 3 * a * n**b + 1


def test_prop21_rejects_small_parameters():
    with pytest.raises(GraphInputError):
        prop21_tree(1, 1, 3)
    with pytest.raises(GraphInputError):
        prop21_tree(0, 1, 4)


def test_tightness_graph_examples():
    K4 = complete(4)
    F = maximum_matching(K4)
    f = F.sorted_edges()[0]
    G = tightness_graph(K4, f, F.edges)
    assert (G.n, G.m) == (6, 8) and sorted(G.degrees) == [2, 2, 3, 3, 3, 3]
    C6 = tightness_graph(cycle(4), 0)
    assert (C6.n, C6.m) == (6, 6) and set(C6.degrees) == {2}
    P4 = tightness_graph(complete(2), 0)
    assert is_tree(P4) and P4.n == 4 and P4.max_degree == 2


def test_tightness_graph_preconditions():
    with pytest.raises(PreconditionError):
        tightness_graph(path(3), 0)
    K4 = complete(4)
    with pytest.raises(PreconditionError):
        tightness_graph(K4, 0, [1, 2])  # not a perfect matching


def test_random_multigraph_is_deterministic():
    a = random_multigraph(8, 12, 3, seed=11)
    assert a == random_multigraph(8, 12, 3, seed=11)
    assert a != random_multigraph(8, 12, 3, seed=12)
    assert a.m == 12 and max_multiplicity(a) <= 3


# --- text format --------------------------------------------------------------


def test_parse_examples():
    assert parse("3 2\n0 1\n1 2") == path(3)
    with pytest.raises(ParseError) as info:
        parse("2 1\n0 0")
    assert info.value.line == 2


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("x 1\n", 1),
        ("3 2\n0 1\n", 2),
        ("3 1\n0 5\n", 2),
        ("3 1\n0 1\n1 2\n", 3),
        ("# c\n3 1\n0\n", 3),
        ("3 -1\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_serialize_sorts_and_keeps_comments():
    G = Multigraph(3, ((2, 1), (1, 0), (2, 1)))
    text = serialize(G, ["made by hand"])
    assert text == "# made by hand\n3 3\n0 1\n1 2\n1 2\n"
    assert parse(text) == canonical(G)


@given(multigraphs())
def test_round_trip_is_canonical(G):
    text = serialize(G)
    assert serialize(parse(text)) == text
    assert parse(text) == canonical(G)
    assert decode(encode(G)) == G
