"""Graph families for verification campaigns.

Exhaustive families come from networkx: the graph atlas lists every graph
on at most seven vertices up to isomorphism, and ``nonisomorphic_trees``
every tree of a given order.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

import networkx as nx

from .errors import GraphInputError
from .graph import Multigraph, complete, is_connected, random_multigraph

ATLAS_MAX_N = 7


def from_networkx(g: nx.Graph) -> Multigraph:
    index = {v: i for i, v in enumerate(sorted(g.nodes))}
    return Multigraph(len(index), tuple((index[u], index[v]) for u, v in g.edges()))


def all_graphs(max_n: int, min_n: int = 1) -> Iterator[Multigraph]:
    """Every graph on ``min_n..max_n`` vertices, one per isomorphism class."""
    if max_n > ATLAS_MAX_N:
        raise GraphInputError(f"exhaustive enumeration stops at {ATLAS_MAX_N} vertices")
    for g in nx.graph_atlas_g():
        if min_n <= g.number_of_nodes() <= max_n:
            yield from_networkx(g)


def connected_graphs(max_n: int, min_n: int = 2) -> Iterator[Multigraph]:
    """Connected graphs without isolated vertices (so at least two vertices)."""
    for G in all_graphs(max_n, max(min_n, 2)):
        if is_connected(G):
            yield G


def trees(max_n: int, min_n: int = 2) -> Iterator[Multigraph]:
    for n in range(max(min_n, 2), max_n + 1):
        for g in nx.nonisomorphic_trees(n):
            yield from_networkx(g)


def multigraph_variants(base: Multigraph, max_multiplicity: int, max_edges: int) -> Iterator[Multigraph]:
    """Non-simple graphs obtained by giving each edge of ``base`` a multiplicity.

    Multiplicities range over ``1..max_multiplicity`` with total at most
    ``max_edges``; the all-ones vector (``base`` itself) is skipped.
    """
    m = base.m
    if m == 0 or m > max_edges:
        return
    for mult in product(range(1, max_multiplicity + 1), repeat=m):
        total = sum(mult)
        if total > max_edges or total == m:
            continue
        edges = []
        for e, k in zip(base.edges, mult):
            edges.extend([e] * k)
        yield Multigraph(base.n, tuple(edges))


def connected_multigraphs(max_n: int, max_multiplicity: int, max_edges: int) -> Iterator[Multigraph]:
    for G in connected_graphs(max_n):
        yield from multigraph_variants(G, max_multiplicity, max_edges)


def random_suite(count: int, n: int, m: int, max_multiplicity: int, seed: int = 0) -> Iterator[tuple[int, Multigraph]]:
    """``count`` random multigraphs without isolated vertices, with their seeds.

    Seeds ``seed, seed + 1, ...`` are tried in turn and graphs with an
    isolated vertex are skipped.
    """
    if 2 * m < n:
        raise GraphInputError(f"{m} edges cannot cover {n} vertices")
    made, s = 0, seed
    while made < count:
        G = random_multigraph(n, m, max_multiplicity, s)
        if not G.has_isolated_vertex():
            made += 1
            yield s, G
        s += 1


def cubic_graphs(count: int, max_n: int = 14, seed: int = 0) -> Iterator[Multigraph]:
    """Connected simple cubic graphs on 4, 6, ..., ``max_n`` vertices, cycling."""
    if max_n < 4:
        raise GraphInputError("cubic graphs need at least 4 vertices")
    orders = list(range(4, max_n + 1, 2))
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = orders[made % len(orders)]
        G = from_networkx(nx.random_regular_graph(3, n, seed=rng.randrange(2**32)))
        if is_connected(G):
            made += 1
            yield G


def regular_with_perfect_matching(r: int) -> Multigraph:
    """An r-regular graph with a perfect matching: ``K_{r+1}`` for odd r, else ``K_{r,r}``."""
    if r < 1:
        raise GraphInputError("r must be positive")
    if r % 2 == 1:
        return complete(r + 1)
    return Multigraph(2 * r, tuple((i, r + j) for i in range(r) for j in range(r)))
