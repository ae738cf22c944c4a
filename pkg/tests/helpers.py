"""Brute-force oracles and hypothesis strategies shared by the tests."""

from itertools import combinations

from hypothesis import strategies as st

from spanfactor.graph import Multigraph


@st.composite
def multigraphs(draw, min_n: int = 2, max_n: int = 7, max_m: int = 12, no_isolated: bool = False) -> Multigraph:
    n = draw(st.integers(min_n, max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, max_size=max_m))
    if no_isolated:
        covered = {x for e in edges for x in e}
        edges += [(v, (v + 1) % n) for v in range(n) if v not in covered]
    return Multigraph(n, tuple(edges))


@st.composite
def trees_st(draw, min_n: int = 2, max_n: int = 12) -> Multigraph:
    n = draw(st.integers(min_n, max_n))
    return Multigraph(n, tuple((draw(st.integers(0, v - 1)), v) for v in range(1, n)))



def brute_matching_number(G: Multigraph) -> int:
    """Largest pairwise disjoint edge set, by trying every edge subset from large to small."""
    for size in range(G.n // 2, 0, -1):
        for sub in combinations(G.edges, size):
            ends = [x for e in sub for x in e]
            if len(set(ends)) == len(ends):
                return size
    return 0


def brute_colorable(edges: list[tuple[int, int]], k: int) -> bool:
    """Plain backtracking over colors, no symmetry breaking."""
    used: dict[tuple[int, int], bool] = {}

    def rec(i: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        for c in range(k):
            if (u, c) in used or (v, c) in used:
                continue
            used[(u, c)] = used[(v, c)] = True
            if rec(i + 1):
                return True
            del used[(u, c)], used[(v, c)]
        return False

    return rec(0)


def brute_max_k_ecs(G: Multigraph, k: int) -> list[frozenset[int]]:
    """Every maximum k-edge-colorable edge subset."""
    for size in range(G.m, -1, -1):
        found = [
            frozenset(sub)
            for sub in combinations(range(G.m), size)
            if brute_colorable([G.edges[i] for i in sub], k)
        ]
        if found:
            return found
    return [frozenset()]


def brute_sp(G: Multigraph) -> int:
    """Least k with a [1,k]-factor, trying every edge subset."""
    best = None
    for mask in range(1, 1 << G.m):
        deg = [0] * G.n
        for i in range(G.m):
            if mask >> i & 1:
                u, v = G.edges[i]
                deg[u] += 1
                deg[v] += 1
        if min(deg) >= 1 and (best is None or max(deg) < best):
            best = max(deg)
    return best
