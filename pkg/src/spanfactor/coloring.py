"""Exact edge coloring and maximum k-edge-colorable subgraphs.

Everything here is exact search at desk scale.  Colors are ``1..k``.  Edge
subsets inside the searches are bitmasks over host edge indices.

Search strategy for an edge set and a color budget ``k``:

* reject when a vertex has degree above ``k`` or a component is overfull
  (more than ``k * floor(|V_c| / 2)`` edges);
* bipartite components are colored directly by alternating-path swaps;
* everything else goes to a saturation-ordered backtracking search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import GraphInputError, ResourceCapError
from .graph import Multigraph, Subgraph, max_multiplicity

COLORING_EDGE_CAP = 24
ENUMERATION_EDGE_CAP = 16

__all__ = [
    "EdgeColoring",
    "chromatic_index",
    "color_edges",
    "enumerate_max_k_ecs",
    "find_k_edge_coloring",
    "is_proper",
    "max_k_ecs",
    "max_multiplicity",
    "nu_k",
]


@dataclass(frozen=True)
class EdgeColoring:
    host: Subgraph
    color_of: dict[int, int]
    k: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e in sorted(self.color_of):
            out[self.color_of[e] - 1].append(e)
        return out


def is_proper(coloring: EdgeColoring) -> bool:
    """Every host edge colored in ``1..k`` and no two edges at a vertex share a color."""
    H = coloring.host
    if set(coloring.color_of) != set(H.edges):
        return False
    seen: set[tuple[int, int]] = set()
    for e, c in coloring.color_of.items():
        if not (1 <= c <= coloring.k):
            return False
        for v in H.host.edges[e]:
            if (v, c) in seen:
                return False
            seen.add((v, c))
    return True


def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Group edge positions by connected component."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for i, (u, _) in enumerate(edges):
        groups.setdefault(find(u), []).append(i)
    return list(groups.values())


def _two_color_vertices(edges: list[tuple[int, int]]) -> bool:
    side: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for s in adj:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def _color_bipartite(edges: list[tuple[int, int]], k: int) -> list[int]:
    """Proper k-coloring of a bipartite multigraph with max degree <= k."""
    at: dict[int, dict[int, int]] = {}
    colors = [0] * len(edges)

    def free(v: int) -> int:
        used = at.setdefault(v, {})
        c = 1
        while c in used:
            c += 1
        return c

    for i, (u, v) in enumerate(edges):
        a, b = free(u), free(v)
        if a not in at[v]:
            c = a
        else:
            # swap a/b along the a-b path leaving v; it cannot reach u
            path = []
            x, want = v, a
            while want in at[x]:
                e = at[x][want]
                path.append(e)
                p, q = edges[e]
                x = q if p == x else p
                want = b if want == a else a
            for e in path:
                for w in edges[e]:
                    del at[w][colors[e]]
            for e in path:
                colors[e] = b if colors[e] == a else a
                for w in edges[e]:
                    at[w][colors[e]] = e
            c = a
        colors[i] = c
        at[u][c] = i
        at[v][c] = i
    return colors


def _color_backtrack(edges: list[tuple[int, int]], k: int) -> list[int] | None:
    m = len(edges)
    verts = sorted({x for e in edges for x in e})
    pos = {v: i for i, v in enumerate(verts)}
    ends = [(pos[u], pos[v]) for u, v in edges]
    used = [0] * len(verts)
    colors = [0] * m
    full = (1 << k) - 1

    def solve(done: int, top: int) -> bool:
        if done == m:
            return True
        # most constrained uncolored edge first
        best, best_opts, best_cnt = -1, 0, k + 2
        limit = min(top + 1, k)
        lim_mask = (1 << limit) - 1
        for i in range(m):
            if colors[i]:
                continue
            a, b = ends[i]
            opts = ~(used[a] | used[b]) & full & lim_mask
            cnt = bin(opts).count("1")
            if cnt < best_cnt:
                best, best_opts, best_cnt = i, opts, cnt
                if cnt == 0:
                    return False
        a, b = ends[best]
        opts = best_opts
        while opts:
            bit = opts & -opts
            opts ^= bit
            c = bit.bit_length()
            colors[best] = c
            used[a] |= bit
            used[b] |= bit
            if solve(done + 1, max(top, c)):
                return True
            used[a] &= ~bit
            used[b] &= ~bit
            colors[best] = 0
        return False

    return colors if solve(0, 0) else None


def color_edges(n: int, edges: list[tuple[int, int]], k: int) -> list[int] | None:
    """A proper coloring of ``edges`` with colors ``1..k``, or ``None``."""
    if not edges:
        return []
    if k < 1:
        return None
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if max(deg) > k:
        return None
    result = [0] * len(edges)
    for group in _components(n, edges):
        sub = [edges[i] for i in group]
        nv = len({x for e in sub for x in e})
        if len(sub) > k * (nv // 2):
            return None
        if _two_color_vertices(sub):
            colors = _color_bipartite(sub, k)
        else:
            colors = _color_backtrack(sub, k)
            if colors is None:
                return None
        for i, c in zip(group, colors):
            result[i] = c
    return result


def _edge_list(G: Multigraph | Subgraph) -> tuple[Multigraph, list[int]]:
    if isinstance(G, Subgraph):
        return G.host, sorted(G.edges)
    return G, list(range(G.m))


def _check_cap(count: int, cap: int, name: str) -> None:
    if count > cap:
        raise ResourceCapError(name, cap, count)


def find_k_edge_coloring(H: Multigraph | Subgraph, k: int, cap: int = COLORING_EDGE_CAP) -> EdgeColoring | None:
    if k < 1:
        raise GraphInputError("k must be positive")
    host, idx = _edge_list(H)
    _check_cap(len(idx), cap, "coloring-edges")
    colors = color_edges(host.n, [host.edges[i] for i in idx], k)
    if colors is None:
        return None
    sub = H if isinstance(H, Subgraph) else Subgraph(H, frozenset(idx))
    return EdgeColoring(sub, dict(zip(idx, colors)), k)


def chromatic_index(G: Multigraph | Subgraph, cap: int = COLORING_EDGE_CAP) -> tuple[int, EdgeColoring]:
    """Exact chromatic index together with a witness coloring."""
    host, idx = _edge_list(G)
    _check_cap(len(idx), cap, "coloring-edges")
    sub = G if isinstance(G, Subgraph) else Subgraph(G, frozenset(idx))
    if not idx:
        return 0, EdgeColoring(sub, {}, 0)
    delta = sub.max_degree
    upper = min(3 * delta // 2, delta + max_multiplicity(sub.to_multigraph()[0]))
    edges = [host.edges[i] for i in idx]
    for k in range(delta, upper + 1):
        colors = color_edges(host.n, edges, k)
        if colors is not None:
            return k, EdgeColoring(sub, dict(zip(idx, colors)), k)
    raise AssertionError("chromatic index exceeds the Shannon/Vizing bound")


class _SubsetSearch:
    """Include-first depth-first search over edge subsets of a fixed graph.

    Partial subsets are kept properly colored; an edge that cannot be added
    greedily triggers an exact recoloring of the subset, and the branch is
    cut when none exists.
    """

    def __init__(self, G: Multigraph, k: int):
        self.G = G
        self.k = k
        self.m = G.m
        self.full = (1 << k) - 1
        self.memo: dict[int, list[int] | None] = {}

    def recolor(self, mask: int) -> list[int] | None:
        if mask not in self.memo:
            idx = [i for i in range(self.m) if mask >> i & 1]
            colors = color_edges(self.G.n, [self.G.edges[i] for i in idx], self.k)
            self.memo[mask] = None if colors is None else dict(zip(idx, colors))
        return self.memo[mask]

    def bound(self, i: int, deg: list[int]) -> int:
        """Upper bound on how many of edges ``i..m-1`` can still be added."""
        k = self.k
        avail = 0
        cap_deg = [0] * self.G.n
        for j in range(i, self.m):
            u, v = self.G.edges[j]
            if deg[u] < k and deg[v] < k:
                avail += 1
                cap_deg[u] += 1
                cap_deg[v] += 1
        cap = sum(min(k - deg[v], c) for v, c in enumerate(cap_deg) if c)
        return min(avail, cap // 2)

    def walk(self, target: int | None) -> Iterator[tuple[int, dict[int, int]]]:
        """Yield subsets in lexicographic order of their sorted edge indices.

        With ``target`` set, yields every colorable subset of exactly that
        size.  With ``target=None``, runs branch and bound for the largest
        size and yields each strictly better subset as it is found.
        """
        G, k, m = self.G, self.k, self.m
        deg = [0] * G.n
        used = [0] * G.n
        state = {"mask": 0, "size": 0, "colors": {}, "best": -1}

        def rebuild(colors: dict[int, int]) -> None:
            for v in range(G.n):
                used[v] = 0
            for e, c in colors.items():
                u, v = G.edges[e]
                used[u] |= 1 << (c - 1)
                used[v] |= 1 << (c - 1)

        def rec(i: int):
            size = state["size"]
            if target is None:
                if size > state["best"]:
                    state["best"] = size
                    yield state["mask"], dict(state["colors"])
                if i == m or size + self.bound(i, deg) <= state["best"]:
                    return
            else:
                if size == target:
                    yield state["mask"], dict(state["colors"])
                    return
                if i == m or size + self.bound(i, deg) < target:
                    return
            u, v = G.edges[i]
            if deg[u] < k and deg[v] < k:
                colors = state["colors"]
                common = ~(used[u] | used[v]) & self.full
                new_mask = state["mask"] | (1 << i)
                if common:
                    bit = common & -common
                    c = bit.bit_length()
                    colors[i] = c
                    used[u] |= bit
                    used[v] |= bit
                    saved = None
                else:
                    recolored = self.recolor(new_mask)
                    if recolored is None:
                        c = 0
                    else:
                        saved = colors
                        state["colors"] = colors = dict(recolored)
                        rebuild(colors)
                        c = -1
                if c:
                    deg[u] += 1
                    deg[v] += 1
                    old_mask = state["mask"]
                    state["mask"] = new_mask
                    state["size"] = size + 1
                    yield from rec(i + 1)
                    state["mask"] = old_mask
                    state["size"] = size
                    deg[u] -= 1
                    deg[v] -= 1
                    if saved is None:
                        del colors[i]
                        used[u] &= ~bit
                        used[v] &= ~bit
                    else:
                        state["colors"] = saved
                        rebuild(saved)
            yield from rec(i + 1)

        yield from rec(0)


def _upper_bound(G: Multigraph, k: int) -> int:
    return min(G.m, sum(min(d, k) for d in G.degrees) // 2, k * (G.n // 2))


@lru_cache(maxsize=4096)
def _maximum_size(G: Multigraph, k: int) -> int:
    """``nu_k`` by branch and bound; memoised because graphs are immutable."""
    if color_edges(G.n, list(G.edges), k) is not None:
        return G.m
    best = 0
    ub = _upper_bound(G, k)
    for _, coloring in _SubsetSearch(G, k).walk(None):
        best = len(coloring)
        if best == ub:
            break
    return best


def nu_k(G: Multigraph, k: int, cap: int = COLORING_EDGE_CAP) -> int:
    """Size of a maximum k-edge-colorable subgraph."""
    if k < 1:
        raise GraphInputError("k must be positive")
    _check_cap(G.m, cap, "coloring-edges")
    return _maximum_size(G, k)


def _as_result(G: Multigraph, k: int, mask: int, coloring: dict[int, int]) -> EdgeColoring:
    sub = Subgraph(G, frozenset(i for i in range(G.m) if mask >> i & 1))
    return EdgeColoring(sub, coloring, k)


def max_k_ecs(G: Multigraph, k: int, cap: int = COLORING_EDGE_CAP) -> EdgeColoring:
    """The lexicographically smallest maximum k-edge-colorable edge set.

    Returned as its witness coloring; ``.host`` is the subgraph.
    """
    if k < 1:
        raise GraphInputError("k must be positive")
    _check_cap(G.m, cap, "coloring-edges")
    size = _maximum_size(G, k)
    mask, coloring = next(_SubsetSearch(G, k).walk(size))
    return _as_result(G, k, mask, coloring)


def enumerate_max_k_ecs(G: Multigraph, k: int, cap: int = ENUMERATION_EDGE_CAP) -> Iterator[EdgeColoring]:
    """Every maximum k-edge-colorable edge set once, in lexicographic order."""
    if k < 1:
        raise GraphInputError("k must be positive")
    _check_cap(G.m, cap, "enumeration-edges")
    size = _maximum_size(G, k)
    for mask, coloring in _SubsetSearch(G, k).walk(size):
        yield _as_result(G, k, mask, coloring)
