"""Maximum matching and the Tutte / Tutte-Berge certificates.

Parallel edges never change which vertex pairs can be matched, so the search
runs on the underlying simple graph; the matching returned uses the
lowest-index edge of each matched pair.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import NamedTuple

from .errors import ResourceCapError
from .graph import Multigraph, Subgraph, underlying_simple

SUBSET_CAP = 20


def _blossom(n: int, adj: list[list[int]]) -> list[int]:
    """Edmonds' augmenting-path search with blossom shrinking.

    Returns ``mate`` with ``mate[v] = -1`` for unmatched vertices.
    """
    mate = [-1] * n
    # greedy start; augmentation fixes anything it gets wrong
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    def find_augmenting(root: int) -> tuple[int, list[int]]:
        parent = [-1] * n
        base = list(range(n))
        in_tree = [False] * n
        in_tree[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    b = lca(v, to)
                    blossom = [False] * n
                    mark(v, b, to, blossom)
                    mark(to, b, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = b
                            if not in_tree[i]:
                                in_tree[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to, parent
                    in_tree[mate[to]] = True
                    queue.append(mate[to])
        return -1, parent

    for root in range(n):
        if mate[root] != -1:
            continue
        v, parent = find_augmenting(root)
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def maximum_matching(G: Multigraph) -> Subgraph:
    simple, kept = underlying_simple(G)
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for u, v in simple.edges:
        adj[u].append(v)
        adj[v].append(u)
    mate = _blossom(G.n, adj)
    edge_of = {}
    for i in kept:
        u, v = G.edges[i]
        edge_of.setdefault((min(u, v), max(u, v)), i)
    chosen = {edge_of[(v, w)] for v, w in enumerate(mate) if w > v}
    return Subgraph(G, frozenset(chosen))


def matching_number(G: Multigraph) -> int:
    return len(maximum_matching(G))


def is_matching(H: Subgraph) -> bool:
    return H.max_degree <= 1


def _odd_components(masks: tuple[int, ...], alive: int) -> int:
    odd = 0
    rest = alive
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            grow = masks[bit.bit_length() - 1] & alive & ~comp
            comp |= grow
            frontier |= grow
        rest &= ~comp
        if bin(comp).count("1") % 2:
            odd += 1
    return odd


def _mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return out


def _check_cap(G: Multigraph, cap: int) -> None:
    if G.n > cap:
        raise ResourceCapError("vertex-subset", cap, G.n)


def _subsets_by_size(n: int):
    """All vertex subsets as bitmasks: by size, then lexicographically."""
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            yield mask, size


class TutteBerge(NamedTuple):
    deficiency: int
    attaining_set: list[int]


def tutte_berge_deficiency(G: Multigraph, cap: int = SUBSET_CAP) -> TutteBerge:
    """``max_S o(G-S) - |S|`` by enumerating every vertex subset.

    The attaining set reported is the first maximiser in (size, lexicographic)
    order.
    """
    _check_cap(G, cap)
    full = (1 << G.n) - 1
    masks = G.neighbour_masks
    best, best_s = None, 0
    for S, size in _subsets_by_size(G.n):
        value = _odd_components(masks, full & ~S) - size
        if best is None or value > best:
            best, best_s = value, S
    return TutteBerge(best, _mask_to_list(best_s))


class PerfectMatchingResult(NamedTuple):
    has_perfect_matching: bool
    matching: Subgraph
    violator: list[int] | None

    def __bool__(self) -> bool:
        return self.has_perfect_matching


def has_perfect_matching(G: Multigraph, cap: int = SUBSET_CAP) -> PerfectMatchingResult:
    """Perfect matching test; on failure also a set ``S`` with ``o(G-S) > |S|``."""
    M = maximum_matching(G)
    if 2 * len(M) == G.n:
        return PerfectMatchingResult(True, M, None)
    _check_cap(G, cap)
    full = (1 << G.n) - 1
    masks = G.neighbour_masks
    for S, size in _subsets_by_size(G.n):
        if _odd_components(masks, full & ~S) > size:
            return PerfectMatchingResult(False, M, _mask_to_list(S))
    raise AssertionError("no Tutte violator although the matching is not perfect")
