"""The parameter sp(G) by its three definitions, and the exchange procedure.

``sp(G)`` is the least ``k`` for which a graph without isolated vertices has

1. a [1,k]-factor (``sp_factor_search``),
2. a spanning k-edge-colorable subgraph (``sp2_bruteforce``),
3. a spanning maximum k-edge-colorable subgraph (``sp3_bruteforce``).

The three searches share no code beyond the coloring primitives, so their
agreement is a real check.  ``sp_formula`` is a fourth, closed-form route
through the deficiency condition on vertex subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coloring import (
    COLORING_EDGE_CAP,
    ENUMERATION_EDGE_CAP,
    EdgeColoring,
    color_edges,
    enumerate_max_k_ecs,
    max_k_ecs,
    nu_k,
)
from .errors import GraphInputError, PreconditionError, ResourceCapError, SpanFactorError
from .graph import Multigraph, Subgraph, components, is_forest, underlying_simple
from .matching import SUBSET_CAP, maximum_matching

FACTOR_EDGE_CAP = 40


class TheoremViolation(SpanFactorError, AssertionError):
    """A computation contradicted a proven statement."""


@dataclass(frozen=True)
class FactorWitness:
    subgraph: Subgraph
    a: int
    b: int

    def is_valid(self) -> bool:
        return all(self.a <= d <= self.b for d in self.subgraph.degrees)


@dataclass(frozen=True)
class SpResult:
    sp_value: int
    witness_factor: FactorWitness
    witness_spanning_max: EdgeColoring | None = None


def _require_no_isolated(G: Multigraph) -> None:
    if G.n == 0:
        raise PreconditionError("sp is undefined for the empty graph")
    if G.has_isolated_vertex():
        v = G.degrees.index(0)
        raise PreconditionError(f"sp is undefined: vertex {v} is isolated")


def sp_formula(G: Multigraph, cap: int = SUBSET_CAP) -> int:
    """1 with a perfect matching, else ``max(2, max_S ceil(p0(G-S) / |S|))``.

    ``p0(G-S)`` counts vertices outside ``S`` whose whole neighbourhood lies
    in ``S``.  Every nonempty ``S`` is enumerated.
    """
    _require_no_isolated(G)
    if 2 * len(maximum_matching(G)) == G.n:
        return 1
    if G.n > cap:
        raise ResourceCapError("vertex-subset", cap, G.n)
    masks = G.neighbour_masks
    n = G.n
    best = 2
    for size in range(1, n):
        for S in combinations(range(n), size):
            smask = 0
            for v in S:
                smask |= 1 << v
            p0 = sum(1 for v in range(n) if not smask >> v & 1 and masks[v] & ~smask == 0)
            need = -(-p0 // size)
            if need > best:
                best = need
    return best


# --- [1,k]-factor search -------------------------------------------------

_INF = float("inf")


def _forest_factor(G: Multigraph, k: int) -> list[int] | None:
    """Minimum-size [1,k]-factor of a forest by dynamic programming.

    For every vertex and every choice of using the edge to its parent, the
    table holds the fewest edges below that vertex; children are taken in
    order of their marginal cost.
    """
    chosen: list[int] = []
    for comp in components(G):
        root = comp[0]
        parent = {root: (-1, -1)}
        order = [root]
        for x in order:
            for y, e in G.incidence[x]:
                if y not in parent:
                    parent[y] = (x, e)
                    order.append(y)
        children: dict[int, list[int]] = {v: [] for v in comp}
        for v in order[1:]:
            children[parent[v][0]].append(v)
        cost: dict[tuple[int, int], float] = {}
        pick: dict[tuple[int, int], list[int]] = {}
        for v in reversed(order):
            kids = children[v]
            for up in (0, 1):
                if v == root and up:
                    continue
                base = 0.0
                forced, optional = [], []
                feasible = True
                for c in kids:
                    take, skip = cost[(c, 1)] + 1, cost[(c, 0)]
                    if take == _INF and skip == _INF:
                        feasible = False
                        break
                    if skip == _INF:
                        forced.append(c)
                        base += take
                    elif take == _INF:
                        base += skip
                    else:
                        optional.append((take - skip, c))
                        base += skip
                if not feasible:
                    cost[(v, up)] = _INF
                    continue
                optional.sort()
                lo = max(0, 1 - up) - len(forced)
                hi = k - up - len(forced)
                lo = max(lo, 0)
                if hi < lo or lo > len(optional):
                    cost[(v, up)] = _INF
                    continue
                best_t, best_cost, run = lo, _INF, base + sum(d for d, _ in optional[:lo])
                for t in range(lo, min(hi, len(optional)) + 1):
                    if t > lo:
                        run += optional[t - 1][0]
                    if run < best_cost:
                        best_t, best_cost = t, run
                cost[(v, up)] = best_cost
                pick[(v, up)] = forced + [c for _, c in optional[:best_t]]
        if cost[(root, 0)] == _INF:
            return None
        stack = [(root, 0)]
        while stack:
            v, up = stack.pop()
            taken = set(pick[(v, up)])
            for c in children[v]:
                if c in taken:
                    chosen.append(parent[c][1])
                    stack.append((c, 1))
                else:
                    stack.append((c, 0))
    return sorted(chosen)


def _general_factor(G: Multigraph, k: int) -> list[int] | None:
    """Minimum-size [1,k]-factor by branch and bound over covering edges.

    The lowest uncovered vertex is always covered next, by each of its edges
    in turn; this reaches every minimal factor, so the optimum is found.
    """
    simple, kept = underlying_simple(G)
    n = G.n
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for j, (u, v) in enumerate(simple.edges):
        inc[u].append((v, kept[j]))
        inc[v].append((u, kept[j]))
    deg = [0] * n
    current: list[int] = []
    best: list[list[int] | None] = [None]
    best_size = [n]  # a minimal factor is a star forest: at most n - 1 edges

    def rec(uncovered: int) -> None:
        if uncovered == 0:
            if len(current) < best_size[0]:
                best_size[0] = len(current)
                best[0] = sorted(current)
            return
        if len(current) + (uncovered + 1) // 2 >= best_size[0]:
            return
        v = deg.index(0)
        for w, e in inc[v]:
            if deg[w] >= k:
                continue
            gain = 2 if deg[w] == 0 else 1
            deg[v] += 1
            deg[w] += 1
            current.append(e)
            rec(uncovered - gain)
            current.pop()
            deg[v] -= 1
            deg[w] -= 1

    rec(n)
    return best[0]


def min_factor(G: Multigraph, k: int, cap: int = FACTOR_EDGE_CAP) -> FactorWitness | None:
    """A [1,k]-factor with the fewest edges, or ``None`` if there is none."""
    _require_no_isolated(G)
    if is_forest(G):
        edges = _forest_factor(G, k)
    else:
        simple, _ = underlying_simple(G)
        if simple.m > cap:
            raise ResourceCapError("factor-edges", cap, simple.m)
        edges = _general_factor(G, k)
    if edges is None:
        return None
    return FactorWitness(Subgraph(G, frozenset(edges)), 1, k)


def sp_factor_search(G: Multigraph, cap: int = FACTOR_EDGE_CAP) -> SpResult:
    """Least ``k`` with a [1,k]-factor, and a smallest such factor.

    Forests are solved exactly in linear time; other graphs by branch and
    bound, subject to ``cap`` distinct vertex pairs.
    """
    _require_no_isolated(G)
    M = maximum_matching(G)
    if 2 * len(M) == G.n:
        return SpResult(1, FactorWitness(M, 1, 1))
    for k in range(2, G.max_degree + 1):
        F = min_factor(G, k, cap)
        if F is not None:
            return SpResult(k, F)
    raise TheoremViolation("no [1, max degree]-factor although no vertex is isolated")


def sp(G: Multigraph) -> int:
    return sp_factor_search(G).sp_value


# --- definitional searches ------------------------------------------------


def spanning_kecs_search(G: Multigraph, k: int) -> EdgeColoring | None:
    """Some spanning k-edge-colorable subgraph, searched directly.

    The lowest uncovered vertex is covered by each incident edge and each
    admissible color in turn; colors are introduced in order to skip
    permutations.
    """
    _require_no_isolated(G)
    simple, kept = underlying_simple(G)
    n = G.n
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for j, (u, v) in enumerate(simple.edges):
        inc[u].append((v, kept[j]))
        inc[v].append((u, kept[j]))
    used = [0] * n
    coloring: dict[int, int] = {}

    def rec(uncovered: int, top: int) -> bool:
        if uncovered == 0:
            return True
        v = next(x for x in range(n) if used[x] == 0)
        for w, e in inc[v]:
            free = ~used[w] & ((1 << min(top + 1, k)) - 1)
            gain = 2 if used[w] == 0 else 1
            while free:
                bit = free & -free
                free ^= bit
                c = bit.bit_length()
                used[v] |= bit
                used[w] |= bit
                coloring[e] = c
                if rec(uncovered - gain, max(top, c)):
                    return True
                del coloring[e]
                used[v] &= ~bit
                used[w] &= ~bit
        return False

    if not rec(n, 0):
        return None
    return EdgeColoring(Subgraph(G, frozenset(coloring)), dict(coloring), k)


def sp2_bruteforce(G: Multigraph, cap: int = COLORING_EDGE_CAP) -> int:
    """Least ``k`` admitting a spanning k-edge-colorable subgraph."""
    _require_no_isolated(G)
    if G.m > cap:
        raise ResourceCapError("coloring-edges", cap, G.m)
    for k in range(1, G.max_degree + 1):
        if spanning_kecs_search(G, k) is not None:
            return k
    raise TheoremViolation("no spanning subgraph is max-degree colorable")


def sp3_bruteforce(G: Multigraph, cap: int = ENUMERATION_EDGE_CAP) -> int:
    """Least ``k`` for which some maximum k-edge-colorable subgraph is spanning."""
    _require_no_isolated(G)
    for k in range(1, G.max_degree + 1):
        for H in enumerate_max_k_ecs(G, k, cap):
            if H.host.is_spanning():
                return k
    raise TheoremViolation("no spanning maximum subgraph up to the maximum degree")


# --- constructions ----------------------------------------------------------


def spanning_kecs_from_factor(F: FactorWitness) -> EdgeColoring:
    """Spanning forest of a [1,k]-factor, properly colored with at most k colors."""
    H = F.subgraph
    if F.a < 1 or not F.is_valid():
        raise GraphInputError("input is not a [1,k]-factor")
    G = H.host
    inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e in sorted(H.edges):
        u, v = G.edges[e]
        inc[u].append((v, e))
        inc[v].append((u, e))
    seen = [False] * G.n
    coloring: dict[int, int] = {}
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, 0)]
        while stack:
            x, parent_color = stack.pop()
            c = 0
            for y, e in inc[x]:
                if seen[y]:
                    continue
                seen[y] = True
                c += 1
                if c == parent_color:
                    c += 1
                coloring[e] = c
                stack.append((y, c))
    return EdgeColoring(Subgraph(G, frozenset(coloring)), coloring, F.b)


def _as_coloring(X: Subgraph | EdgeColoring, k: int, name: str) -> EdgeColoring:
    if isinstance(X, EdgeColoring):
        X = X.host
    G = X.host
    order = sorted(X.edges)
    colors = color_edges(G.n, [G.edges[i] for i in order], k)
    if colors is None:
        raise PreconditionError(f"{name} is not {k}-edge-colorable")
    return EdgeColoring(X, dict(zip(order, colors)), k)


def exchange_to_spanning_max(
    G: Multigraph,
    k: int,
    A: Subgraph | EdgeColoring,
    H: Subgraph | EdgeColoring,
    trace: list | None = None,
    cap: int = COLORING_EDGE_CAP,
) -> EdgeColoring:
    """Turn a maximum k-edge-colorable ``H`` into a spanning one, guided by ``A``.

    ``A`` is any spanning k-edge-colorable subgraph.  While ``H`` misses a
    vertex ``u`` (lowest index first):

    * if a neighbour ``x`` of ``u`` has an ``H``-edge ``(x, y)`` with
      ``d_H(y) >= 2``, that edge is traded for an edge ``(u, x)``, which
      covers one more vertex (edges outside ``A`` are given up first);
    * otherwise the lowest ``A``-edge ``(u, w)`` replaces an ``H``-edge
      ``(w, z)`` outside ``A``: coverage stays, overlap with ``A`` grows.

    Each move keeps the color of the edge it removes.  ``trace`` receives
    ``("cover" | "overlap", removed, added)`` tuples.
    """
    if k < 1:
        raise GraphInputError("k must be positive")
    A_col = _as_coloring(A, k, "A")
    A_sub = A_col.host
    H_col = _as_coloring(H, k, "H")
    if A_sub.host != G or H_col.host.host != G:
        raise GraphInputError("A and H must be subgraphs of G")
    if not A_sub.is_spanning():
        raise PreconditionError(f"A misses vertex {A_sub.missed()[0]}")
    target = nu_k(G, k, cap)
    if len(H_col.host) != target:
        raise PreconditionError(f"H has {len(H_col.host)} edges but a maximum one has {target}")

    in_A = A_sub.edges
    color = dict(H_col.color_of)
    deg = list(H_col.host.degrees)
    h_at: list[set[int]] = [set() for _ in range(G.n)]
    for e in color:
        for x in G.edges[e]:
            h_at[x].add(e)

    def swap(out: int, new: int) -> None:
        color[new] = color.pop(out)
        for x in G.edges[out]:
            deg[x] -= 1
            h_at[x].discard(out)
        for x in G.edges[new]:
            deg[x] += 1
            h_at[x].add(new)

    budget = G.n * max(G.m, 1) + 1
    for _ in range(budget):
        missed = [v for v in range(G.n) if deg[v] == 0]
        if not missed:
            break
        u = missed[0]
        move = None
        for x in G.neighbours(u):
            if deg[x] != k:
                raise TheoremViolation(f"neighbour {x} of missed vertex {u} is not saturated")
            for g in sorted(h_at[x], key=lambda g: (g in in_A, g)):
                y = G.other_end(g, x)
                if deg[y] >= 2:
                    new = min(e for w, e in G.incidence[u] if w == x)
                    move = ("cover", g, new)
                    break
            if move:
                break
        if move is None:
            e = min(e for _, e in G.incidence[u] if e in in_A)
            w = G.other_end(e, u)
            outside = sorted(f for f in h_at[w] if f not in in_A)
            if not outside:
                raise TheoremViolation(f"every H-edge at {w} lies in A")
            move = ("overlap", outside[0], e)
        swap(move[1], move[2])
        if trace is not None:
            trace.append(move)
    else:
        raise TheoremViolation("exchange did not terminate within its progress bound")

    return EdgeColoring(Subgraph(G, frozenset(color)), color, k)


def spanning_max_exists(G: Multigraph, k: int, cap: int = COLORING_EDGE_CAP) -> tuple[bool, EdgeColoring | None]:
    """Whether a spanning maximum k-edge-colorable subgraph exists, with one.

    A smallest [1,k]-factor gives a spanning k-edge-colorable forest, and the
    exchange procedure carries a maximum subgraph onto a spanning one.
    """
    _require_no_isolated(G)
    F = min_factor(G, k)
    if F is None:
        return False, None
    A = spanning_kecs_from_factor(F)
    H = max_k_ecs(G, k, cap)
    return True, exchange_to_spanning_max(G, k, A, H, cap=cap)


def certify_sp(G: Multigraph, cap: int = COLORING_EDGE_CAP) -> SpResult:
    """``sp_factor_search`` plus a spanning maximum sp-edge-colorable witness."""
    res = sp_factor_search(G)
    A = spanning_kecs_from_factor(res.witness_factor)
    H = max_k_ecs(G, res.sp_value, cap)
    return SpResult(res.sp_value, res.witness_factor, exchange_to_spanning_max(G, res.sp_value, A, H, cap=cap))
