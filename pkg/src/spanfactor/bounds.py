"""Upper bounds on sp(G) and the constructions behind them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

import networkx as nx

from .errors import GraphInputError, PreconditionError, ResourceCapError
from .graph import Multigraph, Subgraph, encode
from .matching import SUBSET_CAP, maximum_matching
from .sp import FactorWitness, TheoremViolation, _require_no_isolated, sp_factor_search


class BoundRecord(NamedTuple):
    name: str
    value: int
    holds: bool
    tight: bool


@dataclass
class BoundReport:
    graph_id: str
    sp_exact: int
    records: list[BoundRecord] = field(default_factory=list)

    def all_hold(self) -> bool:
        return all(r.holds for r in self.records)

    def get(self, name: str) -> BoundRecord | None:
        return next((r for r in self.records if r.name == name), None)


def bound_values(G: Multigraph, sp_exact: int | None = None, graph_id: str | None = None) -> BoundReport:
    """Every applicable upper bound on sp(G), compared with the exact value.

    ``max_degree``            Δ
    ``degree_gap``            Δ - δ + 2
    ``matching_deficiency``   |V| - 2ν + 1
    ``degree_ratio``          1 + floor(Δ/δ)
    ``degree_ratio_nonregular`` ceil(Δ/δ), non-regular graphs only
    ``almost_regular``        2, when Δ - δ <= 1
    """
    _require_no_isolated(G)
    if sp_exact is None:
        sp_exact = sp_factor_search(G).sp_value
    big, small = G.max_degree, G.min_degree
    nu = len(maximum_matching(G))
    values = [
        ("max_degree", big),
        ("degree_gap", big - small + 2),
        ("matching_deficiency", G.n - 2 * nu + 1),
        ("degree_ratio", 1 + big // small),
    ]
    if big != small:
        values.append(("degree_ratio_nonregular", -(-big // small)))
    if big - small <= 1:
        values.append(("almost_regular", 2))
    report = BoundReport(graph_id or encode(G), sp_exact)
    for name, value in values:
        report.records.append(BoundRecord(name, value, sp_exact <= value, sp_exact == value))
    return report


# --- Lovász partition ---------------------------------------------------------


class LovaszPartition(NamedTuple):
    H: list[int]
    L: list[int]
    moves: int
    initial_potential: int


def lovasz_partition(G: Multigraph, s: int, t: int) -> LovaszPartition:
    """Split ``V(G)`` so that ``G[H]`` has max degree ``<= s`` and ``G[L]`` ``<= t``.

    Starts with every vertex in ``H`` and moves the lowest-index violating
    vertex across until none is left.  Each move lowers
    ``t * e(H) + s * e(L)`` by at least ``t + 2s``.
    """
    if s < 1 or t < 1:
        raise GraphInputError("s and t must be positive")
    if G.max_degree > s + t - 1:
        raise PreconditionError(f"max degree {G.max_degree} exceeds s + t - 1 = {s + t - 1}")
    in_H = [True] * G.n
    same = list(G.degrees)

    def potential() -> int:
        eh = sum(1 for u, v in G.edges if in_H[u] and in_H[v])
        el = sum(1 for u, v in G.edges if not in_H[u] and not in_H[v])
        return t * eh + s * el

    phi0 = potential()
    moves = 0
    while True:
        x = next((v for v in range(G.n) if same[v] > (s if in_H[v] else t)), None)
        if x is None:
            break
        in_H[x] = not in_H[x]
        moves += 1
        same[x] = 0
        for y, _ in G.incidence[x]:
            if in_H[y] == in_H[x]:
                same[x] += 1
                same[y] += 1
            else:
                same[y] -= 1
        if moves > phi0:
            raise TheoremViolation("Lovász moves exceeded the initial potential")
    H = [v for v in range(G.n) if in_H[v]]
    L = [v for v in range(G.n) if not in_H[v]]
    return LovaszPartition(H, L, moves, phi0)


def _bipartite_double_flow(G: Multigraph, low: list[int], high: list[int]) -> list[int]:
    """Twice a fractional ``(low, high)``-factor, with entries in {0, 1, 2}.

    Solves the degree-bounded subgraph problem on the bipartite double cover
    ``u' -> v''`` as a feasible flow, then averages the two copies of each
    edge.
    """
    F = nx.DiGraph()
    demand: dict = {}

    def bounded(x, y, lo: int, hi: int) -> None:
        F.add_edge(x, y, capacity=hi - lo, weight=0)
        demand[x] = demand.get(x, 0) + lo
        demand[y] = demand.get(y, 0) - lo

    pairs: dict[tuple[int, int], list[int]] = {}
    for i, (u, v) in enumerate(G.edges):
        pairs.setdefault((min(u, v), max(u, v)), []).append(i)
    for v in range(G.n):
        bounded("src", ("a", v), low[v], high[v])
        bounded(("b", v), "snk", low[v], high[v])
    for (u, v), idx in pairs.items():
        F.add_edge(("a", u), ("b", v), capacity=len(idx), weight=0)
        F.add_edge(("a", v), ("b", u), capacity=len(idx), weight=0)
    F.add_edge("snk", "src", weight=0)
    for x in F.nodes:
        F.nodes[x]["demand"] = demand.get(x, 0)
    try:
        _, flow = nx.network_simplex(F)
    except nx.NetworkXUnfeasible:
        raise TheoremViolation("no fractional degree-bounded subgraph exists") from None
    x2 = [0] * G.m
    for (u, v), idx in pairs.items():
        forward = flow[("a", u)][("b", v)]
        backward = flow[("a", v)][("b", u)]
        for e in idx[:forward]:
            x2[e] += 1
        for e in idx[len(idx) - backward:]:
            x2[e] += 1
    return x2


def _round_half_edges(G: Multigraph, x2: list[int], low: list[int], high: list[int]) -> list[int]:
    """Round a half-integral subgraph to an integral one with the same bounds.

    Half edges are cut into trails, odd-degree endpoints first; along each
    trail edges are kept and dropped alternately.  An odd closed trail shifts
    its start vertex by one, in whichever direction stays inside the bounds,
    which is possible because ``low < high`` there.
    """
    val2 = [0] * G.n
    for e, x in enumerate(x2):
        for w in G.edges[e]:
            val2[w] += x
    half_at: list[list[int]] = [[] for _ in range(G.n)]
    for e, x in enumerate(x2):
        if x == 1:
            u, v = G.edges[e]
            half_at[u].append(e)
            half_at[v].append(e)
    unused = {e for e, x in enumerate(x2) if x == 1}
    rem = [len(h) for h in half_at]
    keep = {e for e, x in enumerate(x2) if x == 2}

    def walk(start: int) -> list[int]:
        trail, x = [], start
        while True:
            e = next((f for f in half_at[x] if f in unused), None)
            if e is None:
                return trail
            unused.discard(e)
            for w in G.edges[e]:
                rem[w] -= 1
            trail.append(e)
            x = G.other_end(e, x)

    def apply(trail: list[int], first_up: bool) -> None:
        up = first_up
        for e in trail:
            if up:
                keep.add(e)
            for w in G.edges[e]:
                val2[w] += 1 if up else -1
            up = not up

    for v in range(G.n):
        while rem[v] % 2 == 1:
            apply(walk(v), True)
    for v in range(G.n):
        while rem[v] > 0:
            trail = walk(v)
            if len(trail) % 2 == 0:
                apply(trail, True)
            else:
                # val2[v] is even here; the trail moves v by +-2 in doubled units
                apply(trail, val2[v] + 2 <= 2 * high[v])
    deg = [0] * G.n
    for e in keep:
        for w in G.edges[e]:
            deg[w] += 1
    for v in range(G.n):
        if not (low[v] <= deg[v] <= high[v]):
            raise TheoremViolation(f"rounding left vertex {v} with degree {deg[v]} outside [{low[v]}, {high[v]}]")
    return sorted(keep)


def degree_bounded_edge_split(G: Multigraph, s: int, t: int) -> tuple[Subgraph, Subgraph]:
    """Edge partition ``E = H + L`` with ``Δ(H) <= s`` and ``Δ(L) <= t``.

    Needs ``Δ(G) <= s + t - 1``.  ``H`` is a subgraph with
    ``max(0, d - t) <= d_H <= min(d, s)`` at every vertex; those intervals
    are never empty nor single points at non-isolated vertices, which is
    what makes the rounding step work.
    """
    if s < 1 or t < 1:
        raise GraphInputError("s and t must be positive")
    if G.max_degree > s + t - 1:
        raise PreconditionError(f"max degree {G.max_degree} exceeds s + t - 1 = {s + t - 1}")
    low = [max(0, d - t) for d in G.degrees]
    high = [min(d, s) for d in G.degrees]
    x2 = _bipartite_double_flow(G, low, high)
    H = frozenset(_round_half_edges(G, x2, low, high))
    return Subgraph(G, H), Subgraph(G, frozenset(range(G.m)) - H)


class PartitionFactor(NamedTuple):
    factor: FactorWitness
    fallback: bool
    L: Subgraph | None


def factor_from_partition(G: Multigraph) -> PartitionFactor:
    """A [1, Δ - δ + 2]-factor from a degree-bounded edge split.

    With ``s = Δ - δ + 2`` and ``t = δ - 1`` every vertex keeps at least
    ``δ - t = 1`` edges in ``H``.  For ``δ = 1`` there is no such split and
    ``G`` itself is returned as a [1, Δ]-factor with ``fallback`` set.
    """
    _require_no_isolated(G)
    big, small = G.max_degree, G.min_degree
    if small == 1:
        return PartitionFactor(FactorWitness(Subgraph(G, frozenset(range(G.m))), 1, big), True, None)
    H, L = degree_bounded_edge_split(G, big - small + 2, small - 1)
    F = FactorWitness(H, 1, big - small + 2)
    if not F.is_valid():
        raise TheoremViolation("edge split did not produce a factor")
    return PartitionFactor(F, False, L)


# --- subset criteria --------------------------------------------------------


class YuLiuResult(NamedTuple):
    holds: bool
    violator: list[int] | None

    def __bool__(self) -> bool:
        return self.holds


def yu_liu_check(G: Multigraph, a: int, b: int, cap: int = SUBSET_CAP) -> YuLiuResult:
    """Test ``sum_{i<a} (a-i) p_i(G-S) <= b|S|`` for every vertex set ``S``.

    ``p_i(G-S)`` is the number of degree-``i`` vertices after deleting ``S``.
    The first violating set in (size, lexicographic) order is returned.
    """
    if a < 1 or b <= a:
        raise GraphInputError(f"need b > a >= 1, got a={a}, b={b}")
    if G.n > cap:
        raise ResourceCapError("vertex-subset", cap, G.n)
    for size in range(G.n + 1):
        for S in combinations(range(G.n), size):
            removed = set(S)
            lhs = 0
            for v in range(G.n):
                if v in removed:
                    continue
                d = sum(1 for y, _ in G.incidence[v] if y not in removed)
                if d < a:
                    lhs += a - d
            if lhs > b * size:
                return YuLiuResult(False, list(S))
    return YuLiuResult(True, None)


class HuntReport(NamedTuple):
    tested: int
    violators: list[tuple[Multigraph, int]]


def hunt_nonregular_improvement(graphs: Iterable[Multigraph], budget: int | None = None) -> HuntReport:
    """Look for non-regular graphs with ``sp > Δ - δ + 1``.

    Purely exploratory: regular graphs and graphs with isolated vertices are
    skipped, and whatever is found is reported, not judged.
    """
    tested, found = 0, []
    for G in graphs:
        if budget is not None and tested >= budget:
            break
        if G.n == 0 or G.has_isolated_vertex() or G.is_regular():
            continue
        tested += 1
        value = sp_factor_search(G).sp_value
        if value > G.max_degree - G.min_degree + 1:
            found.append((G, value))
    return HuntReport(tested, found)
