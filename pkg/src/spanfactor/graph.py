"""Loopless multigraphs, edge-subset views, elementary queries and generators.

Vertices are the integers ``0..n-1``.  Edges are stored in a tuple and the
position of an edge in that tuple is its index; parallel edges are distinct
entries with distinct indices.  Every object here is immutable.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import GraphInputError, ParseError, PreconditionError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError(f"negative vertex count {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise GraphInputError(f"edge {i} is a loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInputError(f"edge {i} = ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``incidence[v]`` lists ``(neighbour, edge index)`` in edge order."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((v, i))
            inc[v].append((u, i))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    @cached_property
    def neighbour_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def neighbours(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` in increasing order."""
        self._check_vertex(v)
        return sorted({w for w, _ in self.incidence[v]})

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def has_isolated_vertex(self) -> bool:
        return 0 in self.degrees

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    def is_simple(self) -> bool:
        return len({frozenset(e) for e in self.edges}) == self.m

    def other_end(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if a == v else a

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphInputError(f"vertex {v} outside 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Subgraph:
    """A set of edge indices of a host graph, spanning the host's vertex set."""

    host: Multigraph
    edges: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset(self.edges)
        for i in edges:
            if not (0 <= i < self.host.m):
                raise GraphInputError(f"edge index {i} not in host (m={self.host.m})")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.host.n
        for i in self.edges:
            u, v = self.host.edges[i]
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        self.host._check_vertex(v)
        return self.degrees[v]

    def missed(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 0]

    def is_spanning(self) -> bool:
        return 0 not in self.degrees

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def sorted_edges(self) -> list[int]:
        return sorted(self.edges)

    def to_multigraph(self) -> tuple[Multigraph, list[int]]:
        """The subgraph as a standalone graph on the host's vertices.

        Returns the graph and, for each of its edges, the host edge index.
        """
        order = sorted(self.edges)
        return Multigraph(self.host.n, tuple(self.host.edges[i] for i in order)), order

    def __len__(self) -> int:
        return len(self.edges)


def degree(G: Multigraph, v: int) -> int:
    G._check_vertex(v)
    return G.degrees[v]


def max_multiplicity(G: Multigraph) -> int:
    """Largest number of parallel edges joining one pair of vertices."""
    counts: dict[frozenset[int], int] = {}
    for e in G.edges:
        key = frozenset(e)
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


def underlying_simple(G: Multigraph) -> tuple[Multigraph, list[int]]:
    """Keep the lowest-index edge of every parallel class.

    Returns the simple graph and the host index of each kept edge.
    """
    seen: set[frozenset[int]] = set()
    kept: list[int] = []
    for i, e in enumerate(G.edges):
        key = frozenset(e)
        if key not in seen:
            seen.add(key)
            kept.append(i)
    return Multigraph(G.n, tuple(G.edges[i] for i in kept)), kept


def delete_vertices(G: Multigraph, S: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """``G - S``; survivors keep their relative order.

    The returned map sends each surviving original vertex to its new index.
    """
    removed = set(S)
    for v in removed:
        G._check_vertex(v)
    index = {}
    for v in range(G.n):
        if v not in removed:
            index[v] = len(index)
    edges = tuple(
        (index[u], index[v]) for u, v in G.edges if u not in removed and v not in removed
    )
    return Multigraph(len(index), edges), index


class ComponentProfile(NamedTuple):
    components: list[list[int]]
    odd: int
    isolated: int


def components(G: Multigraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in G.incidence[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def component_profile(G: Multigraph) -> ComponentProfile:
    comps = components(G)
    odd = sum(1 for c in comps if len(c) % 2 == 1)
    isolated = sum(1 for d in G.degrees if d == 0)
    return ComponentProfile(comps, odd, isolated)


def is_connected(G: Multigraph) -> bool:
    return G.n > 0 and len(components(G)) == 1


def is_forest(G: Multigraph) -> bool:
    return G.m == G.n - len(components(G))


def is_tree(G: Multigraph) -> bool:
    return G.n > 0 and G.m == G.n - 1 and is_connected(G)


def is_cycle(G: Multigraph) -> bool:
    """Connected, 2-regular and simple with at least three vertices."""
    return G.n >= 3 and G.m == G.n and all(d == 2 for d in G.degrees) and is_connected(G)


def is_odd_cycle(G: Multigraph) -> bool:
    return is_cycle(G) and G.n % 2 == 1


def bfs_layers(G: Multigraph, v: int) -> list[list[int]]:
    """Vertices grouped by distance from ``v``; layer ``i`` is sorted."""
    G._check_vertex(v)
    dist = [-1] * G.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y, _ in G.incidence[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    if -1 in dist:
        raise GraphInputError("bfs_layers needs a connected graph")
    layers: list[list[int]] = [[] for _ in range(max(dist) + 1)]
    for x, d in enumerate(dist):
        layers[d].append(x)
    return layers


class GraftResult(NamedTuple):
    tree: Multigraph
    center: int
    attach: int


def graft(T1: Multigraph, p: int, v: int) -> GraftResult:
    """Glue a leaf of the star ``K_{1,p}`` onto ``v``.

    ``v`` must have degree below the maximum degree of ``T1``.  The new star
    centre gets index ``T1.n`` and its ``p - 1`` fresh leaves follow it.
    """
    if not is_tree(T1):
        raise GraphInputError("graft needs a tree")
    if T1.n < 3:
        raise PreconditionError(f"graft needs at least 3 vertices, got {T1.n}")
    if p < 2:
        raise PreconditionError(f"star size p={p} must be at least 2")
    T1._check_vertex(v)
    if T1.degrees[v] >= T1.max_degree:
        raise PreconditionError(
            f"vertex {v} has maximum degree {T1.degrees[v]}; graft needs a vertex of smaller degree"
        )
    z = T1.n
    edges = list(T1.edges) + [(v, z)] + [(z, z + i) for i in range(1, p)]
    return GraftResult(Multigraph(T1.n + p, tuple(edges)), z, v)


def path(n: int) -> Multigraph:
    if n < 1:
        raise GraphInputError("path needs at least one vertex")
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Multigraph:
    if n < 3:
        raise GraphInputError("cycle needs at least three vertices")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(p: int) -> Multigraph:
    """``K_{1,p}`` with centre 0."""
    if p < 1:
        raise GraphInputError("star needs at least one leaf")
    return Multigraph(p + 1, tuple((0, i) for i in range(1, p + 1)))


def complete(n: int) -> Multigraph:
    if n < 1:
        raise GraphInputError("complete graph needs at least one vertex")
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def from_multiplicities(n: int, mult: dict[tuple[int, int], int]) -> Multigraph:
    edges = []
    for (u, v), k in sorted(mult.items()):
        edges.extend([(u, v)] * k)
    return Multigraph(n, tuple(edges))


def random_multigraph(n: int, m: int, max_multiplicity: int = 1, seed: int = 0) -> Multigraph:
    """``m`` edges, each drawn uniformly from the pairs still below the cap."""
    if n < 0 or m < 0 or max_multiplicity < 1:
        raise GraphInputError("random_multigraph parameters must be nonnegative, cap >= 1")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m > len(pairs) * max_multiplicity:
        raise GraphInputError(f"cannot place {m} edges on {n} vertices with multiplicity <= {max_multiplicity}")
    rng = random.Random(seed)
    count = dict.fromkeys(pairs, 0)
    open_pairs = list(pairs)
    edges = []
    for _ in range(m):
        i = rng.randrange(len(open_pairs))
        pair = open_pairs[i]
        edges.append(pair)
        count[pair] += 1
        if count[pair] == max_multiplicity:
            open_pairs[i] = open_pairs[-1]
            open_pairs.pop()
    return Multigraph(n, tuple(edges))


def prop21_tree(a: int, b: int, n: int) -> Multigraph:
    """Path on ``2k`` vertices whose end is joined to the centre of ``K_{1,k}``.

    Here ``k = a * n**b``; the tree has ``3k + 1`` vertices, matching number
    ``k + 1`` and ``sp = k``.  Path vertices are ``0..2k-1`` (vertex 0 is the
    joined end), the star centre is ``2k`` and its leaves follow.
    """
    if a < 1 or b < 1:
        raise GraphInputError("a and b must be positive")
    if n < 4:
        raise GraphInputError("n must be at least 4")
    k = a * n**b
    c = 2 * k
    edges = [(i, i + 1) for i in range(2 * k - 1)]
    edges.append((c, 0))
    edges.extend((c, c + j) for j in range(1, k + 1))
    return Multigraph(3 * k + 1, tuple(edges))


def tightness_graph(H: Multigraph, f: int, matching: Iterable[int] | None = None) -> Multigraph:
    """Replace edge ``f = (u, w)`` of a regular graph by a path ``u-x-y-w``.

    ``f`` must belong to a perfect matching of ``H``: the supplied one, or,
    when none is given, some perfect matching found by search.  The two new
    vertices are ``H.n`` and ``H.n + 1``; the three path edges are appended
    after the surviving edges of ``H``.
    """
    from .matching import maximum_matching  # local import: matching depends on this module

    if H.n == 0 or not H.is_regular():
        raise PreconditionError("tightness_graph needs a nonempty regular graph")
    if not (0 <= f < H.m):
        raise GraphInputError(f"edge index {f} not in graph")
    u, w = H.edges[f]
    if matching is not None:
        F = set(matching)
        covered = [0] * H.n
        for i in F:
            a, b = H.edges[i]
            covered[a] += 1
            covered[b] += 1
        if any(c != 1 for c in covered):
            raise PreconditionError("supplied edge set is not a perfect matching")
        if f not in F:
            raise PreconditionError(f"edge {f} is not in the supplied perfect matching")
    else:
        rest, _ = delete_vertices(H, (u, w))
        if 2 * len(maximum_matching(rest)) != rest.n:
            raise PreconditionError(f"edge {f} lies in no perfect matching")
    x, y = H.n, H.n + 1
    edges = [e for i, e in enumerate(H.edges) if i != f] + [(u, x), (x, y), (y, w)]
    return Multigraph(H.n + 2, tuple(edges))


def canonical(G: Multigraph) -> Multigraph:
    """Edges normalised to ``(min, max)`` and sorted."""
    return Multigraph(G.n, tuple(sorted((min(e), max(e)) for e in G.edges)))


def serialize(G: Multigraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    C = canonical(G)
    lines.append(f"{C.n} {C.m}")
    lines.extend(f"{u} {v}" for u, v in C.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Multigraph:
    header = None
    edges: list[Edge] = []
    expected = 0
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("header counts must be nonnegative", lineno)
            header = (a, b)
            expected = b
            continue
        if len(edges) == expected:
            raise ParseError(f"more than the declared {expected} edges", lineno)
        n = header[0]
        if a == b:
            raise ParseError(f"loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing header line 'n m'", last or 1)
    if len(edges) != expected:
        raise ParseError(f"declared {expected} edges, found {len(edges)}", last)
    return Multigraph(header[0], tuple(edges))


def encode(G: Multigraph) -> str:
    """One-token form used in reports: ``n:u-v,u-v,...`` in edge order."""
    return f"{G.n}:" + ",".join(f"{u}-{v}" for u, v in G.edges)


def decode(token: str) -> Multigraph:
    try:
        n, rest = token.split(":", 1)
        edges = [tuple(map(int, e.split("-"))) for e in rest.split(",") if e]
        return Multigraph(int(n), tuple(edges))
    except ValueError as exc:
        raise GraphInputError(f"bad graph token {token!r}: {exc}") from None
