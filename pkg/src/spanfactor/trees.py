"""Graphs whose sp equals their maximum degree.

A connected graph has ``sp = Δ`` only if it is an odd cycle or a tree, and a
tree has it exactly when it is built from a star by repeatedly grafting a
star ``K_{1,p}`` with ``p = Δ`` onto a vertex of non-maximum degree.  The
recognizer here runs that construction backwards, peeling stars off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .errors import GraphInputError, PreconditionError
from .graph import (
    Multigraph,
    Subgraph,
    components,
    delete_vertices,
    graft,
    is_connected,
    is_odd_cycle,
    is_tree,
)


def _require_tree(T: Multigraph) -> None:
    if not is_tree(T):
        raise GraphInputError("input is not a tree")


class DegreeClassification(NamedTuple):
    A: list[int]
    B: list[int]


def classify_AB(T: Multigraph) -> DegreeClassification:
    """Split the vertices into maximum-degree ones (A) and the rest (B)."""
    _require_tree(T)
    delta = T.max_degree
    A = [v for v in range(T.n) if T.degrees[v] == delta]
    B = [v for v in range(T.n) if T.degrees[v] != delta]
    return DegreeClassification(A, B)


def is_star(T: Multigraph) -> bool:
    """``K_{1,p}`` for some ``p >= 1``; ``K_2`` counts."""
    return is_tree(T) and T.n >= 2 and T.max_degree == T.n - 1


def layered_star_decomposition(T: Multigraph, v: int) -> Subgraph:
    """Star forest with centres of degree at most ``Δ(T) - 1``.

    Repeatedly take the deepest BFS layer around ``v`` in what is left of the
    tree, keep every edge into that layer, and delete the endpoints of the
    kept edges.  The result covers ``V(T)`` or ``V(T) - {v}``.
    """
    _require_tree(T)
    if T.n < 3:
        raise PreconditionError(f"tree has {T.n} vertices; at least 3 are needed")
    T._check_vertex(v)
    if T.degrees[v] == T.max_degree:
        raise PreconditionError(f"vertex {v} has maximum degree")
    alive = set(range(T.n))
    chosen: list[int] = []
    while alive and alive != {v}:
        parent: dict[int, tuple[int, int]] = {v: (-1, -1)}
        layer = [v]
        while True:
            nxt = []
            for x in layer:
                for y, e in T.incidence[x]:
                    if y in alive and y not in parent:
                        parent[y] = (x, e)
                        nxt.append(y)
            if not nxt:
                break
            layer = nxt
        for u in layer:
            z, e = parent[u]
            chosen.append(e)
            alive.discard(u)
            alive.discard(z)
    return Subgraph(T, frozenset(chosen))


def extend_to_spanning_delta(T: Multigraph, v: int, H: Subgraph) -> Subgraph:
    """Add the lowest-index edge at ``v`` to a decomposition that misses ``v``."""
    _require_tree(T)
    if H.host != T:
        raise GraphInputError("H is not a subgraph of T")
    if H.degrees[v] != 0:
        raise PreconditionError(f"H already covers vertex {v}")
    e = min(i for _, i in T.incidence[v])
    return Subgraph(T, H.edges | {e})


@dataclass(frozen=True)
class PeelStep:
    """One star removed from a tree.

    ``z`` and ``leaves`` are vertices of the tree before the step; ``w`` is a
    vertex of the remainder ``T1``, whose vertex ``i`` is ``survivors[i]``.
    """

    z: int
    p: int
    w: int
    leaves: tuple[int, ...]
    survivors: tuple[int, ...]


class Peel(NamedTuple):
    T1: Multigraph
    step: PeelStep


def peel_candidates(T: Multigraph) -> list[int]:
    """Vertices of degree ``p >= 2`` with exactly ``p - 1`` leaf neighbours."""
    out = []
    for z in range(T.n):
        d = T.degrees[z]
        if d >= 2 and sum(1 for y, _ in T.incidence[z] if T.degrees[y] == 1) == d - 1:
            out.append(z)
    return out


def peel_step(T: Multigraph, choose: Callable[[list[int]], int] = min) -> Peel | None:
    """Remove a pendant star; ``None`` when ``T`` is already a star."""
    _require_tree(T)
    if T.n < 2:
        raise PreconditionError("a single vertex is not a star")
    if is_star(T):
        return None
    cands = peel_candidates(T)
    if not cands:
        raise AssertionError("non-star tree without a pendant star")
    z = choose(cands)
    leaves = tuple(sorted(y for y, _ in T.incidence[z] if T.degrees[y] == 1))
    (w_old,) = [y for y, _ in T.incidence[z] if T.degrees[y] != 1]
    T1, index = delete_vertices(T, (z, *leaves))
    survivors = tuple(sorted(index, key=index.__getitem__))
    return Peel(T1, PeelStep(z, T.degrees[z], index[w_old], leaves, survivors))


@dataclass
class PeelCertificate:
    """Peel steps, outermost first, down to a base star."""

    base: Multigraph
    steps: list[PeelStep] = field(default_factory=list)

    def replay(self) -> tuple[Multigraph, list[int]]:
        """Graft the steps back onto the base star.

        Returns the rebuilt tree and ``pos``, mapping each vertex of the
        original tree to its index in the rebuilt one.
        """
        R = self.base
        pos = list(range(R.n))
        for step in reversed(self.steps):
            res = graft(R, step.p, pos[step.w])
            n_before = len(step.survivors) + 1 + len(step.leaves)
            new_pos = [0] * n_before
            for i, s in enumerate(step.survivors):
                new_pos[s] = pos[i]
            new_pos[step.z] = res.center
            for j, leaf in enumerate(step.leaves, start=1):
                new_pos[leaf] = res.center + j
            R, pos = res.tree, new_pos
        return R, pos


class Recognition(NamedTuple):
    holds: bool
    certificate: PeelCertificate | None
    reason: str

    def __bool__(self) -> bool:
        return self.holds


def is_sp_delta_tree(T: Multigraph, choose: Callable[[list[int]], int] = min) -> Recognition:
    """Decide ``sp(T) = Δ(T)`` for a tree by peeling stars.

    Every peeled star must have size ``Δ`` of the remainder and hang on a
    remainder vertex of smaller degree; the peeling must end in a star.
    """
    _require_tree(T)
    if T.n < 2:
        raise PreconditionError("a single vertex is isolated")
    steps: list[PeelStep] = []
    cur = T
    while True:
        peeled = peel_step(cur, choose)
        if peeled is None:
            return Recognition(True, PeelCertificate(cur, steps), "star")
        T1, step = peeled
        if T1.n < 3:
            return Recognition(False, None, f"remainder has {T1.n} vertices")
        delta1 = T1.max_degree
        if T1.degrees[step.w] == delta1:
            return Recognition(False, None, f"attachment vertex has maximum degree {delta1}")
        if step.p != delta1:
            return Recognition(False, None, f"star size {step.p} differs from remainder max degree {delta1}")
        steps.append(step)
        cur = T1


def sp_delta_connected(G: Multigraph) -> bool:
    """``sp(G) = Δ(G)`` for a connected graph, decided from its shape."""
    if not is_connected(G):
        raise GraphInputError("graph is not connected")
    if G.n < 2:
        raise PreconditionError("a single vertex is isolated")
    if is_odd_cycle(G):
        return True
    if is_tree(G):
        return bool(is_sp_delta_tree(G))
    return False


def sp_delta_graph(G: Multigraph) -> bool:
    """``sp(G) = Δ(G)`` for any graph without isolated vertices.

    Since sp is the maximum over components, this holds iff some component
    satisfies ``sp(C) = Δ(C) = Δ(G)``.
    """
    if G.n == 0 or G.has_isolated_vertex():
        raise PreconditionError("graph has an isolated vertex")
    delta = G.max_degree
    for comp in components(G):
        C, _ = delete_vertices(G, set(range(G.n)) - set(comp))
        if C.max_degree == delta and sp_delta_connected(C):
            return True
    return False


def _case_hypothesis(case: str, p: int, sp1: int, delta1: int) -> tuple[bool, str]:
    if case == "a":
        return p < sp1 == delta1, f"p={p} < sp(T1)={sp1} = Δ(T1)={delta1}"
    if case == "b":
        return p <= sp1 < delta1, f"p={p} <= sp(T1)={sp1} < Δ(T1)={delta1}"
    if case == "c":
        return sp1 < p, f"sp(T1)={sp1} < p={p}"
    if case == "d":
        return p == sp1 == delta1, f"p={p} = sp(T1)={sp1} = Δ(T1)={delta1}"
    raise GraphInputError(f"unknown case {case!r}")


def verify_operprop_case(T1: Multigraph, p: int, v: int, case: str, sp_oracle: Callable[[Multigraph], int] | None = None) -> bool:
    """Graft and check the conclusion of the given case.

    Case ``d`` concludes ``sp(T) = Δ(T)``; cases ``a``, ``b`` and ``c``
    conclude ``sp(T) != Δ(T)``.  Raises if the case's hypothesis fails.
    """
    if sp_oracle is None:
        from .sp import sp as sp_oracle
    _require_tree(T1)
    ok, text = _case_hypothesis(case, p, sp_oracle(T1), T1.max_degree)
    if not ok:
        raise PreconditionError(f"case ({case}) hypothesis fails: {text}")
    T = graft(T1, p, v).tree
    equal = sp_oracle(T) == T.max_degree
    return equal if case == "d" else not equal


def operprop_case(T1: Multigraph, p: int, sp1: int) -> str | None:
    """Which case's hypothesis ``(T1, p)`` satisfies, if any."""
    for case in "abcd":
        if _case_hypothesis(case, p, sp1, T1.max_degree)[0]:
            return case
    return None


def _rooted_code(T: Multigraph, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for x in order:
        for y, _ in T.incidence[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    code: dict[int, str] = {}
    for x in reversed(order):
        kids = sorted(code[y] for y, _ in T.incidence[x] if parent.get(y) == x and y != parent[x])
        code[x] = "(" + "".join(kids) + ")"
    return code[root]


def tree_centers(T: Multigraph) -> list[int]:
    _require_tree(T)
    if T.n <= 2:
        return list(range(T.n))
    deg = list(T.degrees)
    leaves = [v for v in range(T.n) if deg[v] == 1]
    remaining = T.n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for x in leaves:
            for y, _ in T.incidence[x]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
        leaves = nxt
    return sorted(leaves)


def canonical_tree_code(T: Multigraph) -> str:
    """Isomorphism invariant of an unrooted tree, rooted at its centre(s)."""
    return min(_rooted_code(T, c) for c in tree_centers(T))


def trees_isomorphic(T1: Multigraph, T2: Multigraph) -> bool:
    return T1.n == T2.n and canonical_tree_code(T1) == canonical_tree_code(T2)
