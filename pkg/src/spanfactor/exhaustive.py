"""Tutte-Berge check over every graph of a given order, streamed from ``geng``.

``geng`` (from nauty) lists all graphs on ``n`` vertices up to isomorphism in
graph6 format.  For each one a compiled kernel computes

* the deficiency ``max_S o(G-S) - |S|`` over all ``2**n`` vertex sets, and
* the matching number by dynamic programming over vertex subsets,

and compares ``deficiency == n - 2 * matching number``.  Both sides are
exhaustive and share nothing with the blossom code in :mod:`.matching`.
"""

from __future__ import annotations

import os
import shutil
import subprocess
from pathlib import Path
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import GraphInputError
from .graph import Multigraph

MAX_N = 16
CHUNK_GRAPHS = 200_000


def find_geng() -> str | None:
    """``$SPANFACTOR_GENG``, then ``tools/bin/geng`` in the source tree, then ``PATH``."""
    env = os.environ.get("SPANFACTOR_GENG")
    if env and Path(env).is_file():
        return env
    local = Path(__file__).resolve().parents[2] / "tools" / "bin" / "geng"
    if local.is_file():
        return str(local)
    return shutil.which("geng") or shutil.which("nauty-geng")


def graph6_line_length(n: int) -> int:
    """Bytes per graph6 line for ``n <= 62``, newline included."""
    return 1 + (n * (n - 1) // 2 + 5) // 6 + 1


@njit(cache=True)
def _decode(lines: np.ndarray, n: int) -> np.ndarray:
    count = lines.shape[0]
    adj = np.zeros((count, n), dtype=np.int64)
    for g in range(count):
        bit = 0
        for j in range(1, n):
            for i in range(j):
                byte = lines[g, 1 + bit // 6] - 63
                if (byte >> (5 - bit % 6)) & 1:
                    adj[g, i] |= 1 << j
                    adj[g, j] |= 1 << i
                bit += 1
    return adj


@njit(cache=True)
def _popcount(x: int) -> int:
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lowbit_index(x: int) -> int:
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def _tutte_berge_batch(adj: np.ndarray, n: int) -> np.ndarray:
    """Per graph: ``[deficiency, matching number]``."""
    count = adj.shape[0]
    size = 1 << n
    full = size - 1
    out = np.zeros((count, 2), dtype=np.int64)
    reach = np.zeros(size, dtype=np.int64)
    nu = np.zeros(size, dtype=np.int64)
    for g in range(count):
        # neighbourhood of every vertex set
        reach[0] = 0
        for mask in range(1, size):
            low = mask & -mask
            reach[mask] = reach[mask ^ low] | adj[g, _lowbit_index(low)]
        # matching number of every induced subgraph
        nu[0] = 0
        for mask in range(1, size):
            v = _lowbit_index(mask)
            rest = mask ^ (1 << v)
            best = nu[rest]
            cand = adj[g, v] & rest
            while cand:
                w = cand & -cand
                cand ^= w
                val = 1 + nu[rest ^ w]
                if val > best:
                    best = val
            nu[mask] = best
        worst = -n - 1
        for S in range(size):
            alive = full ^ S
            odd = 0
            rest = alive
            while rest:
                comp = rest & -rest
                while True:
                    grown = (comp | reach[comp]) & alive
                    if grown == comp:
                        break
                    comp = grown
                rest ^= comp
                odd += _popcount(comp) & 1
            val = odd - _popcount(S)
            if val > worst:
                worst = val
        out[g, 0] = worst
        out[g, 1] = nu[full]
    return out


def masks_to_graph(masks, n: int) -> Multigraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if int(masks[i]) >> j & 1]
    return Multigraph(n, tuple(edges))


def graph_to_masks(G: Multigraph) -> np.ndarray:
    return np.array(G.neighbour_masks, dtype=np.int64)


def tutte_berge_values(graphs: list[Multigraph]) -> list[tuple[int, int]]:
    """Kernel values ``(deficiency, matching number)`` for same-order graphs."""
    if not graphs:
        return []
    n = graphs[0].n
    if any(G.n != n for G in graphs):
        raise GraphInputError("all graphs must have the same order")
    adj = np.stack([graph_to_masks(G) for G in graphs]) if n else np.zeros((len(graphs), 0), dtype=np.int64)
    return [tuple(map(int, row)) for row in _tutte_berge_batch(adj, n)]


class OrderSweep(NamedTuple):
    n: int
    graphs: int
    failures: list[Multigraph]


def sweep_order(n: int, geng: str | None = None, chunk: int = CHUNK_GRAPHS, max_failures: int = 10) -> OrderSweep:
    """Run the Tutte-Berge comparison on every graph with ``n`` vertices."""
    if not (1 <= n <= MAX_N):
        raise GraphInputError(f"order must be in 1..{MAX_N}")
    geng = geng or find_geng()
    if geng is None:
        raise FileNotFoundError("geng not found; run tools/build_geng.sh or set SPANFACTOR_GENG")
    width = graph6_line_length(n)
    proc = subprocess.Popen([geng, "-q", str(n)], stdout=subprocess.PIPE)
    total, failures = 0, []
    try:
        while True:
            data = proc.stdout.read(width * chunk)
            if not data:
                break
            if len(data) % width:
                raise RuntimeError("truncated graph6 stream")
            lines = np.frombuffer(data, dtype=np.uint8).reshape(-1, width)
            adj = _decode(lines, n)
            res = _tutte_berge_batch(adj, n)
            bad = np.nonzero(res[:, 0] != n - 2 * res[:, 1])[0]
            for g in bad[: max_failures - len(failures)]:
                failures.append(masks_to_graph(adj[g], n))
            total += len(lines)
    finally:
        proc.stdout.close()
        if proc.wait() != 0:
            raise RuntimeError(f"geng exited with status {proc.returncode}")
    return OrderSweep(n, total, failures)
