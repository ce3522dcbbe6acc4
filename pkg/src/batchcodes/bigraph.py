"""Bipartite graphs and their short-cycle verifiers.

Left nodes are message symbols, right nodes are parity symbols. Adjacency is
stored left-to-right; the right-to-left index is derived on construction.
"""
from __future__ import annotations

import json
import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence


class GraphError(ValueError):
    pass


def worker_count() -> int:
    """Verifier parallelism cap, from ``BATCHCODE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("BATCHCODE_THREADS", "1")))
    except ValueError:
        return 1


class BiGraph:
    """Simple bipartite graph with ``n1`` left and ``n2`` right nodes."""

    __slots__ = ("n1", "n2", "adj", "radj")

    def __init__(self, n1: int, n2: int, adj: Sequence[Sequence[int]]):
        if n1 < 0 or n2 < 0:
            raise GraphError("node counts must be non-negative")
        if len(adj) != n1:
            raise GraphError(f"expected {n1} adjacency lists, got {len(adj)}")
        left = []
        radj: list[list[int]] = [[] for _ in range(n2)]
        for i, nbrs in enumerate(adj):
            row = tuple(int(j) for j in nbrs)
            for a, b in zip(row, row[1:]):
                if a >= b:
                    raise GraphError(f"adjacency of left node {i} is not strictly ascending")
            if row and (row[0] < 0 or row[-1] >= n2):
                raise GraphError(f"left node {i} has a right index outside [0, {n2})")
            left.append(row)
            for j in row:
                radj[j].append(i)
        self.n1 = n1
        self.n2 = n2
        self.adj: tuple[tuple[int, ...], ...] = tuple(left)
        self.radj: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in radj)

    @classmethod
    def from_edges(cls, n1: int, n2: int, edges) -> "BiGraph":
        rows: list[set[int]] = [set() for _ in range(n1)]
        for i, j in edges:
            rows[i].add(j)
        return cls(n1, n2, [sorted(r) for r in rows])

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.adj)

    def has_edge(self, i: int, j: int) -> bool:
        row = self.adj[i]
        # rows are short; linear scan beats bisect overhead here
        return j in row

    def __eq__(self, other):
        if not isinstance(other, BiGraph):
            return NotImplemented
        return (self.n1, self.n2, self.adj) == (other.n1, other.n2, other.adj)

    def __hash__(self):
        return hash((self.n1, self.n2, self.adj))

    def __repr__(self):
        return f"BiGraph(n1={self.n1}, n2={self.n2}, edges={self.num_edges})"

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "adj": [list(r) for r in self.adj]}

    @classmethod
    def from_dict(cls, d: dict) -> "BiGraph":
        extra = set(d) - {"n1", "n2", "adj"}
        if extra:
            raise GraphError(f"unexpected graph keys: {sorted(extra)}")
        return cls(int(d["n1"]), int(d["n2"]), d["adj"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BiGraph":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DegreeProfile:
    min_left: int
    max_left: int
    min_right: int
    max_right: int

    @property
    def left_uniform(self) -> bool:
        return self.min_left == self.max_left


def degree_profile(g: BiGraph) -> DegreeProfile:
    ld = [len(r) for r in g.adj] or [0]
    rd = [len(r) for r in g.radj] or [0]
    return DegreeProfile(min(ld), max(ld), min(rd), max(rd))


@dataclass(frozen=True)
class FourCycle:
    """Witness ``x_i - c_a - x_j - c_b``."""
    left: tuple[int, int]
    right: tuple[int, int]


@dataclass(frozen=True)
class SixCycle:
    """Witness ``x_l[0] - c_r[0] - x_l[1] - c_r[1] - x_l[2] - c_r[2] - back``."""
    left: tuple[int, int, int]
    right: tuple[int, int, int]


def has_four_cycle(g: BiGraph) -> Optional[FourCycle]:
    """Return a 4-cycle witness, or ``None`` if the graph has no 4-cycle.

    For each left node ``i`` the right neighborhoods of all other left
    nodes at distance two are scanned; two shared right nodes close a cycle.
    """
    for i, row in enumerate(g.adj):
        first_shared: dict[int, int] = {}
        for c in row:
            for j in g.radj[c]:
                if j <= i:
                    continue
                if j in first_shared:
                    a = first_shared[j]
                    return FourCycle((i, j), (a, c))
                first_shared[j] = c
    return None


def has_six_cycle(g: BiGraph) -> Optional[SixCycle]:
    """Return a 6-cycle witness, or ``None``.

    Enumerates, for every left node ``u`` and every pair of its right
    neighbors ``a < b``, paths ``a - v - c`` and ``b - w - c``; a common far
    end ``c`` with ``v != w`` closes a hexagon through ``u``.
    """
    for u, row in enumerate(g.adj):
        for ia, a in enumerate(row):
            reach: dict[int, list[int]] = {}
            for v in g.radj[a]:
                if v == u:
                    continue
                for c in g.adj[v]:
                    if c != a:
                        reach.setdefault(c, []).append(v)
            if not reach:
                continue
            for b in row[ia + 1:]:
                for w in g.radj[b]:
                    if w == u:
                        continue
                    for c in g.adj[w]:
                        if c == b or c == a:
                            continue
                        for v in reach.get(c, ()):
                            if v != w:
                                return SixCycle((u, v, w), (a, c, b))
    return None


def _bfs_shortest_cycle(g: BiGraph, start: int, bound: float) -> float:
    """Shortest cycle through the BFS tree rooted at ``start``.

    Vertices ``0..n1-1`` are left nodes, ``n1..n1+n2-1`` right nodes.
    Exploration stops once no cycle shorter than ``bound`` can be found.
    """
    n1 = g.n1
    dist = {start: 0}
    parent = {start: -1}
    queue = deque([start])
    best = bound
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if 2 * dx >= best:
            break
        nbrs = [n1 + c for c in g.adj[x]] if x < n1 else g.radj[x - n1]
        for y in nbrs:
            if y == parent[x]:
                continue
            dy = dist.get(y)
            if dy is None:
                dist[y] = dx + 1
                parent[y] = x
                queue.append(y)
            else:
                best = min(best, dx + dy + 1)
    return best


def girth(g: BiGraph) -> float:
    """Exact girth; ``math.inf`` for forests.

    BFS from every vertex, each search bounded by the best cycle found so far.
    """
    total = g.n1 + g.n2
    workers = worker_count()
    if workers == 1 or total < 64:
        best = math.inf
        for s in range(total):
            best = _bfs_shortest_cycle(g, s, best)
            if best == 4:
                break
        return best
    chunks = [range(w, total, workers) for w in range(workers)]

    def run(chunk):
        best = math.inf
        for s in chunk:
            best = _bfs_shortest_cycle(g, s, best)
        return best

    with ThreadPoolExecutor(max_workers=workers) as ex:
        return min(ex.map(run, chunks))


def is_cycle(g: BiGraph, left: Sequence[int], right: Sequence[int]) -> bool:
    """Check that ``left[0], right[0], left[1], right[1], ...`` is a simple cycle."""
    if len(left) != len(right) or len(set(left)) != len(left) or len(set(right)) != len(right):
        return False
    m = len(left)
    for t in range(m):
        if not g.has_edge(left[t], right[t]) or not g.has_edge(left[(t + 1) % m], right[t]):
            return False
    return True
