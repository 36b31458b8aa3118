"""Graph containers and the handful of graph queries the domination code needs.

Vertices are always 0..n-1.  Undirected graphs are simple (no loops, no
parallel edges); directed graphs store out-neighbour lists and keep the
in-neighbour lists around because the domination routines need to know,
for a vertex u, whose neighbourhood counts change when u enters or leaves
a candidate set.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "DirectedGraph",
    "gen_gnp",
    "degree_stats",
    "bfs_distance",
    "three_far_set",
    "save_edge_list",
    "load_edge_list",
]

UNREACHABLE = math.inf


class Graph:
    """Simple undirected graph.

    Treat instances as immutable: the neighbour arrays are shared, not
    copied, by the accessors.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.vertex_count = n
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            seen.add((min(u, v), max(u, v)))
        self._edges = tuple(sorted(seen))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self._neighbors = [np.array(sorted(a), dtype=np.int64) for a in nbrs]

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors_of(self, v: int) -> np.ndarray:
        """Vertices adjacent to v (the neighbourhood the domination count uses)."""
        return self._neighbors[v]

    def influence_of(self, v: int) -> np.ndarray:
        """Vertices whose domination count changes when v is (de)selected."""
        return self._neighbors[v]

    def degree_of(self, v: int) -> int:
        return len(self._neighbors[v])


class DirectedGraph:
    """Directed graph given by out-neighbour lists (no self-loops)."""

    def __init__(self, out_neighbors: Sequence[Iterable[int]]):
        n = len(out_neighbors)
        self.vertex_count = n
        outs: list[np.ndarray] = []
        ins: list[list[int]] = [[] for _ in range(n)]
        for v, row in enumerate(out_neighbors):
            row = sorted({int(u) for u in row})
            for u in row:
                if not 0 <= u < n:
                    raise ValueError(f"out-neighbour {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                ins[u].append(v)
            outs.append(np.array(row, dtype=np.int64))
        self._out = outs
        self._in = [np.array(sorted(a), dtype=np.int64) for a in ins]

    def neighbors_of(self, v: int) -> np.ndarray:
        return self._out[v]

    def influence_of(self, v: int) -> np.ndarray:
        return self._in[v]

    def degree_of(self, v: int) -> int:
        return len(self._out[v])


def gen_gnp(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p) with independent edge coins.

    The same (n, p, seed) triple always yields the same graph.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def degree_stats(g) -> tuple[int, int, list[int]]:
    """(min degree, max degree, per-vertex degree list)."""
    degs = [g.degree_of(v) for v in range(g.vertex_count)]
    if not degs:
        return 0, 0, []
    return min(degs), max(degs), degs


def bfs_distance(g, u: int, v: int):
    """Hop distance from u to v; UNREACHABLE (inf) when no path exists."""
    n = g.vertex_count
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError("vertex out of range")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for x in g.neighbors_of(w):
            x = int(x)
            if x not in dist:
                dist[x] = dist[w] + 1
                if x == v:
                    return dist[x]
                queue.append(x)
    return UNREACHABLE


def three_far_set(g: Graph) -> tuple[int, ...]:
    """Greedy set of vertices pairwise at distance >= 3, scanned in index order.

    A vertex is admitted when it lies outside every chosen vertex's
    radius-2 ball, which is exactly the distance >= 3 condition.  The
    result is re-verified against that condition, and its size is checked
    against the n / (2 * Delta^2) floor that the greedy construction
    guarantees whenever the graph has any edge at all.
    """
    n = g.vertex_count
    blocked = np.zeros(n, dtype=bool)
    chosen: list[int] = []
    for v in range(n):
        if blocked[v]:
            continue
        chosen.append(v)
        blocked[v] = True
        for u in g.neighbors_of(v):
            blocked[u] = True
            blocked[g.neighbors_of(int(u))] = True

    # Independent re-check: distance >= 3 between chosen vertices is the same
    # as their closed radius-1 neighbourhoods being pairwise disjoint.
    mark = np.full(n, -1, dtype=np.int64)
    for v in chosen:
        ball = {v}
        ball.update(int(u) for u in g.neighbors_of(v))
        for w in ball:
            if mark[w] >= 0 and mark[w] != v:
                raise RuntimeError(f"vertices {mark[w]} and {v} are within distance 2")
            mark[w] = v

    _, dmax, _ = degree_stats(g)
    if dmax >= 1 and len(chosen) < n / (2 * dmax * dmax):
        raise RuntimeError("3-far set smaller than the n/(2*Delta^2) guarantee")
    return tuple(chosen)


def save_edge_list(g: Graph, path) -> None:
    """Write one 'u v' pair per line, 0-indexed."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def load_edge_list(path, n: int | None = None) -> Graph:
    """Read an edge list written by save_edge_list.

    When n is omitted it is inferred as 1 + the largest vertex index, so
    trailing isolated vertices need an explicit n.
    """
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: non-integer vertex in {line!r}") from exc
            edges.append((u, v))
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    return Graph(n, edges)
