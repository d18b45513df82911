"""Weighted undirected graphs and exact shortest-path / girth computations.

Everything in this module is ground truth for the rest of the package: the
simulator, the schemes and the lower-bound verifiers all compare against
these routines.  Node ids are dense integers ``0..n-1``; unreachable
distances are ``INF`` (``math.inf``), never a large integer.
"""

from __future__ import annotations

import heapq
import json
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

INF = math.inf


class GraphError(ValueError):
    pass


class Graph:
    """Undirected graph with integer edge weights in ``[1, W]``.

    ``nodes`` is the vertex set; it defaults to ``range(n)`` and is smaller
    for induced subgraphs (see :func:`ball`), which keep the original ids.
    A graph is not modified after construction.
    """

    def __init__(self, n: int, edges: Iterable = (), nodes: Optional[Iterable[int]] = None):
        if n < 0:
            raise GraphError(f"negative node count {n}")
        self.n = n
        self.nodes = frozenset(range(n)) if nodes is None else frozenset(nodes)
        for v in self.nodes:
            if not 0 <= v < n:
                raise GraphError(f"node id {v} out of range [0, {n})")
        self.adj: list[dict[int, int]] = [dict() for _ in range(n)]
        self.m = 0
        self.W = 1
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1
            else:
                u, v, w = e
            self._add(int(u), int(v), int(w))

    def _add(self, u: int, v: int, w: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if u not in self.nodes or v not in self.nodes:
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
        if w < 1:
            raise GraphError(f"edge ({u}, {v}) has weight {w} < 1")
        if v in self.adj[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        self.adj[u][v] = w
        self.adj[v][u] = w
        self.m += 1
        self.W = max(self.W, w)

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, |V|={len(self.nodes)}, m={self.m}, W={self.W})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.nodes == other.nodes and self.adj == other.adj

    def neighbors(self, v: int) -> dict[int, int]:
        return self.adj[v]

    def weight(self, u: int, v: int) -> int:
        return self.adj[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Edges as ``(u, v, w)`` with ``u < v``, sorted."""
        for u in sorted(self.nodes):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v, self.adj[u][v]

    def check_node(self, v: int) -> None:
        if v not in self.nodes:
            raise GraphError(f"invalid node id {v}")

    def to_dict(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if len(self.nodes) != self.n:
            d["nodes"] = sorted(self.nodes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        return cls(d["n"], [tuple(e) for e in d["edges"]], d.get("nodes"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> "Graph":
        return cls.from_dict(json.loads(s))


@dataclass
class DistanceTable:
    source: int
    dist: list
    parent: list

    def path_to(self, v: int) -> list[int]:
        if self.dist[v] == INF:
            return []
        path = [v]
        while path[-1] != self.source:
            path.append(self.parent[path[-1]])
        return path[::-1]


@dataclass
class HopLimitedTable:
    source: int
    h: int
    dist_h: list


def shortest_paths(g: Graph, s: int) -> DistanceTable:
    """Dijkstra from ``s``.  Parents prefer the smallest id among equal options."""
    g.check_node(s)
    dist = [INF] * g.n
    parent: list = [None] * g.n
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.adj[u].items():
            nd = d + w
            if nd < dist[v] or (nd == dist[v] and not done[v] and u < parent[v]):
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    return DistanceTable(s, dist, parent)


def all_pairs(g: Graph) -> list[list]:
    """Distance matrix ``D[u][v]`` (rows for nodes outside the vertex set are all INF)."""
    rows = []
    for u in range(g.n):
        rows.append(shortest_paths(g, u).dist if u in g.nodes else [INF] * g.n)
    return rows


def shortest_path_counts(g: Graph, s: int) -> tuple[list, list[int]]:
    """Distances from ``s`` and the number of distinct shortest ``s``-``v`` paths."""
    g.check_node(s)
    dist = shortest_paths(g, s).dist
    count = [0] * g.n
    count[s] = 1
    order = sorted((d, v) for v, d in enumerate(dist) if d != INF)
    for d, v in order:
        if v == s:
            continue
        count[v] = sum(count[p] for p, w in g.adj[v].items() if dist[p] + w == d)
    return dist, count


def min_hop_shortest(g: Graph, s: int) -> tuple[list, list]:
    """Distances from ``s`` and, per node, the fewest edges on any shortest path."""
    dist = shortest_paths(g, s).dist
    hops: list = [INF] * g.n
    hops[s] = 0
    for d, v in sorted((d, v) for v, d in enumerate(dist) if d != INF):
        if v == s:
            continue
        hops[v] = min(hops[p] + 1 for p, w in g.adj[v].items() if dist[p] + w == d)
    return dist, hops


def hop_limited(g: Graph, s: int, h: int) -> HopLimitedTable:
    """Minimum weight over ``s``-``v`` paths with at most ``h`` edges.

    Layered Bellman-Ford; layer ``i`` only relaxes nodes whose value changed
    in layer ``i-1``, and stops early once nothing changes.
    """
    g.check_node(s)
    if h < 0:
        raise GraphError(f"negative hop budget {h}")
    dist = [INF] * g.n
    dist[s] = 0
    changed = {s}
    for _ in range(h):
        if not changed:
            break
        new = dist[:]
        nxt = set()
        for u in changed:
            du = dist[u]
            for v, w in g.adj[u].items():
                if du + w < new[v]:
                    new[v] = du + w
                    nxt.add(v)
        dist = new
        changed = nxt
    return HopLimitedTable(s, h, dist)


def hop_distances(g: Graph, sources: Iterable[int]) -> list:
    """Multi-source BFS hop distance (unit weights), INF when unreachable."""
    dist: list = [INF] * g.n
    q = deque()
    for s in sources:
        g.check_node(s)
        if dist[s] != 0:
            dist[s] = 0
            q.append(s)
    while q:
        u = q.popleft()
        for v in g.adj[u]:
            if dist[v] == INF:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def is_connected(g: Graph) -> bool:
    if not g.nodes:
        return True
    d = hop_distances(g, [min(g.nodes)])
    return all(d[v] != INF for v in g.nodes)


def girth(g: Graph):
    """Length of the shortest cycle in edges; INF for forests.

    One BFS per root; a non-tree edge (a, b) closes a closed walk of length
    ``dist[a] + dist[b] + 1`` which contains a cycle at most that long, and
    the root lying on a shortest cycle attains it exactly.
    """
    best = INF
    for r in g.nodes:
        dist = {r: 0}
        parent = {r: None}
        q = deque([r])
        while q:
            a = q.popleft()
            if 2 * dist[a] + 1 >= best:
                break
            for b in g.adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    q.append(b)
                elif parent[a] != b:
                    best = min(best, dist[a] + dist[b] + 1)
    return best


def bipartition(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """Proper 2-colouring as ``(side0, side1)``, or None if not bipartite.

    Each component's smallest node goes to side 0.
    """
    color: dict[int, int] = {}
    for r in sorted(g.nodes):
        if r in color:
            continue
        color[r] = 0
        q = deque([r])
        while q:
            a = q.popleft()
            for b in g.adj[a]:
                if b not in color:
                    color[b] = 1 - color[a]
                    q.append(b)
                elif color[b] == color[a]:
                    return None
    side0 = sorted(v for v, c in color.items() if c == 0)
    side1 = sorted(v for v, c in color.items() if c == 1)
    return side0, side1


def complete_bipartite(k: int) -> Graph:
    """K_{k,k} with sides ``0..k-1`` and ``k..2k-1``, unit weights."""
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    return Graph(2 * k, [(i, k + j, 1) for i in range(k) for j in range(k)])


def bipartite_double_cover(g: Graph) -> Graph:
    """Copy ``v`` to ``v`` and ``v + n``; edge {u, v} becomes {u, v+n} and {v, u+n}."""
    n = g.n
    nodes = list(g.nodes) + [v + n for v in g.nodes]
    edges = []
    for u, v, w in g.edges():
        edges.append((u, v + n, w))
        edges.append((v, u + n, w))
    return Graph(2 * n, edges, nodes)


def ball(g: Graph, v: int, h: int) -> Graph:
    """Subgraph induced by the nodes within ``h`` hops of ``v`` (ids preserved)."""
    g.check_node(v)
    if h < 0:
        raise GraphError(f"negative radius {h}")
    dist = {v: 0}
    q = deque([v])
    while q:
        a = q.popleft()
        if dist[a] == h:
            continue
        for b in g.adj[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                q.append(b)
    inside = dist.keys()
    edges = [(a, b, w) for a in inside for b, w in g.adj[a].items() if a < b and b in dist]
    return Graph(g.n, edges, inside)


# --- small named graphs and random generators -------------------------------


def path_graph(n: int, w: int = 1) -> Graph:
    return Graph(n, [(i, i + 1, w) for i in range(n - 1)])


def cycle_graph(n: int, w: int = 1) -> Graph:
    return Graph(n, [(i, (i + 1) % n, w) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_gnp(n: int, p: float, W: int = 1, seed: int = 0, require_connected: bool = True) -> Graph:
    """Erdos-Renyi G(n, p) with weights uniform in [1, W]."""
    rng = random.Random(f"gnp/{seed}")
    edges = [
        (u, v, rng.randint(1, W))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    g = Graph(n, edges)
    if require_connected and not is_connected(g):
        raise GraphError(f"G({n}, {p}) sample with seed {seed} is disconnected")
    return g


def random_connected(n: int, p: float, W: int = 1, seed: int = 0) -> Graph:
    """G(n, p) plus a random spanning tree, so the result is always connected."""
    rng = random.Random(f"connected/{seed}")
    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(1, W)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges[(u, v)] = rng.randint(1, W)
    return Graph(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


def random_linear(n: int, reach: int = 3, p: float = 0.5, W: int = 1, seed: int = 0) -> Graph:
    """Connected graph with hop diameter Theta(n / reach).

    Nodes sit on a line; consecutive nodes are always joined and nodes up
    to ``reach`` apart are joined with probability ``p``.  These are the
    instances where shortest paths are long enough to need landmarks.
    """
    rng = random.Random(f"linear/{seed}")
    edges = []
    for u in range(n - 1):
        edges.append((u, u + 1, rng.randint(1, W)))
        for d in range(2, reach + 1):
            if u + d < n and rng.random() < p:
                edges.append((u, u + d, rng.randint(1, W)))
    return Graph(n, edges)
