"""Undirected multigraphs with a fixed reference orientation per edge.

Edge ``k`` is stored as the pair ``(tail, head)``; flow values on that edge are
read in the tail -> head direction.  Vertices and edges are 0-based.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidParameter

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: Tuple[Edge, ...]
    _adj: Tuple[Tuple[Tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidParameter("vertex_count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for k, (u, v) in enumerate(edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidParameter(f"edge {k} = ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise InvalidParameter(f"edge {k} is a loop at vertex {u}")
            adj[u].append((v, k))
            adj[v].append((u, k))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """(neighbour, edge index) pairs at ``v``, one per incident edge."""
        return self._adj[v]

    def neighbors(self, v: int) -> List[int]:
        return sorted({w for w, _ in self._adj[v]})

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self._adj[u])


@dataclass(frozen=True)
class OddGirthResult:
    """Shortest odd cycle, or ``girth is None`` for bipartite graphs."""

    girth: Optional[int]
    cycle: Tuple[int, ...] = ()

    @property
    def bipartite(self) -> bool:
        return self.girth is None


def wheel_graph(n: int) -> Graph:
    """Rim ``v_0..v_{n-1}`` = vertices ``0..n-1``, hub ``u`` = vertex ``n``.

    Edges ``0..n-1`` are the spokes ``(n, j)``, edges ``n..2n-1`` the rim edges
    ``(j, j+1 mod n)``; every edge points toward ``v_j``.
    """
    if n < 3:
        raise InvalidParameter(f"wheel_graph needs n >= 3, got {n}")
    spokes = [(n, j) for j in range(n)]
    rim = [(j, (j + 1) % n) for j in range(n)]
    return Graph(n + 1, tuple(spokes + rim))


def prism_graph(n: int) -> Graph:
    """Outer cycle ``0..n-1``, inner cycle ``n..2n-1``, matching ``(j, n+j)``.

    Edge layout: ``0..n-1`` outer cycle ``(j, j+1)``, ``n..2n-1`` inner cycle
    ``(n+j, n+(j+1))``, ``2n..3n-1`` matching ``(j, n+j)``.
    """
    if n < 3:
        raise InvalidParameter(f"prism_graph needs n >= 3, got {n}")
    outer = [(j, (j + 1) % n) for j in range(n)]
    inner = [(n + j, n + (j + 1) % n) for j in range(n)]
    matching = [(j, n + j) for j in range(n)]
    return Graph(2 * n, tuple(outer + inner + matching))


def petersen_graph() -> Graph:
    outer = [(j, (j + 1) % 5) for j in range(5)]
    spokes = [(j, j + 5) for j in range(5)]
    inner = [(5 + j, 5 + (j + 2) % 5) for j in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"cycle_graph needs n >= 3, got {n}")
    return Graph(n, tuple((j, (j + 1) % n) for j in range(n)))


def is_cubic(G: Graph) -> bool:
    return all(d == 3 for d in G.degrees())


def components(G: Graph) -> List[List[int]]:
    seen = [False] * G.vertex_count
    comps = []
    for s in range(G.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, _ in G.incident(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def bridges(G: Graph) -> List[int]:
    """Indices of cut edges.  Parallel edges are never bridges."""
    n = G.vertex_count
    disc = [-1] * n
    low = [0] * n
    found = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # (vertex, edge used to enter it, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, via, pos = stack[-1]
            inc = G.incident(u)
            if pos < len(inc):
                stack[-1] = (u, via, pos + 1)
                w, k = inc[pos]
                if k == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, k, 0))
                else:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        found.append(via)
    return sorted(found)


def is_bridgeless(G: Graph) -> bool:
    """Connected and free of cut edges."""
    return is_connected(G) and not bridges(G)


def _bfs_tree(G: Graph, s: int):
    dist = [-1] * G.vertex_count
    parent = [-1] * G.vertex_count
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w, _ in G.incident(u):
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def _path_to_root(parent: Sequence[int], v: int) -> List[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def odd_girth(G: Graph) -> OddGirthResult:
    """Shortest odd cycle by one BFS per vertex.

    An edge ``(u, w)`` joining two vertices at equal BFS depth from ``s`` closes
    an odd closed walk of length ``2*depth + 1``.  The minimum over all roots is
    the odd girth, and at the minimum the walk is a simple cycle for any root
    lying on a shortest odd cycle.
    """
    best = None
    for s in range(G.vertex_count):
        dist, parent = _bfs_tree(G, s)
        for u, w in G.edges:
            if dist[u] != -1 and dist[u] == dist[w]:
                length = 2 * dist[u] + 1
                if best is None or length < best[0]:
                    walk = _closed_walk(parent, u, w)
                    if len(set(walk)) == len(walk) == length:
                        best = (length, tuple(walk))
    if best is None:
        return OddGirthResult(None)
    return OddGirthResult(best[0], best[1])


def _closed_walk(parent, u, w):
    up = _path_to_root(parent, u)
    wp = _path_to_root(parent, w)
    # root ... u, then w ... back toward the root (root not repeated)
    return list(reversed(up)) + wp[:-1]


def two_coloring(G: Graph) -> Optional[List[int]]:
    color = [-1] * G.vertex_count
    for s in range(G.vertex_count):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, _ in G.incident(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(G: Graph) -> bool:
    return two_coloring(G) is not None


def _check_chordless_cycle(G: Graph, cycle: Sequence[int]) -> None:
    g = len(cycle)
    if g < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    if len(set(cycle)) != g:
        raise InvalidParameter("cycle repeats a vertex")
    if any(not 0 <= v < G.vertex_count for v in cycle):
        raise InvalidParameter("cycle vertex out of range")
    for j in range(g):
        if not G.has_edge(cycle[j], cycle[(j + 1) % g]):
            raise InvalidParameter(
                f"vertices {cycle[j]} and {cycle[(j + 1) % g]} are not adjacent"
            )
    members = set(cycle)
    induced = sum(1 for u, v in G.edges if u in members and v in members)
    if induced != g:
        raise InvalidParameter("cycle has a chord (or a doubled edge)")


def contract_complement(G: Graph, cycle: Sequence[int]) -> Tuple[Graph, Dict[int, int]]:
    """Contract every vertex off ``cycle`` into one new vertex.

    Cycle vertex ``cycle[j]`` becomes vertex ``j`` and the contracted vertex
    becomes ``len(cycle)``, mirroring the :func:`wheel_graph` layout.  Edges
    that turn into loops are dropped; surviving edges keep their relative
    order and reference orientation.
    """
    cycle = [int(v) for v in cycle]
    _check_chordless_cycle(G, cycle)
    g = len(cycle)
    if g == G.vertex_count:
        raise InvalidParameter("nothing to contract: the cycle covers every vertex")
    mapping = {v: g for v in range(G.vertex_count)}
    for j, v in enumerate(cycle):
        mapping[v] = j
    edges = []
    for u, v in G.edges:
        a, b = mapping[u], mapping[v]
        if a != b:
            edges.append((a, b))
    return Graph(g + 1, tuple(edges)), mapping


def surviving_edges(G: Graph, mapping: Dict[int, int]) -> List[int]:
    """Indices of the edges of ``G`` that are not loops after ``mapping``."""
    return [k for k, (u, v) in enumerate(G.edges) if mapping[u] != mapping[v]]


def wheel_hub(G: Graph) -> Optional[int]:
    """Return the hub if ``G`` is a wheel (hub joined once to each vertex of a rim cycle)."""
    n = G.vertex_count - 1
    if n < 3 or G.edge_count != 2 * n:
        return None
    for hub in range(G.vertex_count):
        if G.degree(hub) != n or len(G.neighbors(hub)) != n:
            continue
        rim = [v for v in range(G.vertex_count) if v != hub]
        rim_adj = {v: [w for w, _ in G.incident(v) if w != hub] for v in rim}
        if any(len(a) != 2 or len(set(a)) != 2 for a in rim_adj.values()):
            continue
        # rim must be a single cycle
        start = rim[0]
        prev, cur, steps = None, start, 0
        while True:
            nxt = rim_adj[cur][0] if rim_adj[cur][0] != prev else rim_adj[cur][1]
            prev, cur = cur, nxt
            steps += 1
            if cur == start:
                break
        if steps == n:
            return hub
    return None
