"""Immutable simple undirected graphs and the structural primitives built on them.

Vertices are the dense integers ``0..n-1``.  Neighbor lists are stored
sorted, so two graphs are equal exactly when their adjacency tuples are.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, ParseError


@dataclass(frozen=True)
class Graph:
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) outside 0..{n - 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def n(self) -> int:
        return len(self.adj)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adjsets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InvalidInput(f"unknown vertex {v!r}")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# --------------------------------------------------------------------------
# edge-list text format


def load_graph(text: str) -> Graph:
    """Parse the edge-list format.

    An optional first content line ``nodes N`` fixes the vertex count;
    otherwise it is one more than the largest id mentioned.  Lines starting
    with ``#`` and blank lines are ignored; duplicate edges collapse.
    """
    n = None
    edges = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "nodes":
            if seen_content or len(parts) != 2:
                raise ParseError(f"line {lineno}: misplaced or malformed 'nodes' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
            seen_content = True
            continue
        seen_content = True
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise InvalidInput(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    elif any(max(e) >= n for e in edges):
        raise ParseError(f"edge endpoint exceeds declared 'nodes {n}'")
    return Graph.from_edges(n, edges)


def dump_graph(g: Graph) -> str:
    lines = [f"nodes {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# distances


def bfs_distances(g: Graph, source: int, *, limit: Optional[int] = None,
                  within: Optional[set] = None) -> dict[int, int]:
    """Distances from ``source``, optionally truncated at ``limit`` and
    restricted to the vertex set ``within``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in g.adj[u]:
            if w not in dist and (within is None or w in within):
                dist[w] = du + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> Optional[int]:
    """BFS distance, or ``None`` when ``v`` is unreachable."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    return bfs_distances(g, u).get(v)


def ball(g: Graph, center: int, radius: int) -> set[int]:
    g.check_vertex(center)
    if radius < 0:
        raise InvalidInput("radius must be non-negative")
    return set(bfs_distances(g, center, limit=radius))


def shortest_path(g: Graph, a: int, b: int, within: Optional[set] = None) -> Optional[list[int]]:
    """Lexicographically least shortest a-b path inside ``within`` (or g)."""
    if a == b:
        return [a]
    dist_b = bfs_distances(g, b, within=within)
    if a not in dist_b:
        return None
    path = [a]
    u = a
    while u != b:
        # smallest-id neighbor one step closer to b gives the lex-least path
        u = next(w for w in g.adj[u] if dist_b.get(w) == dist_b[u] - 1)
        path.append(u)
    return path


def components(g: Graph, vertices: Optional[Iterable[int]] = None) -> list[set[int]]:
    allowed = set(g.vertices()) if vertices is None else set(vertices)
    seen = set()
    comps = []
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = set(bfs_distances(g, v, within=allowed))
        seen |= comp
        comps.append(comp)
    return comps


# --------------------------------------------------------------------------
# girth


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or ``None`` for a forest.

    Per-vertex BFS; a search stops as soon as it cannot beat the best cycle
    found so far.
    """
    best = None
    n = g.n
    adj = g.adj
    for root in range(n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = du + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best == 3:
            break
    return best


def girth_at_least(g: Graph, floor: float) -> bool:
    gi = girth(g)
    return gi is None or gi >= floor


# --------------------------------------------------------------------------
# degeneracy


@dataclass(frozen=True)
class DegeneracyOrdering:
    order: tuple[int, ...]
    degeneracy: int

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def right_degree(self, g: Graph, v: int) -> int:
        pos = self.position
        return sum(1 for w in g.adj[v] if pos[w] > pos[v])


def degeneracy_ordering(g: Graph) -> DegeneracyOrdering:
    """Repeatedly remove a vertex of minimum residual degree, lowest id first."""
    deg = list(g.degrees)
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        k = max(k, d)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return DegeneracyOrdering(tuple(order), k)


def greedy_independent_set(g: Graph, ord: DegeneracyOrdering,
                           subset: Optional[Iterable[int]] = None) -> set[int]:
    """Largest colour class of the greedy colouring along the reversed order.

    Every vertex sees at most ``k`` already-coloured neighbours, so at most
    ``k + 1`` colours appear and the class has size at least |subset|/(k+1).
    """
    target = set(g.vertices()) if subset is None else set(subset)
    color = {}
    for v in reversed(ord.order):
        if v not in target:
            continue
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes: dict[int, set[int]] = {}
    for v, c in color.items():
        classes.setdefault(c, set()).add(v)
    if not classes:
        return set()
    best = max(sorted(classes), key=lambda c: len(classes[c]))
    return classes[best]


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return all(w not in s for v in s for w in g.adj[v])


# --------------------------------------------------------------------------
# subgraphs


@dataclass(frozen=True)
class Subgraph:
    graph: Graph
    to_host: tuple[int, ...]

    @cached_property
    def to_sub(self) -> dict[int, int]:
        return {h: i for i, h in enumerate(self.to_host)}

    def host_set(self, vs: Iterable[int]) -> set[int]:
        return {self.to_host[v] for v in vs}

    def sub_set(self, vs: Iterable[int]) -> set[int]:
        to_sub = self.to_sub
        return {to_sub[v] for v in vs}


def induced_subgraph(g: Graph, s: Iterable[int]) -> Subgraph:
    """Graph on ``s`` with exactly the host edges inside it.

    New ids follow the increasing order of host ids.
    """
    verts = sorted(set(s))
    for v in verts:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(verts)}
    adj = tuple(tuple(index[w] for w in g.adj[v] if w in index) for v in verts)
    return Subgraph(Graph(adj), tuple(verts))


def edges_within(g: Graph, s: Iterable[int]) -> int:
    s = set(s)
    return sum(1 for v in s for w in g.adj[v] if w in s) // 2


# --------------------------------------------------------------------------
# Moore bound


@dataclass(frozen=True)
class MooreFloor:
    moore: int
    advisory: int  # ceil(d ** (g / 2)), the rough asymptotic figure


def moore_floor(d: int, g: int) -> MooreFloor:
    """Least order of a graph with minimum degree ``d`` and girth ``g``.

    The enforced figure is the Moore bound; ``advisory`` carries the
    d^(g/2) estimate, which overshoots at small parameters (Petersen).
    """
    if d < 3 or g < 3:
        raise InvalidInput("moore_floor needs d >= 3 and g >= 3")
    if g % 2:
        r = (g - 1) // 2
        moore = 1 + d * sum((d - 1) ** i for i in range(r))
    else:
        r = g // 2
        moore = 2 * sum((d - 1) ** i for i in range(r))
    advisory = _ceil_power(d, g)
    return MooreFloor(moore, advisory)


def _ceil_power(d: int, g: int) -> int:
    # ceil(d ** (g/2)) computed exactly
    if g % 2 == 0:
        return d ** (g // 2)
    sq = d ** g
    root = math.isqrt(sq)
    return root if root * root == sq else root + 1
