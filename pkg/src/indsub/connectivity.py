"""Vertex connectivity, boundaries, core peeling, the bounded-boundary
extractor, the connected-good procedure and disjoint-path linkage."""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import BudgetExhausted, HypothesisNotMet, InvalidInput, NotFound
from .graph import (Graph, bfs_distances, components, degeneracy_ordering, girth,
                    induced_subgraph)


# --------------------------------------------------------------------------
# max-flow on the vertex-split graph


class _SplitFlow:
    """Unit-capacity flow network in which every vertex v becomes in(v)->out(v)."""

    def __init__(self, g: Graph):
        n = g.n
        self.n = n
        head = [[] for _ in range(2 * n)]
        to, cap = [], []

        def arc(a, b, c=1):
            head[a].append(len(to))
            to.append(b)
            cap.append(c)
            head[b].append(len(to))
            to.append(a)
            cap.append(0)

        for v in range(n):
            arc(2 * v, 2 * v + 1)  # arc index 2v
        big = n + 1  # edges never belong to a minimum cut
        for u, v in g.edges():
            arc(2 * u + 1, 2 * v, big)
            arc(2 * v + 1, 2 * u, big)
        self.head, self.to, self.base = head, to, cap
        self.cap = cap

    def run(self, s: int, t: int, limit: int) -> int:
        """Number of internally disjoint s-t paths, stopping at ``limit``."""
        cap = list(self.base)
        head, to = self.head, self.to
        source, sink = 2 * s + 1, 2 * t
        flow = 0
        while flow < limit:
            parent = {source: -1}
            queue = deque([source])
            while queue and sink not in parent:
                x = queue.popleft()
                for a in head[x]:
                    if cap[a] > 0:
                        y = to[a]
                        if y not in parent:
                            parent[y] = a
                            queue.append(y)
            if sink not in parent:
                break
            y = sink
            while y != source:
                a = parent[y]
                cap[a] -= 1
                cap[a ^ 1] += 1
                y = to[a ^ 1]
            flow += 1
        self.cap = cap
        self._source = source
        return flow

    def separator(self) -> set[int]:
        """Minimum s-t vertex separator read off the last residual network."""
        cap, head, to = self.cap, self.head, self.to
        seen = {self._source}
        queue = deque([self._source])
        while queue:
            x = queue.popleft()
            for a in head[x]:
                if cap[a] > 0 and to[a] not in seen:
                    seen.add(to[a])
                    queue.append(to[a])
        return {v for v in range(self.n) if 2 * v in seen and 2 * v + 1 not in seen}


def local_connectivity(g: Graph, s: int, t: int, limit: Optional[int] = None) -> int:
    if g.has_edge(s, t) or s == t:
        raise InvalidInput("local connectivity needs distinct non-adjacent vertices")
    return _SplitFlow(g).run(s, t, g.n if limit is None else limit)


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _small_cut(g: Graph, below: int) -> Optional[set[int]]:
    """Some vertex cut of size < ``below`` (the smallest one seen), or None.

    Even's scheme: a cut of size c misses one of the first c + 1 vertices,
    and that vertex is separated from some later vertex.
    """
    if g.n <= 1 or _is_complete(g):
        return None
    net = _SplitFlow(g)
    best, best_cut = below, None
    i = 0
    while i < g.n and i < best:
        for j in range(i + 1, g.n):
            if g.has_edge(i, j):
                continue
            f = net.run(i, j, best)
            if f < best:
                best, best_cut = f, net.separator()
                if best == 0:
                    return best_cut
        i += 1
    return best_cut


def vertex_connectivity(g: Graph) -> int:
    """Size of a minimum vertex cut; ``n - 1`` for complete graphs."""
    if g.n <= 1:
        return 0
    if _is_complete(g):
        return g.n - 1
    cut = _small_cut(g, g.min_degree() + 1)
    return g.min_degree() if cut is None else len(cut)


def is_k_connected(g: Graph, k: int, allow_small: bool = False) -> bool:
    """Whether ``g`` is k-connected; graphs on at most two vertices only
    count when ``allow_small`` is set."""
    if k <= 0:
        return True
    if g.n <= 2:
        return allow_small and g.n > k and (g.n < 2 or g.m == 1)
    if g.n <= k or g.min_degree() < k:
        return False
    return _small_cut(g, k) is None


def min_vertex_cut(g: Graph) -> Optional[set[int]]:
    if g.n <= 1 or _is_complete(g):
        return None
    return _small_cut(g, g.n)


def boundary_of(g: Graph, x: Iterable[int]) -> set[int]:
    xs = set(x)
    return {v for v in xs if any(w not in xs for w in g.adj[v])}


# --------------------------------------------------------------------------
# bounded-boundary highly connected subgraph


def bounded_boundary_subgraph(g: Graph, k: int, *, boundary_cap: Optional[float] = None,
                              min_size: Optional[float] = None,
                              check_hypothesis: bool = True) -> tuple[set[int], set[int]]:
    """A k-connected induced subgraph with more than ``min_size`` vertices
    (default 4k^2) whose boundary has at most ``boundary_cap`` (default 2k^2).

    Recursive separator splitting: while the candidate has a cut of size
    below k, keep the largest side together with the cut and charge the
    cut to the boundary budget.
    """
    if k < 1:
        raise InvalidInput("k must be positive")
    cap = 2 * k * k if boundary_cap is None else boundary_cap
    floor = 4 * k * k if min_size is None else min_size
    if check_hypothesis and g.min_degree() < 4 * k * k:
        raise HypothesisNotMet(f"minimum degree {g.min_degree()} < 4k^2 = {4 * k * k}",
                               stage="bounded_boundary_subgraph")
    current = set(g.vertices())
    charged = 0
    while True:
        if len(current) <= floor or len(current) < 3:
            raise NotFound(f"candidate shrank to {len(current)} vertices",
                           stage="bounded_boundary_subgraph",
                           details={"best": current, "charged": charged})
        sub = induced_subgraph(g, current)
        cut = _small_cut(sub.graph, k)
        if cut is None:
            if sub.graph.n <= k:
                raise NotFound("candidate too small to be k-connected",
                               stage="bounded_boundary_subgraph", details={"best": current})
            break
        cut_host = sub.host_set(cut)
        rest = components(sub.graph, set(sub.graph.vertices()) - cut)
        keep = max(rest, key=lambda c: (len(c), -min(c)))
        charged += len(cut_host)
        if charged > cap:
            raise NotFound(f"boundary budget {cap} exceeded",
                           stage="bounded_boundary_subgraph",
                           details={"best": current, "charged": charged})
        current = sub.host_set(keep) | cut_host
    bnd = boundary_of(g, current)
    sub = induced_subgraph(g, current)
    assert len(bnd) <= cap and len(current) > floor
    assert is_k_connected(sub.graph, k)
    return current, bnd


# --------------------------------------------------------------------------
# peeling


def peel_to_min_degree(g: Graph, threshold: float,
                       within: Optional[Iterable[int]] = None) -> tuple[set[int], list[int]]:
    """Delete vertices of residual degree below ``threshold`` until none remain.

    Among deletable vertices the lowest id goes first.  Returns the
    surviving core and the deletion order.
    """
    alive = set(g.vertices()) if within is None else set(within)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in alive}
    heap = [v for v in alive if deg[v] < threshold]
    heapq.heapify(heap)
    queued = set(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        alive.discard(v)
        order.append(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] < threshold and w not in queued:
                    queued.add(w)
                    heapq.heappush(heap, w)
    return alive, order


def max_core(g: Graph) -> set[int]:
    """The core of maximum minimum degree (the degeneracy-core)."""
    if g.n == 0:
        return set()
    k = degeneracy_ordering(g).degeneracy
    core, _ = peel_to_min_degree(g, k)
    return core


# --------------------------------------------------------------------------
# connected-good extraction


@dataclass
class PeelRound:
    h: set[int]
    s: set[int]
    d: list[int]


@dataclass
class PeelTrace:
    rounds: list[PeelRound] = field(default_factory=list)
    leftover: set[int] = field(default_factory=set)

    def to_text(self) -> str:
        def ids(xs):
            return " ".join(map(str, sorted(xs) if isinstance(xs, set) else xs))
        lines = [f"round {t} | H: {ids(r.h)} | S: {ids(r.s)} | D: {ids(r.d)}"
                 for t, r in enumerate(self.rounds, 1)]
        lines.append(f"leftover | {ids(self.leftover)}")
        return "\n".join(lines) + "\n"

    def accounting_holds(self, delta: int) -> bool:
        """|D^i| <= delta * |S^i| for every prefix of rounds."""
        d_total = s_total = 0
        for r in self.rounds:
            d_total += len(r.d)
            s_total += len(r.s)
            if d_total > delta * s_total:
                return False
        return True


@dataclass
class ConnectedGood:
    h: set[int]
    preserved: set[int]
    trace: PeelTrace
    round: int
    boundary: set[int]


def connected_good(g: Graph, b: Iterable[int], profile, d: int) -> ConnectedGood:
    """A highly connected induced subgraph keeping many ``b`` vertices at full degree.

    Rounds: extract a bounded-boundary k-connected piece H_t from the
    surviving graph, delete it, then peel vertices of low residual degree
    (D_t).  The piece with the most fully preserved ``b`` vertices wins.
    """
    b = set(b)
    k = math.ceil(profile.value("cg_connectivity", d))
    cap = profile.value("cg_boundary", d)
    peel = profile.value("cg_peel_degree", d)
    min_deg = profile.value("cg_min_degree", d)
    deg_cap = profile.value("cg_degree_cap", d)
    girth_floor = profile.length("cg_girth_floor")
    stage = "connected_good"
    if g.n == 0:
        raise HypothesisNotMet("empty graph", stage=stage)
    if g.min_degree() < min_deg:
        raise HypothesisNotMet(f"minimum degree {g.min_degree()} < {min_deg:.4g}", stage=stage)
    if g.max_degree() > deg_cap:
        raise HypothesisNotMet(f"maximum degree {g.max_degree()} > {deg_cap:.4g}", stage=stage)
    if len(b) < g.n / deg_cap:
        raise HypothesisNotMet(f"|B| = {len(b)} < n / {deg_cap:.4g}", stage=stage)
    if girth_floor and (gi := girth(g)) is not None and gi < girth_floor:
        raise HypothesisNotMet(f"girth {gi} < {girth_floor}", stage=stage)

    trace = PeelTrace()
    alive = set(g.vertices())
    while alive:
        sub = induced_subgraph(g, alive)
        try:
            h_sub, s_sub = bounded_boundary_subgraph(sub.graph, k, boundary_cap=cap,
                                                     min_size=4 * k * k, check_hypothesis=False)
        except NotFound:
            break
        h = sub.host_set(h_sub)
        s = sub.host_set(s_sub)
        alive -= h
        alive, order = peel_to_min_degree(g, peel, within=alive)
        trace.rounds.append(PeelRound(h, s, order))
    trace.leftover = alive

    best = None
    for t, r in enumerate(trace.rounds):
        keep = {x for x in b & r.h if all(w in r.h for w in g.adj[x])}
        if best is None or len(keep) > len(best[1]):
            best = (t, keep)
    if best is None:
        raise NotFound("no highly connected piece could be extracted", stage=stage,
                       details={"trace": trace})
    t, keep = best
    h = trace.rounds[t].h
    if len(keep) < len(h) / (2 * deg_cap) or not keep:
        raise NotFound(f"best piece preserves only {len(keep)} vertices of B", stage=stage,
                       details={"trace": trace})
    assert is_k_connected(induced_subgraph(g, h).graph, k)
    return ConnectedGood(h, keep, trace, t + 1, trace.rounds[t].s)


# --------------------------------------------------------------------------
# linkage


@dataclass
class Linkage:
    pairs: list[tuple[int, int]]
    paths: list[list[int]]
    strategy: str = ""

    def check(self, g: Graph, forbidden: Iterable[int] = ()) -> bool:
        forbidden = set(forbidden)
        used = set()
        for (x, y), p in zip(self.pairs, self.paths):
            if not p or p[0] != x or p[-1] != y:
                return False
            if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
                return False
            if used & set(p) or forbidden & set(p) or len(set(p)) != len(p):
                return False
            used |= set(p)
        return True


def _bfs_path(g: Graph, a: int, b: int, blocked: set[int]) -> Optional[list[int]]:
    if a == b:
        return [a]
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in parent or (w in blocked and w != b):
                continue
            parent[w] = u
            if w == b:
                path = [b]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(w)
    return None


def _sequential(g, pairs, forbidden, order):
    endpoints = {v for p in pairs for v in p}
    paths = [None] * len(pairs)
    used = set()
    for i in order:
        x, y = pairs[i]
        blocked = forbidden | used | (endpoints - {x, y})
        p = _bfs_path(g, x, y, blocked)
        if p is None:
            return None
        paths[i] = p
        used |= set(p)
    return paths


def _negotiated(g, pairs, forbidden, rounds=60):
    """Rip-up-and-reroute with congestion pricing on shared vertices."""
    endpoints = {v for p in pairs for v in p}
    history = {}
    paths = [None] * len(pairs)
    occupancy = {}
    pressure = 0.5
    for _ in range(rounds):
        for i, (x, y) in enumerate(pairs):
            if paths[i]:
                for v in paths[i]:
                    occupancy[v] -= 1
            blocked = forbidden | (endpoints - {x, y})
            dist = {x: 0.0}
            parent = {x: None}
            heap = [(0.0, x)]
            done = set()
            while heap:
                du, u = heapq.heappop(heap)
                if u in done:
                    continue
                done.add(u)
                if u == y:
                    break
                for w in g.adj[u]:
                    if w in blocked or w in done:
                        continue
                    cost = (1 + history.get(w, 0)) * (1 + pressure * occupancy.get(w, 0))
                    nd = du + cost
                    if nd < dist.get(w, math.inf) - 1e-12:
                        dist[w] = nd
                        parent[w] = u
                        heapq.heappush(heap, (nd, w))
            if y not in parent:
                return None
            p = [y]
            while parent[p[-1]] is not None:
                p.append(parent[p[-1]])
            paths[i] = p[::-1]
            for v in paths[i]:
                occupancy[v] = occupancy.get(v, 0) + 1
        over = [v for v, c in occupancy.items() if c > 1]
        if not over:
            return paths
        for v in over:
            history[v] = history.get(v, 0) + 1
        pressure *= 1.6
    return None


def _exhaustive(g, pairs, forbidden, budget):
    endpoints = {v for p in pairs for v in p}
    spent = [0]
    out = [None] * len(pairs)

    def route(k, used):
        if k == len(pairs):
            return True
        x, y = pairs[k]
        blocked = forbidden | used | (endpoints - {x, y})
        path = [x]
        on = {x}

        def grow(u):
            spent[0] += 1
            if spent[0] > budget:
                raise BudgetExhausted(f"linkage search exceeded {budget} nodes", stage="link_pairs")
            for w in g.adj[u]:
                if w == y:
                    out[k] = path + [y]
                    if route(k + 1, used | on | {y}):
                        return True
                    continue
                if w in blocked or w in on:
                    continue
                path.append(w)
                on.add(w)
                if grow(w):
                    return True
                path.pop()
                on.discard(w)
            return False

        return grow(x)

    return list(out) if route(0, set()) else None


def link_pairs(g: Graph, pairs: Sequence[tuple[int, int]], forbidden: Iterable[int] = (),
               *, exhaustive_limit: int = 40, budget: int = 200_000) -> Linkage:
    """Vertex-disjoint paths joining each pair, avoiding ``forbidden``.

    Shortest-path routing in several pair orders, then negotiated
    rip-up-and-reroute, then (for at most ``exhaustive_limit`` vertices)
    a budgeted exhaustive search.
    """
    pairs = [tuple(p) for p in pairs]
    forbidden = set(forbidden)
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends):
        raise InvalidInput("pair endpoints must be distinct")
    if forbidden & set(ends):
        raise InvalidInput("pair endpoints must avoid the forbidden set")
    for v in ends:
        g.check_vertex(v)

    def done(paths, how):
        link = Linkage(list(pairs), [list(p) for p in paths], how)
        assert link.check(g, forbidden)
        return link

    if not pairs:
        return done([], "empty")
    idx = list(range(len(pairs)))
    spans = [len(_bfs_path(g, x, y, forbidden) or ()) for x, y in pairs]
    orders = [idx, sorted(idx, key=lambda i: (spans[i], i)),
              sorted(idx, key=lambda i: (-spans[i], i))]
    orders += [idx[r:] + idx[:r] for r in range(1, len(idx))]
    seen = set()
    for order in orders:
        if tuple(order) in seen:
            continue
        seen.add(tuple(order))
        paths = _sequential(g, pairs, forbidden, order)
        if paths is not None:
            return done(paths, "sequential")
    paths = _negotiated(g, pairs, forbidden)
    if paths is not None:
        return done(paths, "negotiated")
    if g.n - len(forbidden) <= exhaustive_limit:
        paths = _exhaustive(g, pairs, forbidden, budget)
        if paths is not None:
            return done(paths, "exhaustive")
        raise NotFound("no linkage exists", stage="link_pairs", details={"exact": True})
    raise NotFound("heuristic routing failed", stage="link_pairs", details={"exact": False})
