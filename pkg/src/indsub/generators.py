"""Deterministic test graphs: named graphs, high-girth regular graphs and
planted instances built to satisfy each lemma's hypotheses at relaxed
constants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .connectivity import is_k_connected
from .errors import AttemptsExhausted, ConstructionFailed, InvalidInput, UnknownName
from .graph import (Graph, bfs_distances, degeneracy_ordering, girth, girth_at_least,
                    moore_floor)
from .probabilistic import RandomSource
from .profile import ConstantsProfile


# --------------------------------------------------------------------------
# named graphs


def _lcf(n: int, jumps: list[int]) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + jumps[i % len(jumps)]) % n) for i in range(n)]
    return Graph.from_edges(n, edges)


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(r: int, c: int) -> Graph:
    if r < 1 or c < 1:
        raise InvalidInput("grid dimensions must be positive")
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return Graph.from_edges(r * c, edges)


def subdivide(pattern: Graph, k: int) -> tuple[Graph, dict]:
    """k-subdivision: every edge becomes a path with k new inner vertices.

    Pattern vertices keep their ids; inner vertices follow edge order.
    Returns the graph and a map edge -> inner vertex tuple.
    """
    n = pattern.n
    edges = []
    inner = {}
    for u, v in pattern.edges():
        seq = list(range(n, n + k))
        n += k
        chain = [u] + seq + [v]
        edges.extend(zip(chain, chain[1:]))
        inner[(u, v)] = tuple(seq)
    return Graph.from_edges(n, edges), inner


def gen_named(name: str) -> Graph:
    """petersen, heawood, mcgee, k4, k5, k33, cycle:N, grid:RxC."""
    fixed = {
        "petersen": _petersen,
        "heawood": lambda: _lcf(14, [5, -5]),
        "mcgee": lambda: _lcf(24, [12, 7, -7]),
        "k4": lambda: complete_graph(4),
        "k5": lambda: complete_graph(5),
        "k33": lambda: Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]),
    }
    if name in fixed:
        return fixed[name]()
    head, _, arg = name.partition(":")
    try:
        if head == "cycle" and arg:
            return cycle_graph(int(arg))
        if head == "grid" and arg:
            r, c = arg.lower().split("x")
            return grid_graph(int(r), int(c))
    except ValueError:
        raise UnknownName(f"malformed graph name {name!r}") from None
    raise UnknownName(f"unknown graph name {name!r}")


# --------------------------------------------------------------------------
# random regular graphs of large girth


def gen_regular_high_girth(n: int, d: int, g_min: int, rng: RandomSource,
                           max_attempts: int = 50, swaps_per_attempt: Optional[int] = None) -> Graph:
    """d-regular graph with girth >= g_min.

    Pairing model, then repair: an offending edge (loop, parallel edge or
    edge on a short cycle) is swapped with a random other edge whenever
    both new edges close no cycle shorter than g_min.
    """
    if n * d % 2 or d < 1 or n < d + 1:
        raise InvalidInput("need n*d even and n > d")
    if d >= 3 and g_min >= 3 and n < moore_floor(d, g_min).moore:
        raise InvalidInput(f"n={n} is below the Moore bound {moore_floor(d, g_min).moore}")
    if d == 2 and n < g_min:
        raise InvalidInput("a cycle on n vertices has girth n")
    budget = swaps_per_attempt or 200 * n * d
    for attempt in range(max_attempts):
        r = rng.child("pairing", attempt)
        g = _pairing_attempt(n, d, g_min, r, budget)
        if g is not None:
            assert all(x == d for x in g.degrees) and girth_at_least(g, g_min)
            return g
    raise AttemptsExhausted(f"no {d}-regular graph of girth >= {g_min} on {n} vertices "
                            f"after {max_attempts} attempts", stage="gen_regular_high_girth")


def _pairing_attempt(n, d, g_min, r, budget):
    points = r.permutation([v for v in range(n) for _ in range(d)])
    edges = [tuple(points[i:i + 2]) for i in range(0, len(points), 2)]
    adj = [dict() for _ in range(n)]  # neighbour -> multiplicity

    def add(u, v):
        adj[u][v] = adj[u].get(v, 0) + 1
        adj[v][u] = adj[v].get(u, 0) + 1

    def remove(u, v):
        for a, b in ((u, v), (v, u)):
            adj[a][b] -= 1
            if not adj[a][b]:
                del adj[a][b]

    def close(u, v, limit):
        """Whether v is within ``limit`` steps of u."""
        if u == v:
            return True
        seen = {u}
        frontier = [u]
        for _ in range(limit):
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    if w == v:
                        return True
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return False

    def bad(i):
        u, v = edges[i]
        if u == v or adj[u][v] > 1:
            return True
        remove(u, v)
        short = close(u, v, g_min - 2)
        add(u, v)
        return short

    for u, v in edges:
        add(u, v)
    spent = 0
    m = len(edges)
    while True:
        offenders = [i for i in range(m) if bad(i)]
        if not offenders:
            return Graph.from_edges(n, edges)
        progress = False
        for i in offenders:
            if spent >= budget:
                return None
            if not bad(i):
                continue
            for _ in range(20):
                spent += 1
                j = int(r.integers(0, m))
                if j == i:
                    continue
                (a, b), (c, e) = edges[i], edges[j]
                if r.uniform(1)[0] < 0.5:
                    c, e = e, c
                if a == c or b == e:  # new edges must not be loops
                    continue
                remove(a, b)
                remove(c, e)
                ok = (c not in adj[a] and e not in adj[b]
                      and not close(a, c, g_min - 2))
                if ok:
                    add(a, c)
                    ok = not close(b, e, g_min - 2)
                    remove(a, c)
                if ok:
                    add(a, c)
                    add(b, e)
                    edges[i], edges[j] = (a, c), (b, e)
                    progress = True
                    break
                add(a, b)
                add(c, e)
        if not progress and spent >= budget:
            return None


# --------------------------------------------------------------------------
# planted instances


@dataclass
class PlantedInstance:
    kind: str
    graph: Graph
    roles: dict[str, frozenset]
    manifest: list[tuple[str, bool]]
    params: dict = field(default_factory=dict)

    def manifest_text(self) -> str:
        return "".join(f"{name}: {'pass' if ok else 'fail'}\n" for name, ok in self.manifest)


class _Builder:
    """Growing simple graph that can answer bounded-distance queries."""

    def __init__(self):
        self.adj: list[set[int]] = []

    def add_vertex(self) -> int:
        self.adj.append(set())
        return len(self.adj) - 1

    def add_edge(self, u, v):
        if u == v or v in self.adj[u]:
            raise ConstructionFailed(f"bad edge ({u}, {v})")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def within(self, u, radius) -> set[int]:
        seen = {u}
        frontier = [u]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for w in self.adj[x]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def graph(self) -> Graph:
        return Graph(tuple(tuple(sorted(s)) for s in self.adj))


def _finish(kind, g, roles, checks, params) -> PlantedInstance:
    manifest = [(name, bool(ok)) for name, ok in checks]
    inst = PlantedInstance(kind, g, {k: frozenset(v) for k, v in roles.items()}, manifest, params)
    failed = [name for name, ok in manifest if not ok]
    if failed:
        raise ConstructionFailed(f"{kind} instance fails its own checks: {', '.join(failed)}",
                                 stage="gen_planted", details={"instance": inst})
    return inst


def _count_nbrs(g: Graph, v: int, s) -> int:
    return sum(1 for w in g.adj[v] if w in s)


def _planted_unbalanced(p, rng, prof):
    d = int(p.get("d", 3))
    m = int(p.get("m", 44))
    ratio = float(p.get("ratio", 20))
    periphery = int(p.get("periphery", m))
    need = math.ceil(ratio * m)
    pairs = list(itertools.combinations(range(m), 2))
    if need > len(pairs):
        raise ConstructionFailed(f"ratio {ratio} needs {need} pattern edges but K_{m} has {len(pairs)}",
                                 stage="gen_planted")
    chosen = sorted(rng.child("pattern").permutation(pairs)[:need])
    edges = []
    a = []
    for k, (u, v) in enumerate(chosen):
        x = m + k
        a.append(x)
        edges += [(u, x), (x, v)]
    n = m + len(a)
    hosts = rng.child("periphery").integers(0, len(a), size=periphery) if periphery else []
    for k, h in enumerate(hosts):
        edges.append((a[int(h)], n + k))
    n += periphery
    g = Graph.from_edges(n, edges)
    b, a = set(range(m)), set(a)
    checks = [
        ("degeneracy <= 2d", degeneracy_ordering(g).degeneracy <= 2 * d),
        ("girth >= 5", girth_at_least(g, prof.length("girth_unbalanced"))),
        (f"|A| >= {ratio:g}|B|", len(a) >= ratio * len(b)),
        ("|A| >= profile ratio |B|", len(a) >= prof.value("unbalanced_ratio", d) * len(b)),
        ("every A vertex has >= 2 B-neighbours", all(_count_nbrs(g, x, b) >= 2 for x in a)),
    ]
    return g, {"a": a, "b": b}, checks


def _planted_largesub(p, rng, prof):
    d = int(p.get("d", 3))
    m = int(p.get("m", 49 if p.get("early") else 40))
    if p.get("early"):
        # 1-subdivided clique: every U-vertex is a hub with many Z1 neighbours
        g, inner = subdivide(complete_graph(m), 1)
        x = {v for seq in inner.values() for v in seq}
    else:
        g, inner = subdivide(complete_graph(m), 3)
        x = {v for seq in inner.values() for v in (seq[0], seq[2])}
    n = g.n
    checks = [
        ("degeneracy <= 2d", degeneracy_ordering(g).degeneracy <= 2 * d),
        ("girth >= 5", girth_at_least(g, prof.length("girth_largesub"))),
        ("|X| >= n/2", 2 * len(x) >= n),
        ("X degree floor", all(g.degree(v) >= prof.value("largesub_x_degree", d) for v in x)),
    ]
    return g, {"x": x, "hubs": set(range(m))}, checks


def _planted_connectedgood(p, rng, prof):
    d = int(p.get("d", 3))
    size = int(p.get("block", 30))
    blocks = int(p.get("periphery", 3))
    frac = float(p.get("b_fraction", 0.5))
    core = gen_regular_high_girth(size, 4, 3, rng.child("block"))
    if not is_k_connected(core, 2):
        raise ConstructionFailed("dense block is not 2-connected", stage="gen_planted")
    edges = list(core.edges())
    n = size
    shapes = rng.child("shapes").integers(0, 3, size=blocks)
    anchors = rng.child("anchors").permutation(list(range(size)))
    for k, shape in enumerate(shapes):
        piece = [complete_graph(4), _petersen(), gen_named("k33")][int(shape)]
        anchor = anchors[k % size]
        if k % 2 == 0:
            ids = list(range(n, n + piece.n))
            edges.append((anchor, ids[0]))  # joined by a bridge
        else:
            ids = [anchor] + list(range(n, n + piece.n - 1))  # shares a cut vertex
        n += len(set(ids) - {anchor})
        edges += [(ids[u], ids[v]) for u, v in piece.edges()]
    g = Graph.from_edges(n, edges)
    picks = rng.child("b").uniform(size)
    b = {v for v in range(size) if picks[v] < frac}
    deg_cap = prof.value("cg_degree_cap", d)
    checks = [
        ("min degree >= profile floor", g.min_degree() >= prof.value("cg_min_degree", d)),
        ("max degree <= profile cap", g.max_degree() <= deg_cap),
        ("|B| >= n / cap", len(b) >= g.n / deg_cap),
        ("block is 2-connected", is_k_connected(core, 2)),
    ]
    return g, {"b": b, "block": set(range(size))}, checks


def _planted_case1(p, rng, prof):
    d = int(p.get("d", 3))
    m = int(p.get("m", 50))
    g, inner = subdivide(complete_graph(m), 3)
    hubs = set(range(m))
    xs = {v for seq in inner.values() for v in (seq[0], seq[2])}
    ys = {seq[1] for seq in inner.values()}
    checks = [
        ("min degree >= theorem floor", g.min_degree() >= prof.value("theorem_min_degree", d)),
        ("girth >= theorem floor", girth_at_least(g, prof.length("girth_theorem"))),
        ("hubs reach B degree", all(g.degree(h) >= prof.value("case1_b_degree", d) for h in hubs)),
        ("|A'| >= n/2", 2 * len(xs) >= g.n),
    ]
    return g, {"b": hubs, "x": xs, "y": ys}, checks


def _skeleton(p, rng, prof):
    """Ball-and-path skeleton: centers with depth-2 trees whose leaves are
    joined pairwise (occasionally three-way) through middle vertices."""
    d = int(p.get("d", 3))
    count = int(p.get("centers", 150))
    leaves = int(p.get("leaves", 4))
    junction = float(p.get("junction", 0.05))
    gmin = int(p.get("girth", prof.length("girth_maxdegree")))
    bld = _Builder()
    centers = [bld.add_vertex() for _ in range(count)]
    owner = {}
    zs, leaf_list = [], []
    for c in centers:
        for _ in range(d):
            z = bld.add_vertex()
            bld.add_edge(c, z)
            zs.append(z)
            for _ in range(leaves):
                leaf = bld.add_vertex()
                bld.add_edge(z, leaf)
                owner[leaf] = c
                leaf_list.append(leaf)
    order = rng.child("leaves").permutation(leaf_list)
    free = list(order)
    free_set = set(free)
    draws = rng.child("junction").uniform(len(order))
    middles, junctions = [], []
    for k, leaf in enumerate(order):
        if leaf not in free_set:
            continue
        free_set.discard(leaf)
        near = bld.within(leaf, gmin - 3)
        mate = next((x for x in free if x in free_set and x not in near
                     and owner[x] != owner[leaf]), None)
        if mate is None:
            free_set.add(leaf)
            continue
        free_set.discard(mate)
        mid = bld.add_vertex()
        bld.add_edge(leaf, mid)
        bld.add_edge(mid, mate)
        middles.append(mid)
        if draws[k] < junction:
            near = bld.within(mid, gmin - 2)
            third = next((x for x in free if x in free_set and x not in near), None)
            if third is not None:
                free_set.discard(third)
                bld.add_edge(mid, third)
                junctions.append(mid)
        free = [x for x in free if x in free_set] if k % 64 == 0 else free
    # leftovers (junction parity, crowded tails) hang on a distant middle vertex
    plain = [m for m in middles if m not in set(junctions)]
    for leaf in sorted(free_set):
        near = bld.within(leaf, gmin - 2)
        mid = next((m for m in plain if m not in near), None)
        if mid is None:
            continue
        plain.remove(mid)
        bld.add_edge(leaf, mid)
        junctions.append(mid)
        free_set.discard(leaf)
    if free_set:
        raise ConstructionFailed(f"{len(free_set)} leaves could not be joined under the girth floor",
                                 stage="gen_planted")
    return bld, centers, zs, middles, junctions, gmin


def _planted_maxdegree(p, rng, prof, hubs: int = 0):
    d = int(p.get("d", 3))
    bld, centers, zs, middles, junctions, gmin = _skeleton(p, rng, prof)
    hub_deg = int(p.get("hub_degree", math.ceil(prof.value("case1_b_degree", d))))
    hub_set, spokes = set(), set()
    if hubs:
        if hubs * hub_deg > len(centers):
            raise ConstructionFailed("not enough centers to hang the hubs on", stage="gen_planted")
        targets = rng.child("hubs").permutation(centers)
        for h in range(hubs):
            hub = bld.add_vertex()
            hub_set.add(hub)
            for c in targets[h * hub_deg:(h + 1) * hub_deg]:
                s1, s2 = bld.add_vertex(), bld.add_vertex()
                bld.add_edge(hub, s1)
                bld.add_edge(s1, s2)
                bld.add_edge(s2, c)
                spokes.add(s1)
    g = bld.graph()
    u = {v for v in range(g.n) if g.degree(v) >= prof.value("maxdeg_u_degree", d)} - hub_set
    gi = girth(g)
    checks = [("girth >= floor", gi is None or gi >= gmin)]
    if hubs:
        checks += [
            ("min degree >= theorem floor", g.min_degree() >= prof.value("theorem_min_degree", d)),
            ("hubs reach B degree", all(g.degree(h) >= prof.value("case1_b_degree", d) for h in hub_set)),
            ("|A'| < n/2", 2 * len(spokes) < g.n),
        ]
    else:
        checks += [
            ("max degree <= profile cap", g.max_degree() <= prof.value("maxdeg_delta_cap", d)),
            ("min degree >= profile floor", g.min_degree() >= prof.value("maxdeg_min_degree", d)),
            ("|U| >= profile fraction n", len(u) >= prof.value("maxdeg_u_fraction", d) * g.n),
        ]
    roles = {"u": u, "centers": set(centers), "z": set(zs), "middles": set(middles),
             "junctions": set(junctions)}
    if hubs:
        roles["b"] = hub_set
        roles["spokes"] = spokes
    return g, roles, checks


def _planted_adense(p, rng, prof):
    """Hubs H; A = one vertex per hub pair; connectors join A vertices whose
    hub pairs are disjoint; each hub also carries pentagon whiskers so its
    degree clears that of the A vertices.  Deleting the hubs and peeling
    below 3 wipes out everything, which is the dense escape of the second
    case."""
    h = int(p.get("hubs", 10))
    whiskers = int(p.get("whiskers", 11))
    hub_pairs = list(itertools.combinations(range(h), 2))
    edges = []
    a_ids = {}
    for k, (i, j) in enumerate(hub_pairs):
        a = h + k
        a_ids[(i, j)] = a
        edges += [(i, a), (j, a)]
    n = h + len(hub_pairs)
    conn = []
    for (p1, a1), (p2, a2) in itertools.combinations(sorted(a_ids.items()), 2):
        if not set(p1) & set(p2):
            edges += [(a1, n), (n, a2)]
            conn.append(n)
            n += 1
    for hub in range(h):
        for _ in range(whiskers):
            ring = [hub, n, n + 1, n + 2, n + 3]
            edges += list(zip(ring, ring[1:] + ring[:1]))
            n += 4
    g = Graph.from_edges(n, edges)
    a_deg = max(g.degree(a) for a in a_ids.values())
    checks = [("girth >= 5", girth_at_least(g, 5)),
              ("hub degree exceeds A degree", all(g.degree(x) > a_deg for x in range(h))),
              ("connectors outnumber A by the unbalanced ratio",
               len(conn) >= prof.value("unbalanced_ratio", 3) * len(a_ids))]
    return g, {"b": set(range(h)), "a": set(a_ids.values()), "connectors": set(conn)}, checks


_KINDS = {
    "unbalanced": _planted_unbalanced,
    "largesub": _planted_largesub,
    "connectedgood": _planted_connectedgood,
    "case1": _planted_case1,
    "maxdegree": lambda p, r, prof: _planted_maxdegree(p, r, prof, hubs=0),
    "case2": lambda p, r, prof: _planted_maxdegree(p, r, prof, hubs=int(p.get("hubs", 1))),
    "adense": _planted_adense,
}


def gen_planted(kind: str, params: Optional[dict], rng: RandomSource,
                profile: Optional[ConstantsProfile] = None) -> PlantedInstance:
    """Planted instance of ``kind`` with role labels and a verified manifest."""
    if kind not in _KINDS:
        raise UnknownName(f"unknown planted kind {kind!r}; choose from {', '.join(sorted(_KINDS))}")
    params = dict(params or {})
    prof = profile or ConstantsProfile.relaxed()
    g, roles, checks = _KINDS[kind](params, rng.child(kind), prof)
    return _finish(kind, g, roles, checks, params)
