"""Ball decompositions, the auxiliary path structure on ball centers,
its sparsification, branchable vertices and the final assembly."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..certify import SubdivisionCertificate, induced_path_reduce, verify_induced_subdivision
from ..connectivity import link_pairs
from ..errors import HypothesisNotMet, InvalidInput, NotFound, StructureViolation
from ..graph import Graph, bfs_distances, girth, induced_subgraph, shortest_path
from ..probabilistic import RandomSource, bernoulli_subset


# --------------------------------------------------------------------------
# ball decomposition


@dataclass
class BallDecomposition:
    centers: tuple[int, ...]
    u_prime: tuple[int, ...]
    w: tuple[int, ...]
    ball_of: tuple[int, ...]  # vertex -> center
    tree_edges: dict[int, list[tuple[int, int]]]
    depth: tuple[int, ...]  # vertex -> distance to its center

    def ball(self, c: int) -> set[int]:
        return {v for v, x in enumerate(self.ball_of) if x == c}

    def balls(self) -> dict[int, set[int]]:
        out = {c: set() for c in self.centers}
        for v, c in enumerate(self.ball_of):
            out[c].add(v)
        return out


def ball_decomposition(g: Graph, u: Iterable[int], profile,
                       rng: Optional[RandomSource] = None) -> BallDecomposition:
    """Separated centers from ``u`` (lowest id first), then from all vertices;
    every vertex joins the ball of its nearest center, ties to the lower id.

    ``rng`` is accepted for interface symmetry; the construction is
    deterministic.
    """
    sep = profile.length("separation")
    gi = girth(g)
    if gi is not None and gi <= 2 * sep + 1:
        raise HypothesisNotMet(f"girth {gi} <= 2 * {sep} + 1; balls need not be trees",
                               stage="ball_decomposition")
    blocked: set[int] = set()

    def pick(pool):
        chosen = []
        for v in sorted(pool):
            if v not in blocked:
                chosen.append(v)
                blocked.update(bfs_distances(g, v, limit=sep))
        return chosen

    u_prime = pick(set(u))
    w = pick(range(g.n))
    centers = sorted(u_prime + w)
    label = [-1] * g.n
    depth = [-1] * g.n
    parent = {}
    for c in centers:
        label[c] = c
        depth[c] = 0
    frontier = centers
    level = 0
    while frontier:
        level += 1
        offers: dict[int, tuple[int, int]] = {}
        for x in frontier:
            for y in g.adj[x]:
                if label[y] == -1:
                    cand = (label[x], x)
                    if y not in offers or cand < offers[y]:
                        offers[y] = cand
        for y, (c, x) in offers.items():
            label[y] = c
            depth[y] = level
            parent[y] = x
        frontier = sorted(offers)
    tree_edges = {c: [] for c in centers}
    for y, x in sorted(parent.items()):
        tree_edges[label[y]].append((min(x, y), max(x, y)))
    bd = BallDecomposition(tuple(centers), tuple(u_prime), tuple(w), tuple(label),
                           tree_edges, tuple(depth))
    problems = decomposition_violations(g, bd, profile)
    if problems:
        raise StructureViolation("; ".join(problems), stage="ball_decomposition")
    return bd


def decomposition_violations(g: Graph, bd: BallDecomposition, profile) -> list[str]:
    sep = profile.length("separation")
    radius = profile.length("ball_radius")
    bad = []
    cset = set(bd.centers)
    for c in bd.centers:
        near = bfs_distances(g, c, limit=sep)
        if cset & set(near) - {c}:
            bad.append(f"center {c} within {sep} of another center")
            break
    if -1 in bd.ball_of:
        bad.append("some vertex lies in no ball")
    balls = bd.balls()
    for c, members in balls.items():
        edges = sum(1 for v in members for w in g.adj[v] if w in members) // 2
        if edges != len(members) - 1:
            bad.append(f"ball of {c} does not induce a tree")
            break
        dist = bfs_distances(g, c, within=members)
        if len(dist) != len(members) or max(dist.values()) > sep:
            bad.append(f"ball of {c} is disconnected or too deep")
            break
        if not set(bfs_distances(g, c, limit=radius)) <= members:
            bad.append(f"core ball of {c} leaks out of its ball")
            break
    return bad


# --------------------------------------------------------------------------
# auxiliary graph on centers


@dataclass
class HStar:
    centers: tuple[int, ...]
    graph: Graph  # on indices into centers
    paths: dict[tuple[int, int], tuple[int, ...]]  # (i, j), i < j -> host path from centers[i]
    f: dict[tuple[int, int], frozenset]  # (i, j) -> indices of centers whose ball the path touches


def build_structure(g: Graph, bd: BallDecomposition, profile) -> HStar:
    cap = profile.length("hstar_path_cap")
    index = {c: i for i, c in enumerate(bd.centers)}
    balls = bd.balls()
    pairs = set()
    for a, b in g.edges():
        x, y = bd.ball_of[a], bd.ball_of[b]
        if x != y:
            pairs.add((min(x, y), max(x, y)))
    paths, f = {}, {}
    for x, y in sorted(pairs):
        path = shortest_path(g, x, y, within=balls[x] | balls[y])
        if path is None or len(path) - 1 > cap:
            continue
        key = (index[x], index[y])
        paths[key] = tuple(path)
        touch = {index[bd.ball_of[v]] for v in path}
        touch.update(index[bd.ball_of[w]] for v in path for w in g.adj[v])
        f[key] = frozenset(touch)
    graph = Graph.from_edges(len(bd.centers), paths)
    return HStar(bd.centers, graph, paths, f)


# --------------------------------------------------------------------------
# path structures


@dataclass
class PathStructure:
    s: tuple[int, ...]  # host ids of the structure vertices
    h: Graph  # on indices into s
    path_of: dict[tuple[int, int], tuple[int, ...]]  # (i, j), i < j -> host path from s[i] to s[j]
    f_adjacency: dict[tuple[int, int], frozenset] = field(default_factory=dict)

    def path(self, i: int, j: int) -> tuple[int, ...]:
        """Host path from s[i] to s[j]."""
        if i < j:
            return self.path_of[(i, j)]
        return tuple(reversed(self.path_of[(j, i)]))

    def restrict(self, keep: Iterable[int]) -> "PathStructure":
        """Sub-structure induced on the given indices (re-indexed)."""
        keep = sorted(set(keep))
        index = {v: k for k, v in enumerate(keep)}
        paths, f = {}, {}
        for (i, j), p in self.path_of.items():
            if i in index and j in index:
                paths[(index[i], index[j])] = p
                if (i, j) in self.f_adjacency:
                    f[(index[i], index[j])] = self.f_adjacency[(i, j)]
        return PathStructure(tuple(self.s[v] for v in keep),
                             Graph.from_edges(len(keep), paths), paths, f)


def structure_violations(ps: PathStructure, g: Graph, cap: int) -> list[str]:
    """Path-shape and pairwise disjointness checks."""
    bad = []
    for (i, j), p in ps.path_of.items():
        if p[0] != ps.s[i] or p[-1] != ps.s[j]:
            bad.append(f"path of ({i}, {j}) has wrong endpoints")
        if len(p) - 1 > cap:
            bad.append(f"path of ({i}, {j}) longer than {cap}")
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            bad.append(f"path of ({i}, {j}) uses a non-edge")
        pos = {v: k for k, v in enumerate(p)}
        if len(pos) != len(p):
            bad.append(f"path of ({i}, {j}) repeats a vertex")
        for k, v in enumerate(p):
            if any(w in pos and abs(pos[w] - k) > 1 for w in g.adj[v]):
                bad.append(f"path of ({i}, {j}) has a chord")
                break
    owners: dict[int, list[tuple[int, int]]] = {}
    for e, p in ps.path_of.items():
        for v in p:
            owners.setdefault(v, []).append(e)
    for v, es in owners.items():
        near = [v] + [w for w in g.adj[v] if w in owners]
        for w in near:
            for e1 in es:
                for e2 in owners[w]:
                    if e1 < e2 and not set(e1) & set(e2):
                        bad.append(f"paths of disjoint edges {e1} and {e2} meet at {v}-{w}")
                        return bad
    return bad


def sparsify_structure(hs: HStar, g: Graph, profile, rng: Optional[RandomSource] = None, *,
                       keep: Optional[Sequence[bool]] = None, d: int = 3) -> PathStructure:
    """Keep each center with the profile probability (or per ``keep``); an
    auxiliary edge survives when its F-neighbourhood meets the kept set in
    exactly its two endpoints."""
    if keep is None:
        if rng is None:
            raise InvalidInput("sparsify_structure needs an rng or an explicit keep vector")
        p = profile.prob("sparsify_p", d)
        chosen = bernoulli_subset(range(len(hs.centers)), p, rng)
    else:
        chosen = {i for i, k in enumerate(keep) if k}
    s = sorted(chosen)
    index = {v: k for k, v in enumerate(s)}
    paths, f = {}, {}
    for (i, j), p in hs.paths.items():
        if i in chosen and j in chosen and hs.f[(i, j)] & chosen == {i, j}:
            paths[(index[i], index[j])] = p
            f[(index[i], index[j])] = frozenset(hs.centers[k] for k in hs.f[(i, j)])
    ps = PathStructure(tuple(hs.centers[i] for i in s), Graph.from_edges(len(s), paths), paths, f)
    problems = structure_violations(ps, g, profile.length("structure_path_cap"))
    if problems:
        raise StructureViolation("; ".join(problems[:3]), stage="sparsify_structure")
    return ps


# --------------------------------------------------------------------------
# branchable vertices


def _compatible(g: Graph, p: Sequence[int], q: Sequence[int]) -> bool:
    """Whether two paths out of the same vertex are disjoint and edge-free
    apart from that vertex."""
    a, b = set(p[1:]), set(q[1:])
    if a & b:
        return False
    return not any(w in b for v in a for w in g.adj[v])


def branchable_set(ps: PathStructure, g: Graph, d: int) -> dict[int, tuple[int, ...]]:
    """Branchable structure vertices (indices) with witness neighbour lists."""
    out = {}
    for v in range(ps.h.n):
        nbrs = list(ps.h.adj[v])
        if len(nbrs) < d:
            continue
        paths = {u: ps.path(v, u) for u in nbrs}
        ok = {u: {w for w in nbrs if w != u and _compatible(g, paths[u], paths[w])} for u in nbrs}
        found = _clique(nbrs, ok, d)
        if found is not None:
            out[v] = tuple(found)
    return out


def _clique(items, ok, size):
    def grow(chosen, cands):
        if len(chosen) == size:
            return chosen
        for k, u in enumerate(cands):
            got = grow(chosen + [u], [w for w in cands[k + 1:] if w in ok[u]])
            if got is not None:
                return got
        return None

    return grow([], list(items))


def witness_is_star(ps: PathStructure, g: Graph, v: int, witnesses: Sequence[int]) -> bool:
    """Direct check: the union of the witness paths induces a subdivided star
    centred at s[v] whose leaves are the witnesses."""
    paths = [ps.path(v, u) for u in witnesses]
    verts = set().union(*map(set, paths))
    sub = induced_subgraph(g, verts)
    hg = sub.graph
    centre = sub.to_sub[ps.s[v]]
    leaves = {sub.to_sub[ps.s[u]] for u in witnesses}
    if hg.m != hg.n - 1 or len(bfs_distances(hg, centre)) != hg.n:
        return False
    if hg.degree(centre) != len(witnesses):
        return False
    for x in range(hg.n):
        if x == centre:
            continue
        want = 1 if x in leaves else 2
        if hg.degree(x) != want:
            return False
    return True


# --------------------------------------------------------------------------
# assembly


def partner_slot(i: int, j: int) -> int:
    """Witness index branch i uses towards branch j."""
    return j - 1 if j > i else j


def assemble_from_structure(ps: PathStructure, g: Graph,
                            branch: Sequence[tuple[int, Sequence[int]]], profile, *,
                            forbid_distance: bool = True) -> SubdivisionCertificate:
    """Join witness endpoints pairwise in H minus the branch vertices, expand
    each auxiliary path into host paths and shorten to induced paths."""
    t = len(branch)
    sep = profile.length("branch_separation")
    verts = [v for v, _ in branch]
    if forbid_distance:
        for a, b in itertools.combinations(verts, 2):
            dist = bfs_distances(ps.h, a, limit=sep - 1)
            if b in dist:
                raise HypothesisNotMet(f"branch vertices {ps.s[a]} and {ps.s[b]} are at "
                                       f"structure distance {dist[b]} < {sep}",
                                       stage="assemble_from_structure")
    for v, wit in branch:
        if len(wit) < t - 1:
            raise InvalidInput(f"branch vertex {ps.s[v]} has only {len(wit)} witnesses")
    keys = list(itertools.combinations(range(t), 2))
    pairs = [(branch[i][1][partner_slot(i, j)], branch[j][1][partner_slot(j, i)]) for i, j in keys]
    link = link_pairs(ps.h, pairs, forbidden=set(verts))
    paths = {}
    for (i, j), q in zip(keys, link.paths):
        vi, vj = verts[i], verts[j]
        chain = [vi] + list(q) + [vj]
        pool = set()
        for a, b in zip(chain, chain[1:]):
            pool.update(ps.path(a, b))
        paths[(i, j)] = tuple(induced_path_reduce(g, pool, ps.s[vi], ps.s[vj]))
    cert = SubdivisionCertificate.build(tuple(ps.s[v] for v in verts), paths)
    report = verify_induced_subdivision(g, cert)
    if not report.valid_induced:
        raise StructureViolation(f"assembled certificate fails: {report.violations[:3]}",
                                 stage="assemble_from_structure")
    return cert
