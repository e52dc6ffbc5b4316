"""Plain (not necessarily induced) clique subdivisions: a dense highly
connected core, reserved stubs at the branch vertices, then disjoint routing."""

from __future__ import annotations

import itertools
import math
from typing import Optional

from .certify import SubdivisionCertificate, brute_force_subdivision, verify_subdivision
from .connectivity import _small_cut, link_pairs, peel_to_min_degree, vertex_connectivity
from .errors import BudgetExhausted, HypothesisNotMet, InvalidInput, NotFound
from .graph import Graph, components, degeneracy_ordering, induced_subgraph


def dense_core(g: Graph, max_candidates: int = 200) -> set[int]:
    """Vertex set inducing connectivity at least ceil(avg_degree / 4).

    Cores are tried from the deepest level outwards; a candidate that is
    not connected enough is split along a minimum separator and each side
    (with the separator) is peeled and queued again.
    """
    if g.n == 0:
        raise NotFound("empty graph", stage="dense_core")
    k = max(1, math.ceil(g.average_degree() / 4))
    best = (-1, set())
    seen = set()
    top = degeneracy_ordering(g).degeneracy
    queue = []
    for level in range(top, k - 1, -1):
        core, _ = peel_to_min_degree(g, level)
        queue.extend(sorted(components(g, core), key=lambda c: (-len(c), min(c))))
    tried = 0
    while queue and tried < max_candidates:
        cand = queue.pop(0)
        key = frozenset(cand)
        if key in seen or len(cand) <= k:
            continue
        seen.add(key)
        tried += 1
        sub = induced_subgraph(g, cand)
        kappa = vertex_connectivity(sub.graph)
        if kappa > best[0]:
            best = (kappa, set(cand))
        if kappa >= k:
            return set(cand)
        cut = _small_cut(sub.graph, k)
        if cut is None:
            continue
        for comp in components(sub.graph, set(sub.graph.vertices()) - cut):
            piece = sub.host_set(comp | cut)
            core, _ = peel_to_min_degree(g, k, within=piece)
            queue.extend(components(g, core))
    raise NotFound(f"no subgraph with connectivity >= {k}; best {best[0]}", stage="dense_core",
                   details={"best": best[1], "connectivity": best[0]})


def _reserve_stubs(g: Graph, branch: tuple[int, ...], blocked: set[int]):
    """Pick for each non-adjacent branch pair (i, j) a private neighbour of
    branch[i] towards j; returns {(i, j): stub} or None."""
    taken = set(blocked)
    stubs = {}
    for i, bi in enumerate(branch):
        free = [w for w in g.adj[bi] if w not in taken]
        need = [j for j, bj in enumerate(branch) if j != i and not g.has_edge(bi, bj)]
        if len(free) < len(need):
            return None
        # nearest free neighbours of the partner first would be nicer; id order keeps it simple
        for j, w in zip(need, free):
            stubs[(i, j)] = w
            taken.add(w)
    return stubs


def _route(g: Graph, branch: tuple[int, ...]) -> Optional[SubdivisionCertificate]:
    bset = set(branch)
    stubs = _reserve_stubs(g, branch, bset)
    if stubs is None:
        return None
    keys = [(i, j) for i, j in itertools.combinations(range(len(branch)), 2)
            if not g.has_edge(branch[i], branch[j])]
    pairs = [(stubs[(i, j)], stubs[(j, i)]) for i, j in keys]
    try:
        link = link_pairs(g, pairs, forbidden=bset, exhaustive_limit=0)
    except NotFound:
        return None
    paths = {}
    for i, j in itertools.combinations(range(len(branch)), 2):
        if g.has_edge(branch[i], branch[j]):
            paths[(i, j)] = (branch[i], branch[j])
    for (i, j), p in zip(keys, link.paths):
        paths[(i, j)] = (branch[i], *p, branch[j])
    cert = SubdivisionCertificate.build(branch, paths)
    return cert if verify_subdivision(g, cert).valid_plain else None


def _branch_candidates(g: Graph, verts: set[int], size: int, limit: int):
    ranked = sorted((v for v in verts if g.degree(v) >= size - 1),
                    key=lambda v: (-g.degree(v), v))
    if len(ranked) < size:
        return
    yield tuple(ranked[:size])
    count = 1
    # swap one of the chosen vertices for a runner-up
    for out in range(size - 1, -1, -1):
        for extra in ranked[size:size + 4]:
            if count >= limit:
                return
            pick = ranked[:size]
            pick = tuple(pick[:out] + pick[out + 1:] + [extra])
            count += 1
            yield pick


def find_subdivision(g: Graph, t: int, *, density: Optional[float] = None,
                     brute_limit: int = 40, budget: int = 2_000_000,
                     attempts: int = 24) -> SubdivisionCertificate:
    """Certificate for a (plain) subdivision of K_{t+1}.

    ``density`` is the average degree deemed sufficient (default 10 t^2);
    it only decides how a failure is reported.  Small graphs fall back to
    exact search, so on them a failure is a proof of absence.
    """
    if t < 2:
        raise InvalidInput("t must be at least 2")
    size = t + 1
    need = 10 * t * t if density is None else density
    pools = []
    try:
        pools.append(dense_core(g))
    except NotFound:
        pass
    pools.append(set(g.vertices()))
    tried = set()
    for pool in pools:
        for branch in _branch_candidates(g, pool, size, attempts):
            key = tuple(sorted(branch))
            if key in tried:
                continue
            tried.add(key)
            cert = _route(g, branch)
            if cert is not None:
                return cert
    exact = False
    if g.n <= brute_limit:
        try:
            cert = brute_force_subdivision(g, size, budget=budget)
        except BudgetExhausted:
            cert = None
        else:
            exact = True
        if cert is not None:
            return cert
    if g.average_degree() < need:
        raise HypothesisNotMet(f"average degree {g.average_degree():.3g} < {need:.3g} "
                               f"and no K{size} subdivision found", stage="find_subdivision",
                               details={"exact": exact})
    raise NotFound(f"routing failed for K{size}", stage="find_subdivision",
                   details={"exact": exact})
