"""Induced clique subdivisions in bounded-degree, high-girth graphs: ball
decomposition, sparsified path structure chosen by resampling, then
assembly from well-separated branchable vertices."""

from __future__ import annotations

import math
from typing import Iterable

from ..certify import SubdivisionCertificate, verify_induced_subdivision
from ..connectivity import connected_good, peel_to_min_degree
from ..errors import HypothesisNotMet, NotFound, StructureViolation
from ..graph import Graph, bfs_distances, girth
from ..probabilistic import Event, EventSystem, RandomSource, lll_resample
from .report import ensure
from .structure import (HStar, assemble_from_structure, ball_decomposition,
                        branchable_set, build_structure, sparsify_structure, witness_is_star)


def maxdegree_failures(g: Graph, u: set, d: int, profile) -> list[str]:
    bad = []
    n = g.n
    if len(u) < profile.value("maxdeg_u_fraction", d) * n:
        bad.append(f"|U| = {len(u)} below {profile.value('maxdeg_u_fraction', d) * n:.6g}")
    floor = profile.value("maxdeg_u_degree", d)
    low = [v for v in sorted(u) if g.degree(v) < floor]
    if low:
        bad.append(f"{len(low)} U vertices have degree below {floor:.6g} (first {low[0]})")
    if n and g.min_degree() < profile.value("maxdeg_min_degree", d):
        bad.append(f"minimum degree {g.min_degree()} below {profile.value('maxdeg_min_degree', d):.6g}")
    if n and g.max_degree() > profile.value("maxdeg_delta_cap", d):
        bad.append(f"maximum degree {g.max_degree()} above {profile.value('maxdeg_delta_cap', d):.6g}")
    gi = girth(g)
    if gi is not None and gi < profile.length("girth_maxdegree"):
        bad.append(f"girth {gi} < {profile.length('girth_maxdegree')}")
    return bad


def structure_events(g: Graph, hs: HStar, u_prime: Iterable[int], d: int, profile) -> EventSystem:
    """Events over the center-inclusion variables.

    E_xz: x is kept, yet fewer than the floor of kept auxiliary edges xy
    have a path through the neighbour z of x.  One extra event asks for
    at least a fraction of the expected number of kept U' centers.
    """
    p = profile.prob("sparsify_p", d)
    floor = math.ceil(profile.value("branchable_floor", d))
    index = {c: i for i, c in enumerate(hs.centers)}
    through: dict[tuple[int, int], list[tuple[int, frozenset]]] = {}
    for (i, j), path in hs.paths.items():
        f = hs.f[(i, j)]
        for a, b, step in ((i, j, path[1]), (j, i, path[-2])):
            through.setdefault((a, step), []).append((b, f))
    events = []
    for i, x in enumerate(hs.centers):
        for z in g.adj[x]:
            opts = through.get((i, z), [])
            scope = sorted({i} | set().union(*(f for _, f in opts)) if opts else {i})

            def violated(s, i=i, opts=opts):
                if not s[i]:
                    return False
                live = sum(1 for b, f in opts if s[b] and all(s[k] == (k in (i, b)) for k in f))
                return live < floor

            events.append(Event(tuple(scope), violated, f"E({x},{z})"))
    tracked = sorted(index[c] for c in u_prime)
    if tracked:
        need = profile.value("concentration_fraction", d) * p * len(tracked)
        events.append(Event(tuple(tracked), lambda s: sum(s[k] for k in tracked) < need,
                            "concentration"))
    return EventSystem([p] * len(hs.centers), events)


def _separated_choices(h: Graph, cands: list[int], size: int, sep: int, rng: RandomSource,
                       attempts: int):
    """Greedy picks of ``size`` candidates pairwise at distance >= sep; the
    first pass uses id order, later passes shuffled orders."""
    seen = set()
    for k in range(attempts):
        order = cands if k == 0 else rng.child("select", k).permutation(cands)
        picked = []
        for v in order:
            near = bfs_distances(h, v, limit=sep - 1)
            if all(w not in near for w in picked):
                picked.append(v)
                if len(picked) == size:
                    break
        key = tuple(sorted(picked))
        if len(picked) == size and key not in seen:
            seen.add(key)
            yield key


def lemma_maxdegree(g: Graph, u: Iterable[int], d: int, profile, rng: RandomSource, *,
                    max_rounds: int = 100_000, attempts: int = 40,
                    report=None) -> SubdivisionCertificate:
    rep = ensure(report)
    stage = "lemma_maxdegree"
    u = set(u)
    bad = maxdegree_failures(g, u, d, profile)
    if bad:
        raise HypothesisNotMet("; ".join(bad), stage=stage)

    bd = ball_decomposition(g, u, profile)
    rep.stage("maxdegree.balls", centers=len(bd.centers), u_prime=len(bd.u_prime), w=len(bd.w),
              separation=profile.length("separation"))
    hs = build_structure(g, bd, profile)
    rep.stage("maxdegree.hstar", vertices=hs.graph.n, edges=hs.graph.m,
              path_cap=profile.length("hstar_path_cap"))

    system = structure_events(g, hs, bd.u_prime, d, profile)
    res = lll_resample(system, rng.child("lll"), max_rounds)
    rep.stage("maxdegree.lll", events=len(system.events),
              dependency=system.dependency_degree(), resamples=res.resamples,
              p=profile.prob("sparsify_p", d))
    ps = sparsify_structure(hs, g, profile, keep=res.assignment, d=d)
    rep.stage("maxdegree.sparsify", s=len(ps.s), h_edges=ps.h.m)

    branch = branchable_set(ps, g, d)
    for v, wit in branch.items():
        if not witness_is_star(ps, g, v, wit):
            raise StructureViolation(f"witnesses of {ps.s[v]} do not form a star subdivision",
                                     stage=stage)
    kept_u = {k for k, c in enumerate(ps.s) if c in set(bd.u_prime)}
    missing = sorted(ps.s[k] for k in kept_u if k not in branch and g.degree(ps.s[k]) >= d)
    rep.stage("maxdegree.branchable", branchable=len(branch), kept_u_prime=len(kept_u),
              unbranchable_u_prime=len(missing))

    floor = profile.value("cg_min_degree", d)
    core, _ = peel_to_min_degree(ps.h, floor)
    if not core:
        raise NotFound(f"structure graph has empty {floor:.4g}-core", stage=stage)
    sub = ps.restrict(core)
    branch = {v: w for v, w in branchable_set(sub, g, d).items()}
    good = connected_good(sub.h, branch, profile, d)
    piece = sorted(good.h)
    ps2 = sub.restrict(piece)
    local = {v: k for k, v in enumerate(piece)}
    usable = {local[v]: tuple(local[w] for w in branch[v]) for v in sorted(good.preserved)}
    rep.stage("maxdegree.connected_good", core=len(core), piece=len(piece),
              preserved=len(usable), round=good.round)

    sep = profile.length("branch_separation")
    last = None
    for pick in _separated_choices(ps2.h, sorted(usable), d + 1, sep, rng, attempts):
        try:
            cert = assemble_from_structure(ps2, g, [(v, usable[v]) for v in pick], profile)
        except NotFound as exc:
            last = exc
            continue
        if not verify_induced_subdivision(g, cert).valid_induced:
            raise StructureViolation("assembled certificate is not induced", stage=stage)
        rep.stage("maxdegree.assemble", branch=" ".join(str(ps2.s[v]) for v in pick))
        return cert
    raise NotFound(f"no selection of {d + 1} separated branchable vertices could be linked"
                   + (f" (last: {last})" if last else ""), stage=stage)
