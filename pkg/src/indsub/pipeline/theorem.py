"""Main dispatcher: reduce to the densest core, split off the high-degree
set B, then either build the 3-subdivision structure through B (case 1)
or delete B, peel, and hand over to the bounded-degree lemma (case 2)."""

from __future__ import annotations

from dataclasses import dataclass

from ..certify import SubdivisionCertificate, lift_subdivision, verify_induced_subdivision
from ..connectivity import max_core, peel_to_min_degree
from ..errors import EarlySuccess, HypothesisNotMet, StructureViolation
from ..graph import Graph, degeneracy_ordering, girth, induced_subgraph, is_independent
from ..probabilistic import RandomSource, bernoulli_subset, retry_expectation, right_neighbor_prune
from ..subdivision import find_subdivision
from .largesub import lemma_largesub
from .maxdegree import lemma_maxdegree
from .report import ensure
from .unbalanced import lemma_unbalanced


@dataclass
class Case1Sample:
    r_b: set[int]
    r_x: set[int]
    good: dict[int, tuple[int, int]]  # good y -> its two R_X' neighbours
    b_of: dict[int, int]


def case1_sample_violations(g: Graph, s: Case1Sample) -> list[str]:
    bad = []
    if not is_independent(g, s.r_b):
        bad.append("R_B is not independent")
    if not is_independent(g, s.r_x):
        bad.append("R_X' is not independent")
    if any(s.b_of[x] not in s.r_b for x in s.r_x):
        bad.append("some R_X' vertex has b(x) outside R_B")
    for y, pair in s.good.items():
        hits = sorted(w for w in g.adj[y] if w in s.r_x)
        if hits != sorted(pair) or any(w in s.r_b for w in g.adj[y]):
            bad.append(f"good vertex {y} has the wrong neighbourhood")
            break
    return bad


def theorem_main(g: Graph, d: int, profile, rng: RandomSource, *,
                 max_trials: int = 1000, report=None) -> SubdivisionCertificate:
    """Induced K_{d+1}-subdivision in ``g``; every failure names its stage."""
    rep = ensure(report)
    stage = "theorem"
    if g.n == 0:
        raise HypothesisNotMet("empty graph", stage=stage)
    floor = profile.value("theorem_min_degree", d)
    if g.min_degree() < floor:
        raise HypothesisNotMet(f"minimum degree {g.min_degree()} < {floor:.6g}", stage=stage)
    gi = girth(g)
    if gi is not None and gi < profile.length("girth_theorem"):
        raise HypothesisNotMet(f"girth {gi} < {profile.length('girth_theorem')}", stage=stage)

    core = induced_subgraph(g, max_core(g))
    h = core.graph
    n = h.n
    ord = degeneracy_ordering(h)
    b = {v for v in range(n) if h.degree(v) >= profile.value("case1_b_degree", d)}
    diag = profile.value("b_size_diag", d) * n
    nb = {v: sum(1 for w in h.adj[v] if w in b) for v in range(n) if v not in b}
    a = {v for v, k in nb.items() if k >= 2}
    a1 = {v for v, k in nb.items() if k == 1}
    rep.stage("theorem.reduce", n=g.n, core=n, degeneracy=ord.degeneracy, b=len(b),
              b_within_bound="yes" if len(b) <= diag else "no", a=len(a), a_prime=len(a1))

    def done(cert: SubdivisionCertificate, how: str) -> SubdivisionCertificate:
        out = cert.relabel(core.to_host)
        if not verify_induced_subdivision(g, out).valid_induced:
            raise StructureViolation("certificate fails against the input graph", stage=how)
        rep.stage("theorem.done", route=how, branch=" ".join(map(str, out.branch)))
        return out

    if a and len(a) >= profile.value("unbalanced_ratio", d) * len(b):
        rep.stage("theorem.case", case="unbalanced")
        cert = lemma_unbalanced(h, a, b, d, profile, rng.child("unbalanced"), report=rep)
        return done(cert, "unbalanced")

    if 2 * len(a1) >= n:
        rep.stage("theorem.case", case=1)
        try:
            cert = _case1(h, b, a, a1, d, profile, rng.child("case1"), ord, max_trials, rep)
        except EarlySuccess as early:
            rep.stage("theorem.case1.early", note="largesub contradiction branch")
            return done(early.certificate, "case1")
        return done(cert, "case1")

    rep.stage("theorem.case", case=2)
    cert, host_of = _case2(h, b, a, d, profile, rng.child("case2"), rep)
    return done(cert.relabel(host_of), "case2")


def _case1(h: Graph, b: set, a: set, a1: set, d: int, profile, rng: RandomSource, ord,
           max_trials: int, rep) -> SubdivisionCertificate:
    stage = "theorem.case1"
    n = h.n
    ls = lemma_largesub(h, a1, d, profile, rng.child("largesub"), report=rep)
    xp = ls.x_prime
    y = ls.y - a - b
    b_of = {x: next(w for w in h.adj[x] if w in b) for x in xp}
    # Y': greedy, pairwise disjoint neighbourhoods into X'
    y1, used = [], set()
    for v in sorted(y):
        nx = {w for w in h.adj[v] if w in xp}
        if not nx & used:
            y1.append(v)
            used |= nx
    p = profile.prob("case1_p", d)
    target = profile.value("case1_good_floor", d) * n
    rep.stage("theorem.case1.setup", x_prime=len(xp), y=len(y), y_disjoint=len(y1), p=p,
              good_floor=target)

    def sampler(r: RandomSource) -> Case1Sample:
        r_b = right_neighbor_prune(bernoulli_subset(b, p, r.child("b")), ord, h)
        r_x0 = bernoulli_subset(xp, p, r.child("x"))
        pos = ord.position
        r_x = {x for x in r_x0 if b_of[x] in r_b
               and not any(w in r_x0 and pos[w] > pos[x] for w in h.adj[x])}
        good = {}
        for v in y1:
            hits = [w for w in h.adj[v] if w in r_x]
            if len(hits) == 2 and not any(w in r_b for w in h.adj[v]):
                good[v] = (hits[0], hits[1])
        return Case1Sample(r_b, r_x, good, b_of)

    out = retry_expectation(sampler, lambda s: len(s.good) / target if target else 1.0, 1.0,
                            max_trials, rng.child("sample"), label="case1")
    s = out.value
    bad = case1_sample_violations(h, s)
    if bad:
        raise StructureViolation("; ".join(bad), stage=stage)
    rep.stage("theorem.case1.sample", trials=out.trial, r_b=len(s.r_b), r_x=len(s.r_x),
              good=len(s.good))

    host_of = sorted(s.r_b)
    index = {v: i for i, v in enumerate(host_of)}
    realize = {}
    for v, (x, w) in sorted(s.good.items()):
        z1, z2 = b_of[x], b_of[w]
        if z1 == z2:
            raise StructureViolation(f"good vertex {v} sees one hub twice (a 4-cycle)", stage=stage)
        key = tuple(sorted((index[z1], index[z2])))
        if key in realize:
            raise StructureViolation(f"two good vertices realize the hub pair {z1}, {z2}", stage=stage)
        seq = (z1, x, v, w, z2)
        realize[key] = seq if index[z1] < index[z2] else tuple(reversed(seq))
    aux = Graph.from_edges(len(host_of), realize)
    rep.stage("theorem.case1.aux", vertices=aux.n, edges=aux.m)
    aux_cert = find_subdivision(aux, d)
    cert = lift_subdivision(h, aux, aux_cert, realize, vertex_map=host_of)
    if not verify_induced_subdivision(h, cert).valid_induced:
        raise StructureViolation("3-subdivision lift is not induced", stage=stage)
    rep.stage("theorem.case1.lift", branch=" ".join(map(str, cert.branch)))
    return cert


def _case2(h: Graph, b: set, a: set, d: int, profile, rng: RandomSource, rep):
    """Returns a certificate on the peeled graph together with its host ids."""
    stage = "theorem.case2"
    n = h.n
    rest = set(range(h.n)) - b
    # degrees are counted inside G - B
    core, removed = peel_to_min_degree(h, profile.value("case2_peel", d), within=rest)
    s = set(removed)
    claim = profile.value("case2_claim", d)
    holds = not s or len(s) < claim * len(a)
    rep.stage("theorem.case2.peel", deleted_b=len(b), peeled=len(s), a=len(a),
              claim_bound=claim * len(a), claim="holds" if holds else "fails")
    if not holds:
        # dense escape: many peeled vertices see two A vertices
        heavy = {x for x in s - a if sum(1 for w in h.adj[x] if w in a) >= 2}
        rep.stage("theorem.case2.escape", a_role=len(heavy), b_role=len(a),
                  dense_fraction=len(heavy) / len(s))
        cert = lemma_unbalanced(h, heavy, a, d, profile, rng.child("escape"), report=rep)
        return cert, list(range(h.n))

    sub = induced_subgraph(h, core)
    g2 = sub.graph
    problems = []
    if g2.n == 0:
        problems.append("nothing survives the peel")
    else:
        if g2.max_degree() > profile.value("maxdeg_delta_cap", d):
            problems.append(f"(i) maximum degree {g2.max_degree()}")
        if g2.min_degree() < profile.value("case2_peel", d):
            problems.append(f"(ii) minimum degree {g2.min_degree()}")
        dense = sum(1 for v in range(g2.n) if g2.degree(v) >= d)
        if dense < profile.value("case2_dense_fraction", d) * n:
            problems.append(f"(iii) only {dense} vertices of degree >= {d}")
        gi = girth(g2)
        if gi is not None and gi < profile.length("girth_case2"):
            problems.append(f"(iv) girth {gi}")
    if problems:
        raise HypothesisNotMet("peeled graph fails " + "; ".join(problems), stage=stage)
    u = {v for v in range(g2.n) if g2.degree(v) >= profile.value("maxdeg_u_degree", d)}
    rep.stage("theorem.case2.reduced", n=g2.n, max_degree=g2.max_degree(),
              min_degree=g2.min_degree(), u=len(u))
    cert = lemma_maxdegree(g2, u, d, profile, rng.child("maxdegree"), report=rep)
    return cert, list(sub.to_host)
