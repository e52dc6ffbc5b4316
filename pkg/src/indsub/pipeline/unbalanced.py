"""Induced clique subdivisions from a very unbalanced bipartite pattern."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..certify import SubdivisionCertificate, lift_subdivision, verify_induced_subdivision
from ..errors import HypothesisNotMet, StructureViolation
from ..graph import (Graph, degeneracy_ordering, girth, greedy_independent_set,
                     induced_subgraph)
from ..probabilistic import (RandomSource, bernoulli_subset, retry_expectation,
                             right_neighbor_prune)
from ..subdivision import find_subdivision
from .report import ensure


def unbalanced_failures(g: Graph, a: Iterable[int], b: Iterable[int], d: int, profile,
                        ord=None) -> list[str]:
    """Hypotheses of the lemma that fail (empty when all hold)."""
    a, b = set(a), set(b)
    bad = []
    if not a or not b:
        bad.append("A and B must be non-empty")
    if a & b:
        bad.append("A and B must be disjoint")
    ord = ord or degeneracy_ordering(g)
    if ord.degeneracy > 2 * d:
        bad.append(f"degeneracy {ord.degeneracy} > 2d = {2 * d}")
    gi = girth(g)
    if gi is not None and gi < profile.length("girth_unbalanced"):
        bad.append(f"girth {gi} < {profile.length('girth_unbalanced')}")
    ratio = profile.value("unbalanced_ratio", d)
    if len(a) < ratio * len(b):
        bad.append(f"|A| = {len(a)} < {ratio:.6g} |B| = {ratio * len(b):.6g}")
    thin = [x for x in sorted(a) if sum(1 for w in g.adj[x] if w in b) < 2]
    if thin:
        bad.append(f"{len(thin)} A-vertices have fewer than 2 B-neighbours (first {thin[0]})")
    return bad


@dataclass
class UnbalancedSample:
    r: set[int]
    good: dict[int, tuple[int, int]]  # good vertex -> its two R' neighbours


def lemma_unbalanced(g: Graph, a: Iterable[int], b: Iterable[int], d: int, profile,
                     rng: RandomSource, *, max_trials: int = 10_000,
                     report=None) -> SubdivisionCertificate:
    """Induced K_{d+1}-subdivision when A is much larger than B.

    Independent A' inside A, then A'' (few edges to B); sample R from B,
    prune right neighbours, and retry until the good vertices (exactly two
    neighbours in R') number at least the density floor times |R'|.  The
    auxiliary graph on R' gets one edge per good vertex; its subdivision
    lifts through the 1-subdivision.
    """
    rep = ensure(report)
    a, b = set(a), set(b)
    ord = degeneracy_ordering(g)
    bad = unbalanced_failures(g, a, b, d, profile, ord)
    if bad:
        raise HypothesisNotMet("; ".join(bad), stage="lemma_unbalanced")
    a1 = greedy_independent_set(g, ord, subset=a)
    cap = profile.value("unbalanced_edge_cap", d)
    a2 = {x for x in a1 if sum(1 for w in g.adj[x] if w in b) <= cap}
    p = profile.prob("unbalanced_p", d)
    density = profile.value("aux_density", d)
    rep.stage("unbalanced", a=len(a), b=len(b), a_indep=len(a1), a_capped=len(a2),
              p=p, aux_density=density)

    def sampler(r: RandomSource) -> UnbalancedSample:
        kept = right_neighbor_prune(bernoulli_subset(b, p, r), ord, g)
        good = {}
        for y in sorted(a2):
            hits = [w for w in g.adj[y] if w in kept]
            if len(hits) == 2:
                good[y] = (hits[0], hits[1])
        return UnbalancedSample(kept, good)

    def score(s: UnbalancedSample) -> float:
        if len(s.r) < d + 1:
            return 0.0
        return len(s.good) / (density * len(s.r))

    out = retry_expectation(sampler, score, 1.0, max_trials, rng, label="unbalanced")
    sample = out.value
    rep.stage("unbalanced.retry", trials=out.trial, r=len(sample.r), good=len(sample.good),
              score=out.score)
    cert = _lift_pairs(g, sample.r, sample.good, d, stage="lemma_unbalanced", report=rep)
    return cert


def _lift_pairs(g: Graph, r: set[int], good: dict, d: int, *, stage: str, report) -> SubdivisionCertificate:
    """Auxiliary graph on ``r`` with an edge per good vertex, subdivision
    found there and lifted through the length-2 realizations."""
    sub_index = {v: i for i, v in enumerate(sorted(r))}
    realize = {}
    for y, (x, z) in good.items():
        key = (min(sub_index[x], sub_index[z]), max(sub_index[x], sub_index[z]))
        if key in realize:
            raise StructureViolation(f"two good vertices share the pair {x}, {z} (a 4-cycle)",
                                     stage=stage)
        lo, hi = sorted((x, z), key=sub_index.get)
        realize[key] = (lo, y, hi)
    aux = Graph.from_edges(len(r), realize)
    report.stage(f"{stage}.aux", vertices=aux.n, edges=aux.m)
    aux_cert = find_subdivision(aux, d)
    host_of = sorted(r)
    cert = lift_subdivision(g, aux, aux_cert, realize, vertex_map=host_of)
    if not verify_induced_subdivision(g, cert).valid_induced:
        raise StructureViolation("lifted certificate is not induced", stage=stage)
    report.stage(f"{stage}.lift", branch=" ".join(map(str, cert.branch)))
    return cert
