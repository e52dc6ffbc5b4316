"""Large X'/Y structure: many independent vertices with 2..cap neighbours in
a low-degree set X'."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import EarlySuccess, HypothesisNotMet, IndsubError, NotFound, StructureViolation
from ..graph import Graph, degeneracy_ordering, girth, greedy_independent_set, is_independent
from ..probabilistic import RandomSource, bernoulli_subset, retry_expectation
from .report import ensure
from .unbalanced import lemma_unbalanced


@dataclass
class LargeSub:
    x_prime: set[int]
    y: set[int]
    z: set[int]
    u: set[int]
    u_heavy: set[int]


def largesub_violations(g: Graph, x_prime, y, d: int, profile) -> list[str]:
    """Which of the five structural properties fail."""
    n = g.n
    bad = []
    if not set(y).isdisjoint(x_prime):
        bad.append("X' and Y intersect")
    if len(y) < profile.value("largesub_y_floor", d) * n:
        bad.append(f"|Y| = {len(y)} below {profile.value('largesub_y_floor', d) * n:.6g}")
    if not is_independent(g, y):
        bad.append("Y is not independent")
    cap = profile.value("largesub_nbr_cap", d)
    for v in sorted(y):
        k = sum(1 for w in g.adj[v] if w in x_prime)
        if not 2 <= k <= cap:
            bad.append(f"y={v} has {k} neighbours in X'")
            break
    deg_cap = profile.value("largesub_degree_cap", d)
    if any(g.degree(v) > deg_cap for v in x_prime):
        bad.append(f"some X' vertex has degree above {deg_cap:.6g}")
    return bad


def lemma_largesub(g: Graph, x: Iterable[int], d: int, profile, rng: RandomSource, *,
                   max_trials: int = 200, report=None) -> LargeSub:
    """X' and Y following the degree-capped halving argument.

    When the middle class U \\ U' turns out tiny, the counting argument
    routes to the unbalanced lemma; a certificate found there is raised
    as :class:`EarlySuccess`.
    """
    rep = ensure(report)
    stage = "lemma_largesub"
    x = set(x)
    n = g.n
    ord = degeneracy_ordering(g)
    bad = []
    if ord.degeneracy > 2 * d:
        bad.append(f"degeneracy {ord.degeneracy} > 2d")
    gi = girth(g)
    if gi is not None and gi < profile.length("girth_largesub"):
        bad.append(f"girth {gi} < {profile.length('girth_largesub')}")
    if 2 * len(x) < n:
        bad.append(f"|X| = {len(x)} < n/2")
    floor = profile.value("largesub_x_degree", d)
    if any(g.degree(v) < floor for v in x):
        bad.append(f"some X vertex has degree below {floor:.6g}")
    if bad:
        raise HypothesisNotMet("; ".join(bad), stage=stage)

    z = {v for v in x if g.degree(v) <= profile.value("largesub_degree_cap", d)}
    if len(z) < profile.value("largesub_z_fraction", d) * n:
        raise HypothesisNotMet(f"only {len(z)} X vertices have degree at most the cap", stage=stage)
    cut_floor = profile.value("largesub_cut_floor", d) * n

    def cut(z1):
        return sum(1 for v in z1 for w in g.adj[v] if w not in z1)

    out = retry_expectation(lambda r: bernoulli_subset(z, 0.5, r), lambda z1: cut(z1) / cut_floor,
                            1.0, max_trials, rng.child("halving"), label="halving")
    z1 = out.value
    counts = {}
    for v in z1:
        for w in g.adj[v]:
            if w not in z1:
                counts[w] = counts.get(w, 0) + 1
    u = {w for w, c in counts.items() if c >= 2}
    cap = profile.value("largesub_nbr_cap", d)
    heavy = {w for w in u if counts[w] > cap}
    middle = u - heavy
    rep.stage("largesub", z=len(z), z1=len(z1), trials=out.trial, cut=cut(z1),
              u=len(u), u_heavy=len(heavy), u_middle=len(middle))

    if len(middle) <= profile.value("largesub_switch", d) * n:
        # few middle vertices: Z1 vertices with two edges into U' form a lopsided pair
        a = {v for v in z1 if sum(1 for w in g.adj[v] if w in heavy) >= 2}
        rep.stage("largesub.switch", a=len(a), b=len(heavy))
        try:
            cert = lemma_unbalanced(g, a, heavy, d, profile, rng.child("switch"), report=rep)
        except IndsubError as exc:
            raise NotFound(f"middle class tiny and the unbalanced route failed: {exc}",
                           stage=stage) from exc
        raise EarlySuccess(cert, "unbalanced route found a certificate", stage=stage)

    y = greedy_independent_set(g, ord, subset=middle)
    result = LargeSub(set(z1), y, z, u, heavy)
    problems = largesub_violations(g, result.x_prime, y, d, profile)
    if problems:
        kind = NotFound if any(p.startswith("|Y|") for p in problems) else StructureViolation
        raise kind("; ".join(problems), stage=stage)
    rep.stage("largesub.result", x_prime=len(z1), y=len(y))
    return result
