"""Subdivision certificates, their verifiers, and the exact brute-force oracle.

A certificate for a subdivision of ``K_t`` lists ``t`` branch vertices and,
for every pair ``i < j``, the full host vertex sequence of the path joining
``branch[i]`` to ``branch[j]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetExhausted, Disconnected, InvalidInput, LiftConflict, ParseError
from .graph import Graph, shortest_path


@dataclass(frozen=True)
class SubdivisionCertificate:
    branch: tuple[int, ...]
    paths: Mapping[tuple[int, int], tuple[int, ...]]

    @classmethod
    def build(cls, branch: Sequence[int], paths: Mapping) -> "SubdivisionCertificate":
        return cls(tuple(branch), {tuple(k): tuple(v) for k, v in sorted(paths.items())})

    @property
    def t(self) -> int:
        return len(self.branch)

    def vertices(self) -> set[int]:
        out = set(self.branch)
        for p in self.paths.values():
            out.update(p)
        return out

    def path_edges(self) -> set[frozenset]:
        return {frozenset(e) for p in self.paths.values() for e in zip(p, p[1:])}

    def relabel(self, mapping: Sequence[int] | Mapping[int, int]) -> "SubdivisionCertificate":
        return SubdivisionCertificate(
            tuple(mapping[v] for v in self.branch),
            {k: tuple(mapping[v] for v in p) for k, p in self.paths.items()})

    def to_text(self) -> str:
        lines = [f"branch {self.t}: " + " ".join(map(str, self.branch))]
        for (i, j), p in sorted(self.paths.items()):
            lines.append(f"path {i + 1} {j + 1}: " + " ".join(map(str, p)))
        return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> SubdivisionCertificate:
    branch = None
    paths = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: missing ':'")
        words = head.split()
        try:
            values = [int(x) for x in body.split()]
            if words[0] == "branch" and len(words) == 2:
                t = int(words[1])
                if len(values) != t:
                    raise ParseError(f"line {lineno}: branch count {t} but {len(values)} ids")
                branch = tuple(values)
            elif words[0] == "path" and len(words) == 3:
                i, j = int(words[1]) - 1, int(words[2]) - 1
                if i >= j or i < 0:
                    raise ParseError(f"line {lineno}: pair indices must satisfy 1 <= i < j")
                paths[(i, j)] = tuple(values)
            else:
                raise ParseError(f"line {lineno}: unrecognised record {head!r}")
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
    if branch is None:
        raise ParseError("certificate has no branch line")
    return SubdivisionCertificate.build(branch, paths)


# --------------------------------------------------------------------------
# verification

PLAIN_KINDS = {"bad-branch", "missing-path", "extra-path", "endpoint", "non-edge",
               "repeat", "internal-branch", "path-overlap"}


@dataclass
class VerificationReport:
    valid_plain: bool
    valid_induced: bool
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    def summary(self) -> str:
        if self.valid_induced:
            return "induced: yes"
        if self.valid_plain:
            return "induced: no (plain subdivision only)"
        return "induced: no (not a subdivision)"


def _check(g: Graph, c: SubdivisionCertificate) -> list[tuple[str, tuple]]:
    bad = []
    t = c.t
    branch = c.branch
    if len(set(branch)) != t or any(not (0 <= v < g.n) for v in branch):
        bad.append(("bad-branch", tuple(branch)))
        return bad
    expected = set(itertools.combinations(range(t), 2))
    for key in sorted(set(c.paths) - expected):
        bad.append(("extra-path", key))
    owner: dict[int, tuple[int, int]] = {}
    bset = set(branch)
    for key in sorted(expected):
        if key not in c.paths:
            bad.append(("missing-path", key))
            continue
        p = c.paths[key]
        i, j = key
        if len(p) < 2 or p[0] != branch[i] or p[-1] != branch[j]:
            bad.append(("endpoint", key))
            continue
        if any(not (0 <= v < g.n) for v in p):
            bad.append(("non-edge", key))
            continue
        if len(set(p)) != len(p):
            bad.append(("repeat", key))
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                bad.append(("non-edge", (u, v)))
        for v in p[1:-1]:
            if v in bset:
                bad.append(("internal-branch", (v,)))
            elif v in owner and owner[v] != key:
                bad.append(("path-overlap", (v,)))
            else:
                owner[v] = key
    return bad


def _induced_violations(g: Graph, c: SubdivisionCertificate) -> list[tuple[str, tuple]]:
    verts = c.vertices()
    allowed = c.path_edges()
    where: dict[int, set] = {}
    for key, p in c.paths.items():
        for v in p:
            where.setdefault(v, set()).add(key)
    bad = []
    for u in sorted(verts):
        for w in g.adj[u]:
            if u < w and w in verts and frozenset((u, w)) not in allowed:
                kind = "chord" if where[u] & where[w] else "cross-edge"
                bad.append((kind, (u, w)))
    return bad


def verify_subdivision(g: Graph, c: SubdivisionCertificate) -> VerificationReport:
    """Check both plain and induced validity; violations list every defect."""
    bad = _check(g, c)
    plain = not bad
    if plain:
        bad = _induced_violations(g, c)
    return VerificationReport(plain, plain and not bad, bad)


def verify_induced_subdivision(g: Graph, c: SubdivisionCertificate) -> VerificationReport:
    return verify_subdivision(g, c)


# --------------------------------------------------------------------------
# exact search


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"search exceeded {self.limit} nodes")


def _search(g: Graph, t: int, budget: Optional[int], induced: bool,
            candidates: Optional[Iterable[int]] = None) -> Optional[SubdivisionCertificate]:
    if t < 2:
        raise InvalidInput("t must be at least 2")
    adj = g.adjsets
    b = _Budget(budget)
    pool = sorted(v for v in (g.vertices() if candidates is None else candidates)
                  if len(adj[v]) >= t - 1)
    pairs = list(itertools.combinations(range(t), 2))

    def paths_between(a, z, used):
        """Yield a-z paths whose internal vertices avoid ``used``."""
        if z in adj[a]:
            yield [a, z]
            return
        path = [a]
        on_path = {a}

        def grow(u):
            b.tick()
            for v in sorted(adj[u]):
                if v == z:
                    yield path + [z]
                    continue
                if v in used or v in on_path:
                    continue
                if induced:
                    # v may only touch its predecessor, plus z if it steps there next
                    if any(w != u and w != z and (w in used or w in on_path) for w in adj[v]):
                        continue
                    if z in adj[v]:
                        yield path + [v, z]
                        continue
                path.append(v)
                on_path.add(v)
                yield from grow(v)
                path.pop()
                on_path.discard(v)

        yield from grow(a)

    def solve(branch, k, used, chosen):
        if k == len(pairs):
            return dict(chosen)
        i, j = pairs[k]
        for p in paths_between(branch[i], branch[j], used):
            inner = p[1:-1]
            chosen[(i, j)] = tuple(p)
            got = solve(branch, k + 1, used | set(inner), chosen)
            if got is not None:
                return got
            del chosen[(i, j)]
        return None

    for branch in itertools.combinations(pool, t):
        b.tick()
        got = solve(branch, 0, set(branch), {})
        if got is not None:
            return SubdivisionCertificate.build(branch, got)
    return None


def brute_force_induced(g: Graph, t: int, budget: Optional[int] = 10**7) -> Optional[SubdivisionCertificate]:
    """Exact search for an induced subdivision of ``K_t``.

    Enumerates branch ``t``-subsets and, pair by pair, every path that keeps
    the growing vertex set inducing exactly the chosen path edges.  Returns
    ``None`` when none exists; raises :class:`BudgetExhausted` when the node
    limit cuts the search short.
    """
    cert = _search(g, t, budget, induced=True)
    if cert is not None:
        assert verify_induced_subdivision(g, cert).valid_induced
    return cert


def brute_force_subdivision(g: Graph, t: int, budget: Optional[int] = 10**7,
                            candidates: Optional[Iterable[int]] = None) -> Optional[SubdivisionCertificate]:
    """Exact search for a (not necessarily induced) subdivision of ``K_t``."""
    cert = _search(g, t, budget, induced=False, candidates=candidates)
    if cert is not None:
        assert verify_subdivision(g, cert).valid_plain
    return cert


# --------------------------------------------------------------------------
# lifting and path reduction


def _aux_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def lift_subdivision(host: Graph, aux: Graph, aux_cert: SubdivisionCertificate,
                     edge_realization: Mapping[tuple[int, int], Sequence[int]],
                     vertex_map: Optional[Sequence[int] | Mapping[int, int]] = None) -> SubdivisionCertificate:
    """Replace every auxiliary edge on the certificate's paths by its host path.

    ``vertex_map`` sends auxiliary vertices to host vertices (identity when
    omitted); ``edge_realization[(a, b)]`` with ``a < b`` is a host sequence
    joining the images of ``a`` and ``b``.
    """
    vmap = (lambda v: v) if vertex_map is None else (lambda v: vertex_map[v])
    images = {vmap(v) for v in aux_cert.branch}
    claimed: dict[int, tuple[int, int]] = {}
    paths = {}
    for key, apath in aux_cert.paths.items():
        for v in apath[1:-1]:
            images.add(vmap(v))
    for key, apath in sorted(aux_cert.paths.items()):
        host_path = [vmap(apath[0])]
        for a, b in zip(apath, apath[1:]):
            if not aux.has_edge(a, b):
                raise LiftConflict(f"({a}, {b}) is not an auxiliary edge")
            ek = _aux_key(a, b)
            if ek not in edge_realization:
                raise LiftConflict(f"no realization for auxiliary edge {ek}")
            seg = list(edge_realization[ek])
            if seg[0] != vmap(a):
                seg.reverse()
            if seg[0] != vmap(a) or seg[-1] != vmap(b):
                raise LiftConflict(f"realization of {ek} does not join its endpoints")
            for v in seg[1:-1]:
                if v in images or claimed.get(v, ek) != ek:
                    raise LiftConflict(f"host vertex {v} realizes two auxiliary pieces")
                claimed[v] = ek
            host_path.extend(seg[1:])
        paths[key] = tuple(host_path)
    cert = SubdivisionCertificate.build(tuple(vmap(v) for v in aux_cert.branch), paths)
    report = verify_subdivision(host, cert)
    if not report.valid_plain:
        raise LiftConflict(f"lifted certificate invalid: {report.violations[:3]}")
    return cert


def induced_path_reduce(g: Graph, vs: Iterable[int], a: int, b: int) -> list[int]:
    """Lexicographically least shortest a-b path inside ``G[vs]``; chordless."""
    allowed = set(vs)
    if a not in allowed or b not in allowed:
        raise InvalidInput("endpoints must lie in the vertex set")
    path = shortest_path(g, a, b, within=allowed)
    if path is None:
        raise Disconnected(f"{a} and {b} are disconnected inside the given set")
    return path
