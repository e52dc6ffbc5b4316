"""Seeded randomness, subset sampling, retry loops and Moser-Tardos resampling.

All randomness flows through :class:`RandomSource`, a PCG64 stream whose
sub-streams are derived with numpy's ``SeedSequence``:  the child labelled
``(label, index)`` of a source with seed ``s`` and spawn path ``P`` is
``SeedSequence(s, spawn_key=P + (crc32(label), index))``.  Identical seeds
and identical call sequences therefore give identical outputs everywhere.
"""

from __future__ import annotations

import heapq
import math
import zlib
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidInput, RoundsExhausted, TrialsExhausted
from .graph import DegeneracyOrdering, Graph, is_independent


class RandomSource:
    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        if not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2**64:
            raise InvalidInput("seed must be an integer in [0, 2**64)")
        self.seed = int(seed)
        self.path = tuple(path)
        ss = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def child(self, label: str, index: int = 0) -> "RandomSource":
        key = zlib.crc32(label.encode("utf-8"))
        return RandomSource(self.seed, self.path + (key, int(index)))

    def uniform(self, size: int) -> np.ndarray:
        return self._gen.random(size)

    def integers(self, low: int, high: int, size=None):
        return self._gen.integers(low, high, size=size)

    def permutation(self, items: Sequence) -> list:
        idx = self._gen.permutation(len(items))
        return [items[i] for i in idx]

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, path={self.path})"


def bernoulli_subset(universe: Iterable[int], p: float, rng: RandomSource) -> set[int]:
    """Keep each element independently with probability ``p``.

    Elements are visited in increasing order, one uniform draw each.
    """
    if not 0 <= p <= 1:
        raise InvalidInput(f"probability {p} outside [0, 1]")
    items = sorted(universe)
    draws = rng.uniform(len(items))
    return {v for v, u in zip(items, draws) if u < p}


def right_neighbor_prune(s: Iterable[int], ord: DegeneracyOrdering, g: Graph) -> set[int]:
    """Members of ``s`` with no later-ordered neighbour among the survivors.

    Single right-to-left pass: a vertex survives when none of its
    neighbours already kept (all of which sit later in the order) is
    adjacent to it.  The result is independent by construction.
    """
    pos = ord.position
    kept: set[int] = set()
    for v in sorted(s, key=lambda v: pos[v], reverse=True):
        if not any(w in kept for w in g.adj[v]):
            kept.add(v)
    assert is_independent(g, kept)
    return kept


@dataclass
class RetryOutcome:
    value: Any
    trial: int
    score: float
    log: list[str] = field(default_factory=list)


def retry_expectation(sampler: Callable[[RandomSource], Any],
                      score: Callable[[Any], float],
                      floor: float,
                      max_trials: int,
                      rng: RandomSource,
                      label: str = "retry") -> RetryOutcome:
    """Draw until some sample scores at least ``floor``.

    Trial ``k`` (1-based) samples from ``rng.child(label, k)``, so the
    accepted trial is reproducible in isolation.
    """
    if max_trials < 1:
        raise InvalidInput("max_trials must be at least 1")
    log = []
    best = -math.inf
    for k in range(1, max_trials + 1):
        value = sampler(rng.child(label, k))
        s = score(value)
        best = max(best, s)
        ok = s >= floor
        log.append(f"trial {k} | score {s:.6g} | {'accepted' if ok else 'rejected'}")
        if ok:
            return RetryOutcome(value, k, s, log)
    raise TrialsExhausted(f"no trial reached floor {floor:.6g} (best {best:.6g})",
                          best_score=best, trials=max_trials, details={"log": log})


# --------------------------------------------------------------------------
# Moser-Tardos


@dataclass
class Event:
    scope: tuple[int, ...]
    violated: Callable[[Sequence[bool]], bool]
    label: str = ""


@dataclass
class EventSystem:
    probs: Sequence[float]
    events: list[Event]

    def __post_init__(self):
        for ev in self.events:
            for x in ev.scope:
                if not 0 <= x < len(self.probs):
                    raise InvalidInput(f"event {ev.label!r} reads unknown variable {x}")

    def var_events(self) -> list[list[int]]:
        touch = [[] for _ in self.probs]
        for i, ev in enumerate(self.events):
            for x in set(ev.scope):
                touch[x].append(i)
        return touch

    def dependency_degree(self) -> int:
        """Max number of other events sharing a variable with one event."""
        touch = self.var_events()
        worst = 0
        for i, ev in enumerate(self.events):
            nbrs = set()
            for x in ev.scope:
                nbrs.update(touch[x])
            nbrs.discard(i)
            worst = max(worst, len(nbrs))
        return worst

    def lll_condition(self, p_max: float) -> bool:
        """Whether e * p * (deg + 1) <= 1 for the given event probability bound."""
        return math.e * p_max * (self.dependency_degree() + 1) <= 1


@dataclass
class LLLResult:
    assignment: list[bool]
    resamples: int


def lll_resample(sys: EventSystem, rng: RandomSource, max_rounds: int) -> LLLResult:
    """Moser-Tardos: resample the lowest-index violated event until none remain."""
    probs = np.asarray(sys.probs, dtype=float)
    assignment = list(map(bool, rng.uniform(len(probs)) < probs))
    touch = sys.var_events()
    events = sys.events

    heap: list[int] = []
    queued = [False] * len(events)

    def recheck(i):
        if not queued[i] and events[i].violated(assignment):
            queued[i] = True
            heapq.heappush(heap, i)

    for i in range(len(events)):
        recheck(i)
    resamples = 0
    while heap:
        i = heapq.heappop(heap)
        queued[i] = False
        if not events[i].violated(assignment):
            continue
        if resamples >= max_rounds:
            queued[i] = True
            heapq.heappush(heap, i)
            violated = [j for j in range(len(events)) if events[j].violated(assignment)]
            raise RoundsExhausted(f"{len(violated)} events still violated after {resamples} resamplings",
                                  assignment=assignment, violated=violated)
        scope = events[i].scope
        draws = rng.uniform(len(scope))
        for x, u in zip(scope, draws):
            assignment[x] = bool(u < probs[x])
        resamples += 1
        affected = set()
        for x in scope:
            affected.update(touch[x])
        for j in sorted(affected):
            recheck(j)
    assert not any(ev.violated(assignment) for ev in events)
    return LLLResult(assignment, resamples)
