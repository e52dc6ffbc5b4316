import itertools
import math

import pytest

from indsub.errors import InvalidInput, RoundsExhausted, TrialsExhausted
from indsub.generators import complete_graph, cycle_graph
from indsub.graph import Graph, degeneracy_ordering, is_independent
from indsub.probabilistic import (Event, EventSystem, RandomSource, bernoulli_subset,
                                  lll_resample, retry_expectation, right_neighbor_prune)


def test_seed_validation():
    with pytest.raises(InvalidInput):
        RandomSource(-1)
    with pytest.raises(InvalidInput):
        RandomSource(2**64)


def test_children_are_reproducible_and_distinct():
    a = RandomSource(5).child("x", 2).uniform(4)
    b = RandomSource(5).child("x", 2).uniform(4)
    c = RandomSource(5).child("x", 3).uniform(4)
    assert list(a) == list(b) and list(a) != list(c)


def test_bernoulli_extremes():
    r = RandomSource(1)
    assert bernoulli_subset(range(50), 0.0, r) == set()
    assert bernoulli_subset(range(50), 1.0, r) == set(range(50))
    with pytest.raises(InvalidInput):
        bernoulli_subset(range(3), 1.5, r)


def test_bernoulli_mean_within_three_sigma():
    n, p = 10_000, 0.3
    k = len(bernoulli_subset(range(n), p, RandomSource(11)))
    assert abs(k - n * p) <= 3 * math.sqrt(n * p * (1 - p))


def test_right_neighbor_prune_independent():
    g = complete_graph(5)
    ord = degeneracy_ordering(g)
    kept = right_neighbor_prune(range(5), ord, g)
    assert len(kept) == 1
    c = cycle_graph(8)
    kept = right_neighbor_prune(range(8), degeneracy_ordering(c), c)
    assert is_independent(c, kept) and len(kept) >= 3


def test_right_neighbor_prune_keeps_independent_input():
    g = cycle_graph(10)
    s = {0, 2, 4, 6}
    assert right_neighbor_prune(s, degeneracy_ordering(g), g) == s


def test_retry_accepts_and_logs():
    out = retry_expectation(lambda r: float(r.uniform(1)[0]), lambda x: x, 0.9, 500,
                            RandomSource(3))
    assert out.score >= 0.9 and len(out.log) == out.trial
    again = retry_expectation(lambda r: float(r.uniform(1)[0]), lambda x: x, 0.9, 500,
                              RandomSource(3))
    assert again.trial == out.trial and again.value == out.value


def test_retry_exhausts():
    with pytest.raises(TrialsExhausted) as err:
        retry_expectation(lambda r: 0.0, lambda x: x, 1.0, 5, RandomSource(0))
    assert err.value.trials == 5


def test_lll_no_events():
    res = lll_resample(EventSystem([0.5] * 4, []), RandomSource(0), 10)
    assert res.resamples == 0 and len(res.assignment) == 4


def test_lll_sat_instance():
    # 4-SAT on disjoint blocks chained by one shared variable
    clauses = []
    for b in range(30):
        base = 3 * b
        clauses.append(((base, base + 1, base + 2, base + 3), (True, False, True, False)))
    events = [Event(vars, lambda a, vars=vars, sg=sg: all(a[x] != s for x, s in zip(vars, sg)))
              for vars, sg in clauses]
    sys = EventSystem([0.5] * 94, events)
    assert sys.dependency_degree() == 2 and sys.lll_condition(1 / 16)
    res = lll_resample(sys, RandomSource(9), 10_000)
    assert not any(ev.violated(res.assignment) for ev in events)


def test_lll_unavoidable_event():
    sys = EventSystem([0.5], [Event((0,), lambda a: True, "always")])
    with pytest.raises(RoundsExhausted):
        lll_resample(sys, RandomSource(0), 25)


def test_event_scope_checked():
    with pytest.raises(InvalidInput):
        EventSystem([0.5], [Event((3,), lambda a: False)])
