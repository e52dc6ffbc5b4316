import itertools

import pytest
from hypothesis import given, settings, strategies as st

from indsub.connectivity import (boundary_of, bounded_boundary_subgraph, connected_good,
                                 is_k_connected, link_pairs, local_connectivity, max_core,
                                 min_vertex_cut, peel_to_min_degree, vertex_connectivity)
from indsub.errors import HypothesisNotMet, InvalidInput, NotFound
from indsub.generators import complete_graph, cycle_graph, gen_named, gen_planted, grid_graph
from indsub.graph import Graph, components, induced_subgraph
from indsub.probabilistic import RandomSource
from indsub.profile import ConstantsProfile

from oracles import connectivity_by_subsets, to_nx


def disjoint_union(*gs):
    edges, n = [], 0
    for g in gs:
        edges += [(u + n, v + n) for u, v in g.edges()]
        n += g.n
    return Graph.from_edges(n, edges)


def test_connectivity_examples():
    assert vertex_connectivity(complete_graph(5)) == 4
    assert vertex_connectivity(cycle_graph(6)) == 2
    assert vertex_connectivity(gen_named("petersen")) == 3
    assert vertex_connectivity(gen_named("heawood")) == 3
    assert vertex_connectivity(Graph.from_edges(4, [(0, 1), (2, 3)])) == 0


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@settings(max_examples=120, deadline=None)
@given(graphs())
def test_connectivity_matches_subset_oracle(g):
    kappa = vertex_connectivity(g)
    assert kappa == connectivity_by_subsets(g)
    assert is_k_connected(g, kappa, allow_small=True)
    assert not is_k_connected(g, kappa + 1, allow_small=True)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_min_cut_disconnects(g):
    cut = min_vertex_cut(g)
    if cut is None:
        return
    rest = set(range(g.n)) - cut
    assert len(cut) == vertex_connectivity(g)
    assert len(components(g, rest)) >= 2


def test_local_connectivity_matches_networkx():
    import networkx as nx
    pet = gen_named("petersen")
    h = to_nx(pet)
    for s, t in [(0, 2), (0, 7), (5, 9)]:
        assert local_connectivity(pet, s, t) == nx.node_connectivity(h, s, t)


def test_boundary_examples():
    pet = gen_named("petersen")
    assert boundary_of(pet, range(10)) == set()
    assert boundary_of(Graph.from_edges(2, [(0, 1)]), {0}) == {0}
    assert boundary_of(pet, range(5)) == set(range(5))


def test_bounded_boundary_whole_graph():
    k17 = complete_graph(17)
    assert bounded_boundary_subgraph(k17, 2) == (set(range(17)), set())
    k6 = complete_graph(6)
    assert bounded_boundary_subgraph(k6, 1) == (set(range(6)), set())


def test_bounded_boundary_two_blocks():
    k10 = complete_graph(10)
    g = disjoint_union(k10, k10)
    g = Graph.from_edges(20, g.edges() + [(9, 10)])
    h, bnd = bounded_boundary_subgraph(g, 2, min_size=0, check_hypothesis=False)
    assert h in (set(range(10)), set(range(10, 20)))
    assert len(bnd) == 1 and len(bnd) <= 8
    assert vertex_connectivity(induced_subgraph(g, h).graph) >= 2


def test_bounded_boundary_hypothesis():
    with pytest.raises(HypothesisNotMet):
        bounded_boundary_subgraph(cycle_graph(12), 2)


def test_peel_examples():
    pet = gen_named("petersen")
    assert peel_to_min_degree(pet, 0)[0] == set(range(10))
    tree = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert peel_to_min_degree(tree, 2)[0] == set()
    k5p = Graph.from_edges(6, complete_graph(5).edges() + [(4, 5)])
    core, order = peel_to_min_degree(k5p, 3)
    assert core == set(range(5)) and order == [5]


def test_max_core_examples():
    assert max_core(gen_named("petersen")) == set(range(10))
    tail = Graph.from_edges(8, complete_graph(5).edges() + [(4, 5), (5, 6), (6, 7)])
    assert max_core(tail) == set(range(5))
    both = disjoint_union(gen_named("petersen"), complete_graph(5))
    assert max_core(both) == set(range(10, 15))


def test_connected_good_whole_graph():
    prof = ConstantsProfile.relaxed()
    k20 = complete_graph(20)
    res = connected_good(k20, {0, 1, 2}, prof, 3)
    assert res.h == set(range(20)) and res.preserved == {0, 1, 2}
    assert len(res.trace.rounds) >= 1 and res.round == 1


def test_connected_good_planted():
    prof = ConstantsProfile.relaxed()
    inst = gen_planted("connectedgood", {}, RandomSource(1), prof)
    g = inst.graph
    res = connected_good(g, inst.roles["b"], prof, 3)
    assert res.h <= set(inst.roles["block"]) | set(range(g.n))
    assert is_k_connected(induced_subgraph(g, res.h).graph, 2)
    assert len(res.boundary) <= prof.value("cg_boundary", 3)
    assert all(all(w in res.h for w in g.adj[x]) for x in res.preserved)
    assert res.trace.accounting_holds(g.max_degree())


def test_connected_good_degree_floor():
    with pytest.raises(HypothesisNotMet):
        connected_good(cycle_graph(10), {0}, ConstantsProfile.relaxed(), 3)


def test_link_single_pair_is_shortest():
    link = link_pairs(grid_graph(3, 3), [(0, 8)])
    assert len(link.paths[0]) == 5


def test_link_k6_direct_edges():
    link = link_pairs(complete_graph(6), [(0, 1), (2, 3), (4, 5)])
    assert link.paths == [[0, 1], [2, 3], [4, 5]]


def test_link_dense_random_regular():
    from indsub.generators import gen_regular_high_girth
    g = gen_regular_high_girth(60, 20, 3, RandomSource(2))
    assert vertex_connectivity(g) >= 10
    link = link_pairs(g, [(0, 30), (1, 31)])
    assert link.check(g)


def test_link_impossible_on_path():
    path = Graph.from_edges(6, [(i, i + 1) for i in range(5)])
    with pytest.raises(NotFound):
        link_pairs(path, [(0, 3), (1, 4), (2, 5)])
    with pytest.raises(InvalidInput):
        link_pairs(path, [(0, 1), (1, 2)])
