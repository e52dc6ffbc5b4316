import pytest
from hypothesis import given, settings, strategies as st

from indsub.errors import InvalidInput, ParseError
from indsub.generators import complete_graph, cycle_graph, gen_named
from indsub.graph import (Graph, ball, degeneracy_ordering, distance, dump_graph, girth,
                          greedy_independent_set, induced_subgraph, is_independent, load_graph,
                          moore_floor, shortest_path)

from oracles import degeneracy_by_subsets, girth_by_edges

PETERSEN_EDGES = """0 1
1 2
2 3
3 4
4 0
0 5
1 6
2 7
3 8
4 9
5 7
7 9
9 6
6 8
8 5
"""


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def test_load_path_with_header():
    g = load_graph("nodes 3\n0 1\n1 2")
    assert (g.n, g.m) == (3, 2)


def test_load_duplicates_collapse():
    g = load_graph("0 1\n0 1\n1 0")
    assert (g.n, g.m) == (2, 1)


def test_load_petersen_list():
    g = load_graph(PETERSEN_EDGES)
    assert (g.n, g.m) == (10, 15)
    assert set(g.degrees) == {3}


def test_load_rejects_garbage():
    with pytest.raises(ParseError):
        load_graph("0 x")
    with pytest.raises(InvalidInput):
        load_graph("1 1")
    with pytest.raises(ParseError):
        load_graph("nodes 2\n0 5")


@given(graphs())
def test_dump_load_round_trip(g):
    h = load_graph(dump_graph(g))
    assert h.n == g.n and h.edges() == g.edges()


def test_girth_small_cases():
    assert girth(complete_graph(4)) == 3
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert girth(tree) is None
    assert girth(gen_named("petersen")) == 5
    assert girth(gen_named("heawood")) == 6
    assert girth(cycle_graph(7)) == 7


@settings(max_examples=150)
@given(graphs())
def test_girth_matches_edge_oracle(g):
    assert girth(g) == girth_by_edges(g)


def test_ball_and_distance():
    c6 = cycle_graph(6)
    assert ball(c6, 0, 0) == {0}
    assert len(ball(c6, 0, 2)) == 5
    assert len(ball(gen_named("petersen"), 0, 1)) == 4
    assert distance(c6, 0, 3) == 3
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert distance(two, 0, 3) is None


def test_shortest_path_is_lex_least():
    assert shortest_path(cycle_graph(6), 0, 3) == [0, 1, 2, 3]


def test_degeneracy_examples():
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert degeneracy_ordering(tree).degeneracy == 1
    assert degeneracy_ordering(complete_graph(5)).degeneracy == 4
    assert degeneracy_ordering(gen_named("petersen")).degeneracy == 3


@settings(max_examples=60)
@given(graphs(max_n=8))
def test_degeneracy_matches_subset_oracle(g):
    ord = degeneracy_ordering(g)
    assert ord.degeneracy == degeneracy_by_subsets(g)
    assert all(ord.right_degree(g, v) <= ord.degeneracy for v in range(g.n))


def test_greedy_independent_examples():
    c5 = cycle_graph(5)
    s = greedy_independent_set(c5, degeneracy_ordering(c5))
    assert len(s) >= 2 and is_independent(c5, s)
    k4 = complete_graph(4)
    assert len(greedy_independent_set(k4, degeneracy_ordering(k4))) == 1


@given(graphs())
def test_greedy_independent_size_bound(g):
    ord = degeneracy_ordering(g)
    s = greedy_independent_set(g, ord)
    assert is_independent(g, s)
    assert len(s) * (ord.degeneracy + 1) >= g.n


def test_induced_subgraph_examples():
    pet = gen_named("petersen")
    outer = induced_subgraph(pet, range(5))
    assert outer.graph.m == 5 and set(outer.graph.degrees) == {2}
    tri = induced_subgraph(complete_graph(4), [0, 2, 3])
    assert tri.graph.m == 3 and tri.to_host == (0, 2, 3)
    same = induced_subgraph(pet, range(10))
    assert same.graph.edges() == pet.edges()


def test_moore_floor():
    assert moore_floor(3, 5).moore == 10
    assert moore_floor(3, 3).moore == 4
    assert moore_floor(3, 5).advisory == 16
    assert moore_floor(3, 6).moore == 14  # Heawood attains it
    with pytest.raises(InvalidInput):
        moore_floor(2, 5)
