import itertools

import pytest
from hypothesis import given, settings, strategies as st

from indsub.certify import (SubdivisionCertificate, brute_force_induced, brute_force_subdivision,
                            induced_path_reduce, lift_subdivision, parse_certificate,
                            verify_induced_subdivision, verify_subdivision)
from indsub.errors import BudgetExhausted, LiftConflict, ParseError
from indsub.generators import complete_graph, cycle_graph, gen_named, subdivide
from indsub.graph import Graph

from oracles import has_induced_subdivision


def clique_cert(branch):
    return SubdivisionCertificate.build(branch, {(i, j): (branch[i], branch[j])
                                                 for i, j in itertools.combinations(range(len(branch)), 2)})


def natural_cert(pattern, inner):
    paths = {}
    for (u, v), seq in inner.items():
        paths[(u, v)] = (u, *seq, v)
    return SubdivisionCertificate.build(tuple(range(pattern.n)), paths)


def test_k4_is_its_own_subdivision():
    rep = verify_subdivision(complete_graph(4), clique_cert((0, 1, 2, 3)))
    assert rep.valid_plain and rep.valid_induced


def test_overlapping_paths_flagged():
    g, inner = subdivide(complete_graph(4), 1)
    cert = natural_cert(complete_graph(4), inner)
    paths = dict(cert.paths)
    mid = inner[(0, 1)][0]
    # reroute 2-3 through branch vertices 0 and 1 and the middle of 0-1
    paths[(2, 3)] = (2, inner[(0, 2)][0], 0, mid, 1, inner[(1, 3)][0], 3)
    rep = verify_subdivision(g, SubdivisionCertificate.build(cert.branch, paths))
    kinds = {k for k, _ in rep.violations}
    assert not rep.valid_plain
    assert "path-overlap" in kinds or "internal-branch" in kinds


def test_subdivided_k4_natural_certificate():
    g, inner = subdivide(complete_graph(4), 1)
    assert g.n == 10
    rep = verify_induced_subdivision(g, natural_cert(complete_graph(4), inner))
    assert rep.valid_plain and rep.valid_induced


def test_k4_inside_k5_is_induced():
    rep = verify_induced_subdivision(complete_graph(5), clique_cert((0, 1, 2, 3)))
    assert rep.valid_plain and rep.valid_induced


def test_chord_between_paths_breaks_inducedness():
    base, inner = subdivide(complete_graph(4), 1)
    a, b = inner[(0, 1)][0], inner[(2, 3)][0]
    g = Graph.from_edges(base.n, base.edges() + [(a, b)])
    rep = verify_induced_subdivision(g, natural_cert(complete_graph(4), inner))
    assert rep.valid_plain and not rep.valid_induced
    assert ("cross-edge", (min(a, b), max(a, b))) in rep.violations


def test_brute_force_examples():
    assert brute_force_induced(complete_graph(4), 4) is not None
    assert brute_force_induced(cycle_graph(9), 4) is None
    pet = gen_named("petersen")
    cert = brute_force_induced(pet, 4)
    assert cert is not None and verify_induced_subdivision(pet, cert).valid_induced


def test_brute_force_budget():
    with pytest.raises(BudgetExhausted):
        brute_force_induced(gen_named("grid:6x6"), 5, budget=50)


def test_plain_but_not_induced():
    # the 5-wheel: hub plus rim is a K4 subdivision, but the hub chords every choice
    wheel = Graph.from_edges(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    plain = brute_force_subdivision(wheel, 4)
    assert plain is not None and verify_subdivision(wheel, plain).valid_plain
    assert brute_force_induced(wheel, 4) is None
    assert not has_induced_subdivision(wheel, 4)
    assert brute_force_subdivision(complete_graph(5), 5) is not None


@st.composite
def small_graphs(draw):
    n = draw(st.integers(4, 8))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_brute_force_agrees_with_subset_oracle(g):
    cert = brute_force_induced(g, 4)
    assert (cert is not None) == has_induced_subdivision(g, 4)
    if cert is not None:
        assert verify_induced_subdivision(g, cert).valid_induced


def test_certificate_text_round_trip():
    g, inner = subdivide(complete_graph(4), 2)
    cert = natural_cert(complete_graph(4), inner)
    again = parse_certificate(cert.to_text())
    assert again == cert
    with pytest.raises(ParseError):
        parse_certificate("path 1 2: 0 1\n")


def test_lift_identity():
    k4 = complete_graph(4)
    cert = clique_cert((0, 1, 2, 3))
    real = {e: e for e in k4.edges()}
    assert lift_subdivision(k4, k4, cert, real) == cert


def test_lift_three_subdivision():
    host, inner = subdivide(complete_graph(4), 3)
    aux = complete_graph(4)
    real = {(u, v): (u, *seq, v) for (u, v), seq in inner.items()}
    lifted = lift_subdivision(host, aux, clique_cert((0, 1, 2, 3)), real)
    assert all(len(p) == 5 for p in lifted.paths.values())
    assert verify_induced_subdivision(host, lifted).valid_induced


def test_lift_conflict():
    host, inner = subdivide(complete_graph(4), 1)
    aux = complete_graph(4)
    real = {(u, v): (u, *seq, v) for (u, v), seq in inner.items()}
    real[(2, 3)] = (2, inner[(0, 1)][0], 3)  # reuses the 0-1 inner vertex
    with pytest.raises(LiftConflict):
        lift_subdivision(host, aux, clique_cert((0, 1, 2, 3)), real)


def test_induced_path_reduce():
    path = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert induced_path_reduce(path, range(5), 0, 4) == [0, 1, 2, 3, 4]
    assert induced_path_reduce(cycle_graph(6), range(6), 0, 3) == [0, 1, 2, 3]
    # two overlapping walks whose union has a shortcut 1-5
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 5)])
    reduced = induced_path_reduce(g, range(7), 0, 6)
    assert reduced == [0, 1, 5, 6]
