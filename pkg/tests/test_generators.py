import pytest

from indsub.errors import ConstructionFailed, InvalidInput, UnknownName
from indsub.generators import gen_named, gen_planted, gen_regular_high_girth
from indsub.graph import girth
from indsub.probabilistic import RandomSource


@pytest.mark.parametrize("name,n,m,gi", [
    ("petersen", 10, 15, 5), ("heawood", 14, 21, 6), ("mcgee", 24, 36, 7),
    ("k4", 4, 6, 3), ("k5", 5, 10, 3), ("k33", 6, 9, 4), ("cycle:7", 7, 7, 7),
    ("grid:3x4", 12, 17, 4),
])
def test_named(name, n, m, gi):
    g = gen_named(name)
    assert (g.n, g.m, girth(g)) == (n, m, gi)


def test_unknown_names():
    for bad in ("nope", "cycle:x", "grid:3"):
        with pytest.raises(UnknownName):
            gen_named(bad)


@pytest.mark.parametrize("n,d,g_min", [(10, 3, 5), (50, 3, 7), (60, 6, 3), (60, 20, 3)])
def test_regular_high_girth(n, d, g_min):
    g = gen_regular_high_girth(n, d, g_min, RandomSource(2))
    assert g.n == n and set(g.degrees) == {d}
    assert girth(g) >= g_min


def test_regular_is_deterministic():
    a = gen_regular_high_girth(40, 3, 6, RandomSource(8))
    b = gen_regular_high_girth(40, 3, 6, RandomSource(8))
    assert a.edges() == b.edges()


def test_regular_rejects_below_moore():
    with pytest.raises(InvalidInput):
        gen_regular_high_girth(12, 3, 6, RandomSource(0))
    with pytest.raises(InvalidInput):
        gen_regular_high_girth(7, 3, 3, RandomSource(0))


@pytest.mark.parametrize("kind", ["unbalanced", "largesub", "connectedgood", "case1",
                                  "maxdegree", "case2", "adense"])
def test_planted_kinds_pass_manifest(kind):
    inst = gen_planted(kind, None, RandomSource(7))
    assert inst.manifest and all(ok for _, ok in inst.manifest)
    for role in inst.roles.values():
        assert all(0 <= v < inst.graph.n for v in role)
    again = gen_planted(kind, None, RandomSource(7))
    assert again.graph.edges() == inst.graph.edges() and again.roles == inst.roles


def test_planted_errors():
    with pytest.raises(UnknownName):
        gen_planted("mystery", None, RandomSource(0))
    with pytest.raises(ConstructionFailed):
        gen_planted("unbalanced", {"m": 5, "ratio": 50}, RandomSource(0))
