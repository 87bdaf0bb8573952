import itertools

import networkx as nx
import pytest

from oracles import all_proper_colorings, brute_acyclic_colorings, brute_tree_colorings
from treecolor.colorer import (
    BichromaticCycle,
    Improper,
    MissingVertex,
    Valid,
    all_colorings,
    count_colorings,
    format_coloring,
    parse_coloring,
    search_order,
    solve,
    verify,
)
from treecolor.enumerator import generate
from treecolor.planar import bipyramid, icosahedron, k4, octahedron
from treecolor.structure import classify


def _partitions(colorings):
    """Colour-class partitions of a set of colourings."""
    out = set()
    for col in colorings:
        classes = {}
        for v, c in enumerate(col):
            classes.setdefault(c, []).append(v)
        out.add(frozenset(frozenset(vs) for vs in classes.values()))
    return out


def test_k4_rainbow_is_valid():
    assert verify(k4(), [1, 2, 3, 4]) == Valid()


def test_octahedron_antipodal_coloring_has_cycles():
    t = octahedron()
    # equator 0,1,2,3 with apexes 4,5; antipodal pairs share a colour
    f = {0: 1, 2: 1, 1: 2, 3: 2, 4: 3, 5: 3}
    verdict = verify(t, f)
    assert isinstance(verdict, BichromaticCycle)
    assert verdict.pair == (1, 2) and len(verdict.cycle) == 4
    g = t.to_networkx()
    for a, b in itertools.combinations((1, 2, 3), 2):
        h = g.subgraph(v for v in f if f[v] in (a, b))
        assert h.number_of_nodes() == 4 and nx.cycle_basis(h) and all(d == 2 for _, d in h.degree)


def test_bipyramid_coloring_valid():
    # equator x,y,z = 0,1,2 and apexes a,b = 3,4
    f = {3: 1, 4: 1, 0: 2, 1: 3, 2: 4}
    assert verify(bipyramid(3), f) == Valid()


def test_improper_edge_witness():
    assert verify(k4(), [1, 1, 2, 3]) == Improper((0, 1))
    assert str(verify(k4(), [1, 1, 2, 3])) == "improper edge 0 1"


def test_missing_vertex():
    with pytest.raises(MissingVertex):
        verify(k4(), {0: 1, 1: 2, 2: 3})


def test_solve_k4():
    f, stats = solve(k4())
    assert f is not None and verify(k4(), f) == Valid()
    assert stats.outcome == "found"


def test_solve_octahedron_none_matches_brute_force():
    t = octahedron()
    f, stats = solve(t)
    assert f is None and stats.outcome == "exhausted"
    assert brute_tree_colorings(6, t.edges) == []


def test_ten_vertex_mpg4_graphs_solved():
    mpg4 = [t for t in generate(10) if classify(t).in_mpg4]
    assert len(mpg4) == 2
    for t in mpg4:
        f, _ = solve(t)
        assert f is not None and verify(t, f) == Valid()


def test_counts_small():
    assert count_colorings(k4()) == 24
    assert count_colorings(k4(), up_to_color_permutation=True) == 1
    assert count_colorings(octahedron()) == 0
    ico = icosahedron()
    assert count_colorings(ico) % 24 == 0
    assert all(verify(ico, f) == Valid() for f in all_colorings(ico, up_to_color_permutation=True))


def test_bipyramid_count_matches_brute_force():
    t = bipyramid(3)
    brute = brute_tree_colorings(5, t.edges)
    assert count_colorings(t) == len(brute) == 24 * len(_partitions(brute))
    assert count_colorings(t, up_to_color_permutation=True) == len(_partitions(brute))


def test_all_colorings_k4():
    items = list(all_colorings(k4()))
    assert len(items) == 24
    assert len({tuple(sorted(f.items())) for f in items}) == 24


def test_all_colorings_n8_mpg4():
    (t,) = [t for t in generate(8) if classify(t).in_mpg4]
    items = list(all_colorings(t))
    assert items and len(items) == count_colorings(t)
    assert all(verify(t, f) == Valid() for f in items)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_all_colorings_equal_brute_force(n):
    for t in generate(n):
        ours = {tuple(f[v] for v in range(n)) for f in all_colorings(t)}
        assert ours == set(brute_tree_colorings(n, t.edges))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_acyclic_implies_tree(n):
    # in a triangulation the edge count forces each acyclic bichromatic forest to be a tree
    for t in generate(n):
        assert brute_acyclic_colorings(n, t.edges) == brute_tree_colorings(n, t.edges)


def test_verify_agrees_with_brute_force_n6():
    for t in generate(6):
        trees = set(brute_tree_colorings(6, t.edges))
        for row in all_proper_colorings(6, t.edges):
            col = tuple(int(c) for c in row)
            assert (verify(t, col) == Valid()) == (col in trees)


def test_search_order_starts_with_face():
    t = generate(9)[3]
    order = search_order(t)
    assert sorted(order) == list(range(t.n))
    assert set(order[:3]) == set(t.faces[0])


def test_coloring_text_round_trip():
    f = {0: 1, 1: 2, 2: 3, 3: 4}
    assert parse_coloring(format_coloring(f)) == f
    with pytest.raises(ValueError):
        parse_coloring("0 1\n0 2\n")
