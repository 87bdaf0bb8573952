import pytest

from treecolor.colorer import Valid, all_colorings, solve, verify
from treecolor.enumerator import generate
from treecolor.planar import bipyramid, canonical_code, icosahedron, k4, octahedron
from treecolor.structure import classify, odd_profile
from treecolor.wheel import (
    ContractionError,
    MergedPairColorsDiffer,
    NeighborsAdjacent,
    NotFourVertex,
    NotMpg4Input,
    ResultDegreeBelow3,
    ResultNotSimple,
    coloring_guided_pair,
    contract,
    contractible_vertices,
    inherited_coloring,
    opposite_pairs,
    rim_is_induced,
    wheel_at,
)


def _legal_contractions(t):
    for v in range(t.n):
        if t.degrees[v] != 4:
            continue
        for u, w in opposite_pairs(t, v):
            try:
                yield contract(t, v, u, w)
            except ContractionError:
                continue


def test_wheel_sizes():
    assert all(wheel_at(octahedron(), v).size == 4 for v in range(6))
    assert all(wheel_at(k4(), v).size == 3 for v in range(4))
    assert all(wheel_at(icosahedron(), v).size == 5 for v in range(12))


def test_rim_is_a_cycle():
    t = octahedron()
    for v in range(t.n):
        rim = wheel_at(t, v).rim
        assert all(t.has_edge(rim[i], rim[(i + 1) % 4]) for i in range(4))
        assert rim_is_induced(t, v)


def test_merged_degree_five_plus_five():
    seen = 0
    for n in (9, 10):
        for t in generate(n):
            for c in _legal_contractions(t):
                u, w = c.merged
                if t.degrees[u] == t.degrees[w] == 5:
                    assert c.result.degrees[c.merged_vertex] == 6
                    seen += 1
    assert seen


def test_octahedron_contraction_not_simple():
    t = octahedron()
    for v in range(t.n):
        for u, w in opposite_pairs(t, v):
            with pytest.raises(ResultNotSimple):
                contract(t, v, u, w)


def test_low_flank_degree():
    # vertex 0 of the bipyramid has rim 1, apex, 2, apex; the flanks 1 and 2 have degree 4
    t = bipyramid(3)
    with pytest.raises(ResultDegreeBelow3):
        contract(t, 0, 3, 4)
    with pytest.raises(NeighborsAdjacent):
        contract(t, 0, 1, 2)


def test_not_four_vertex():
    with pytest.raises(NotFourVertex):
        contract(icosahedron(), 0, 1, 3)


def test_degree_identities(all_small):
    count = 0
    for t in all_small:
        for c in _legal_contractions(t):
            u, w = c.merged
            x, y = c.flank
            res = c.result
            assert res.n == t.n - 2 and res.m == t.m - 6
            assert res.degrees[c.merged_vertex] == t.degrees[u] + t.degrees[w] - 4
            assert res.degrees[c.mapping[x]] == t.degrees[x] - 2
            assert res.degrees[c.mapping[y]] == t.degrees[y] - 2
            for z, dz in c.degree_deltas().items():
                if z not in (u, w, x, y):
                    assert dz == 0
            assert odd_profile(res).euler_deficit == -12
            count += 1
    assert count > 100


def test_contraction_result_is_generated(levels):
    # deleting the centre and merging a pair removes two vertices
    for n in range(6, 11):
        smaller = {canonical_code(t) for t in levels[n - 2]}
        for t in levels[n]:
            for c in _legal_contractions(t):
                assert canonical_code(c.result) in smaller


def test_inherited_coloring_small_instances():
    # below n=8 every coloring-guided pair has adjacent flanks
    done = 0
    for n in (8, 9):
        for t in generate(n):
            for f in all_colorings(t, up_to_color_permutation=True):
                for v in range(t.n):
                    if t.degrees[v] != 4:
                        continue
                    pair = coloring_guided_pair(t, f, v)
                    try:
                        c = contract(t, v, *pair)
                    except ContractionError:
                        continue
                    g = inherited_coloring(f, c)
                    assert c.result.n == n - 2
                    assert g[c.merged_vertex] == f[pair[0]]
                    assert verify(c.result, g) == Valid()
                    done += 1
    assert done


def test_merged_pair_colors_differ():
    t = next(t for t in generate(9) if any(True for _ in _legal_contractions(t)))
    c = next(_legal_contractions(t))
    u, w = c.merged
    f = {v: 1 for v in range(t.n)}
    f[w] = 2
    with pytest.raises(MergedPairColorsDiffer):
        inherited_coloring(f, c)


def test_contractible_vertices_census():
    (g8,) = [t for t in generate(8) if classify(t).in_mpg4]
    assert contractible_vertices(g8) == []
    with pytest.raises(NotMpg4Input):
        contractible_vertices(icosahedron())


def test_contractible_vertices_n11_consistent():
    (g11,) = [t for t in generate(11) if classify(t).in_mpg4]
    expected = []
    for v in range(g11.n):
        if g11.degrees[v] != 4:
            continue
        for a, b in opposite_pairs(g11, v):
            u, w = min(a, b), max(a, b)
            try:
                c = contract(g11, v, u, w)
            except ContractionError:
                continue
            res = c.result
            f, _ = solve(res)
            if (
                res.n > 4
                and classify(res).is_4connected
                and f is not None
                and sum(d % 2 for d in res.degrees) == 4
            ):
                expected.append((v, u, w))
    assert contractible_vertices(g11) == expected
