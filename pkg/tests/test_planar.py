import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_isomorphic, maximal_planar_graphs, planar_code_file
from treecolor.enumerator import generate
from treecolor.planar import (
    PLANAR_CODE_HEADER,
    BadHeader,
    InvalidTriangulation,
    NotATriangulation,
    TruncatedRecord,
    Triangulation,
    bipyramid,
    canonical_code,
    encode_record,
    faces,
    format_edge_list,
    icosahedron,
    is_isomorphic,
    iter_planar_code,
    k4,
    octahedron,
    parse_edge_list,
    parse_planar_code,
    write_planar_code,
)

K4_RECORD = bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])


def test_k4_record_decodes():
    (t,) = parse_planar_code(PLANAR_CODE_HEADER + K4_RECORD)
    assert (t.n, t.m, len(faces(t))) == (4, 6, 4)


def test_header_only_is_empty():
    assert parse_planar_code(PLANAR_CODE_HEADER) == []
    assert write_planar_code([]) == PLANAR_CODE_HEADER


def test_bad_header():
    with pytest.raises(BadHeader):
        parse_planar_code(b"<<planar_code>>" + K4_RECORD)


def test_truncated_record_keeps_earlier_graphs():
    data = PLANAR_CODE_HEADER + K4_RECORD + K4_RECORD[:7]
    items = list(iter_planar_code(data))
    assert isinstance(items[0][1], Triangulation)
    assert items[1][0] == 1 and isinstance(items[1][1], TruncatedRecord)
    with pytest.raises(TruncatedRecord):
        parse_planar_code(data)


def test_non_triangulation_record_reports_index():
    # K4 with one direction of an edge missing
    bad = bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 0])
    items = list(iter_planar_code(PLANAR_CODE_HEADER + K4_RECORD + bad + K4_RECORD))
    assert [i for i, _ in items] == [0, 1, 2]
    assert isinstance(items[1][1], NotATriangulation) and items[1][1].index == 1
    assert isinstance(items[2][1], Triangulation)


def test_seven_vertex_file_matches_oracle():
    oracle = maximal_planar_graphs(7)
    graphs = parse_planar_code(planar_code_file(oracle))
    assert len(graphs) == 5
    again = parse_planar_code(write_planar_code(graphs))
    assert len({canonical_code(t) for t in again}) == 5


def test_round_trip_is_byte_identical():
    graphs = generate(8)
    data = write_planar_code(graphs)
    assert write_planar_code(parse_planar_code(data)) == data
    assert [canonical_code(t) for t in parse_planar_code(data)] == [canonical_code(t) for t in graphs]


def test_face_counts():
    assert len(faces(k4())) == 4
    assert len(faces(octahedron())) == 8
    for t in generate(11)[:25]:
        assert len(faces(t)) == 18


def test_faces_partition_darts(all_small):
    for t in all_small:
        darts = [(f[i], f[(i + 1) % 3]) for f in faces(t) for i in range(3)]
        assert len(darts) == len(set(darts)) == 2 * t.m


def test_invariants_on_generated(all_small):
    for t in all_small:
        assert t.m == 3 * t.n - 6
        assert t.min_degree() >= 3
        assert nx.check_planarity(t.to_networkx())[0]


def test_k4_relabelings_share_code():
    base = canonical_code(k4())
    for perm in itertools.permutations(range(4)):
        assert canonical_code(k4().relabel(perm)) == base


def test_six_vertex_codes_distinct():
    a, b = generate(6)
    assert canonical_code(a) != canonical_code(b)
    assert not brute_isomorphic(a.edges, b.edges, 6)
    assert {tuple(sorted(t.degrees)) for t in (a, b)} == {(4,) * 6, (3, 3, 4, 4, 5, 5)}


def test_mirror_code_n8():
    for t in generate(8):
        assert canonical_code(t.mirror()) == canonical_code(t)


def test_codes_agree_with_networkx_isomorphism():
    graphs = generate(8)
    rng = random.Random(3)
    for a, b in itertools.combinations(graphs, 2):
        assert not nx.is_isomorphic(a.to_networkx(), b.to_networkx())
    for t in graphs:
        perm = list(range(t.n))
        rng.shuffle(perm)
        u = t.relabel(perm)
        assert is_isomorphic(t, u)
        assert nx.is_isomorphic(t.to_networkx(), u.to_networkx())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_code_invariant_under_relabel_and_reflection(data):
    n = data.draw(st.integers(4, 9))
    graphs = generate(n)
    t = graphs[data.draw(st.integers(0, len(graphs) - 1))]
    perm = data.draw(st.permutations(range(n)))
    u = t.relabel(perm)
    if data.draw(st.booleans()):
        u = u.mirror()
    # re-rooting: rotate each rotation list
    shifts = data.draw(st.lists(st.integers(0, 11), min_size=n, max_size=n))
    u = Triangulation([r[s % len(r):] + r[: s % len(r)] for r, s in zip(u.rotation, shifts)])
    assert canonical_code(u) == canonical_code(t)


def test_from_edges_rejects_non_triangulations():
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3), (3, 4)])
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    k5 = list(itertools.combinations(range(5), 2))
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_edges(5, k5)


def test_rotation_validation():
    with pytest.raises(InvalidTriangulation):
        Triangulation([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 1]])
    # faces do not close up when one rotation is reversed inconsistently
    rot = [list(r) for r in octahedron().rotation]
    rot[0][0], rot[0][1] = rot[0][1], rot[0][0]
    with pytest.raises(InvalidTriangulation):
        Triangulation(rot)


def test_edge_list_round_trip():
    for t in (k4(), bipyramid(3), octahedron(), icosahedron()):
        u = parse_edge_list(format_edge_list(t))
        assert u.edges == t.edges
        assert canonical_code(u) == canonical_code(t)
    with pytest.raises(InvalidTriangulation):
        parse_edge_list("4 6\n0 1\n")


def test_encode_record_layout():
    rec = encode_record(k4())
    assert rec[0] == 4 and rec.count(0) == 4 and len(rec) == 1 + 4 * 4
