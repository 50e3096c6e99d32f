import pytest
from hypothesis import given

from signed_inertia import EdgeProfile, GraphFormatError, Parity, SignedGraph, find_1_separations, parse
from signed_inertia.signed_graph import first_1_separation, select_separation

from conftest import signed_graphs


def test_parse_single_vertex():
    G = parse("n 1")
    assert G.n == 1 and G.edges == ()


def test_parse_odd_path_and_comments():
    G = parse("# a path\nn 3\ne 1 2 o   # first\n\ne 2 3 o\n")
    assert G.n == 3
    assert G.edge_profile(1, 2) is EdgeProfile.ODD_ONLY
    assert G.edge_profile(2, 3) is EdgeProfile.ODD_ONLY


def test_parse_both_parity_loops():
    G = parse("n 2\ne 1 1 o\ne 1 1 e\ne 1 2 e")
    assert G.edge_profile(1, 1) is EdgeProfile.BOTH
    assert G.edge_profile(1, 2) is EdgeProfile.EVEN_ONLY
    assert G.edge_profile(2, 2) is EdgeProfile.NONE


@pytest.mark.parametrize("text, fragment", [
    ("", "n"),
    ("n -1", "n"),
    ("n 2\ne 1 3 o", "line 2"),
    ("n 2\ne 1 2 x", "line 2"),
    ("n 2\nq 1 2 o", "line 2"),
    ("n 2\nn 2", "line 2"),
])
def test_parse_rejects_malformed(text, fragment):
    with pytest.raises(GraphFormatError) as info:
        parse(text)
    assert fragment in str(info.value)


@given(signed_graphs())
def test_serialize_round_trip(G):
    assert parse(G.serialize()) == G
    assert parse(G.serialize()).serialize() == G.serialize()


def test_edge_multiset_equality_ignores_order():
    a = SignedGraph.build(2, [(1, 2, "o"), (2, 1, "e")])
    b = SignedGraph.build(2, [(1, 2, "e"), (1, 2, "o")])
    assert a == b and hash(a) == hash(b)
    assert a != SignedGraph.build(2, [(1, 2, "e"), (1, 2, "o"), (1, 2, "o")])


def test_edge_profile_queries():
    G = parse("n 3\ne 1 2 o\ne 1 2 e\ne 2 3 o")
    assert G.edge_profile(1, 2) is EdgeProfile.ODD_ONLY.union(EdgeProfile.EVEN_ONLY)
    assert G.edge_profile(2, 1) is EdgeProfile.BOTH
    assert G.edge_profile(1, 3) is EdgeProfile.NONE
    with pytest.raises(IndexError):
        G.edge_profile(0, 1)


@pytest.mark.parametrize("prof, signs", [
    (EdgeProfile.NONE, (0,)),
    (EdgeProfile.ODD_ONLY, (1,)),
    (EdgeProfile.EVEN_ONLY, (-1,)),
    (EdgeProfile.BOTH, (-1, 0, 1)),
])
def test_allowed_signs(prof, signs):
    assert prof.allowed_signs() == signs
    for s in (-1, 0, 1):
        assert prof.allows(s) == (s in signs)


def test_delete_vertex():
    assert parse("n 1").delete_vertex(1).n == 0
    path = parse("n 3\ne 1 2 o\ne 2 3 o")
    mid = path.delete_vertex(2)
    assert mid.n == 2 and mid.edges == ()
    tri = parse("n 3\ne 1 2 o\ne 2 3 e\ne 1 3 o")
    for v in (1, 2, 3):
        assert len(tri.delete_vertex(v).edges) == 1


def test_augment_loop():
    assert parse("n 1").augment_loop(1, Parity.EVEN).loops(1) == [Parity.EVEN]
    G = parse("n 1\ne 1 1 o").augment_loop(1, Parity.ODD)
    assert G.loops(1) == [Parity.ODD, Parity.ODD]
    path = parse("n 3\ne 1 2 o\ne 2 3 o").augment_loop(2, Parity.ODD)
    assert path.edge_profile(2, 2) is EdgeProfile.ODD_ONLY


def test_components_and_relabel():
    G = parse("n 5\ne 1 3 o\ne 4 5 e\ne 5 5 o")
    assert G.components() == [[1, 3], [2], [4, 5]]
    sub = G.induced_relabel([4, 5])
    assert sub == parse("n 2\ne 1 2 e\ne 2 2 o")


def test_path_separation_at_middle():
    path = parse("n 3\ne 1 2 o\ne 2 3 o")
    seps = find_1_separations(path)
    assert [s.v for s in seps] == [2]
    s = seps[0]
    assert s.map1 == (1, 2) and s.map2 == (2, 3)
    assert s.g1 == s.g2 == parse("n 2\ne 1 2 o")
    assert s.layout == (1, 2, 3)


def test_two_connected_graph_has_no_separation():
    tri = parse("n 3\ne 1 2 o\ne 2 3 e\ne 1 3 o")
    assert find_1_separations(tri) == []
    assert first_1_separation(tri) is None


def test_isolated_vertices_separate_at_each_vertex():
    seps = find_1_separations(parse("n 3"))
    assert [(s.v, s.map1, s.map2) for s in seps] == [
        (1, (2, 1), (1, 3)), (2, (1, 2), (2, 3)), (3, (1, 3), (3, 2))]
    for s in seps:
        assert s.g1.n == s.g2.n == 2


def test_loops_at_cut_vertex_may_go_either_way():
    G = parse("n 3\ne 1 2 o\ne 2 3 o\ne 2 2 o")
    seps = find_1_separations(G)
    assert len(seps) == 2
    assert sorted(len(s.edges1) for s in seps) == [1, 2]
    chosen = select_separation(G, 2, [1], loops_on_side1=1)
    assert chosen.g1.edge_profile(2, 2) is EdgeProfile.ODD_ONLY
    with pytest.raises(ValueError):
        select_separation(G, 1, [3])


@given(signed_graphs(max_n=5))
def test_separations_partition_edges(G):
    for s in find_1_separations(G):
        assert s.vertices1 & s.vertices2 == {s.v}
        assert s.vertices1 | s.vertices2 == set(G.vertices)
        assert len(s.vertices1) > 1 and len(s.vertices2) > 1
        assert SignedGraph(G.n, s.edges1 + s.edges2) == G
        assert len(s.g1.edges) == len(s.edges1) and len(s.g2.edges) == len(s.edges2)
