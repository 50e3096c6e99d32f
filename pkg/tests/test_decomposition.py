import json

import pytest
from hypothesis import given, settings

from signed_inertia import (
    BudgetExhausted,
    PairSet,
    SymMat,
    find_1_separations,
    formula_minimal,
    formula_terms,
    leq,
    membership,
    minimal,
    minimum_rank,
    minkowski_add,
    oracle_inertia,
    parse,
    pin,
    verify_equivalence,
    witness_for_pair,
)
from signed_inertia.corpus import fixture, load_corpus
from signed_inertia.decomposition import side_graphs, simplify

from conftest import signed_graphs


# -- sampling oracle

def test_oracle_single_vertex():
    rep = oracle_inertia(parse("n 1"), budget=20)
    assert rep.pairs == PairSet([(0, 0)])
    assert rep.branches == 1 and rep.branch_coverage == 1.0


def test_oracle_single_odd_edge():
    rep = oracle_inertia(parse("n 2\ne 1 2 o"), budget=50)
    assert rep.pairs == PairSet([(1, 1)])


def test_oracle_branch_count_and_witnesses():
    G = parse("n 2\ne 1 2 o\ne 1 2 e\ne 1 1 o\ne 1 1 e")
    rep = oracle_inertia(G, budget=10, seed=3)
    assert rep.branches == 9
    for pr, W in rep.witnesses.items():
        assert membership(W, G) and pin(W) == pr
    assert minimal(rep.pairs) == PairSet([(0, 0)])


def test_oracle_is_seeded():
    G = fixture("path2_mixed")
    a, b = oracle_inertia(G, 30, seed=4), oracle_inertia(G, 30, seed=4)
    assert a.pairs == b.pairs and a.samples == b.samples
    assert a.to_dict() == b.to_dict()


def test_oracle_sample_cap():
    G = parse("n 2\ne 1 2 o\ne 1 2 e\ne 1 1 o\ne 1 1 e")
    with pytest.raises(BudgetExhausted):
        oracle_inertia(G, budget=100, sample_cap=1000)


# -- recursive formula

@pytest.mark.parametrize("name, frontier", [
    ("single_vertex", [(0, 0)]),
    ("path2_odd", [(1, 1)]),
    ("isolated3", [(0, 0)]),
    ("path2_odd_loops", [(2, 0)]),
    ("path2_mixed", [(1, 2)]),
])
def test_formula_fixture_frontiers(name, frontier):
    front, _ = formula_minimal(fixture(name), budget=100)
    assert front == PairSet(frontier)


def test_side_graphs_of_path():
    sep = find_1_separations(fixture("path2_odd"))[0]
    sides = side_graphs(sep)
    assert sides["G1-v"] == parse("n 1")
    assert sides["G1_E"] == parse("n 2\ne 1 2 o\ne 2 2 e")
    assert sides["G2_O"] == parse("n 2\ne 1 2 o\ne 1 1 o")


def test_simplify_keeps_profiles():
    G = parse("n 2\ne 1 2 o\ne 1 2 o\ne 1 1 e\ne 1 1 e\ne 1 1 o")
    S = simplify(G)
    assert S.profiles() == G.profiles() and len(S.edges) == 3


def test_components_add():
    G = parse("n 4\ne 1 2 o\ne 3 3 e\ne 4 4 o")
    front, tree = formula_minimal(G)
    assert tree.kind == "components"
    parts = [formula_minimal(G.induced_relabel(c))[0] for c in G.components()]
    total = PairSet([(0, 0)])
    for p in parts:
        total = minkowski_add(total, p)
    assert front == minimal(total) == PairSet([(2, 2)])


def test_base_case_uses_oracle():
    tri = parse("n 3\ne 1 2 o\ne 2 3 e\ne 1 3 o")
    front, tree = formula_minimal(tri)
    assert tree.kind == "base"
    assert front == oracle_inertia(tri).frontier


@pytest.mark.parametrize("name, G", [(n, g) for n, g in load_corpus() if len(find_1_separations(g)) > 1][:8])
def test_separation_choice_does_not_matter(name, G):
    fronts = {formula_terms(G, sep, budget=60)[1] for sep in find_1_separations(G)}
    assert len(fronts) == 1, name


def test_minimum_rank():
    assert minimum_rank(parse("n 1")) == 0
    assert minimum_rank(parse("n 2\ne 1 2 o")) == 2


@settings(max_examples=15)
@given(signed_graphs(max_n=4, max_edges=6))
def test_formula_sound_against_oracle(G):
    front, _ = formula_minimal(G, budget=20)
    assert leq(oracle_inertia(G, budget=20).pairs, front)


# -- witnesses

def test_witness_odd_path():
    G = fixture("path2_odd")
    _, tree = formula_minimal(G)
    W = witness_for_pair(G, (1, 1), tree)
    assert W == SymMat([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def test_witness_isolated():
    G = fixture("isolated3")
    _, tree = formula_minimal(G)
    assert witness_for_pair(G, (0, 0), tree) == SymMat.zeros(3)


def test_witness_looped_path():
    G = fixture("path2_odd_loops")
    _, tree = formula_minimal(G)
    W = witness_for_pair(G, (2, 0), tree)
    assert membership(W, G) and pin(W) == (2, 0)


def test_witness_unknown_pair():
    G = fixture("path2_odd")
    _, tree = formula_minimal(G)
    with pytest.raises(KeyError):
        witness_for_pair(G, (0, 0), tree)


@pytest.mark.parametrize("name, G", load_corpus()[::4])
def test_corpus_witnesses(name, G):
    front, tree = formula_minimal(G, budget=60)
    for pr in front:
        W = witness_for_pair(G, pr, tree)
        assert membership(W, G) and pin(W).leq(pr)


# -- verification report

def test_verify_report_shape():
    rep = verify_equivalence(fixture("isolated3"), budget=50, seed=7)
    assert rep.ok
    doc = json.loads(rep.to_json())
    assert set(doc) == {"graph", "frontier", "tree", "oracle", "cong", "sound", "violations"}
    assert doc["frontier"] == [[0, 0]]
    assert set(doc["oracle"]) >= {"pairs", "samples", "seed"}
    assert doc["tree"]["kind"] == "components"
    assert rep.to_json() == verify_equivalence(fixture("isolated3"), budget=50, seed=7).to_json()
