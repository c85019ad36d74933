import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import cubic_graphs
from snarktools.canon import are_isomorphic, automorphism_group_order, automorphisms, canonical_form, canonical_labelling
from snarktools.constructions import blanusa1, blanusa2, block, k4, k33, petersen
from snarktools.graph import from_graph6
from snarktools.subgraphs import copy_vertex_sets, disjoint_packings, find_induced_copies


def shuffled(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def test_known_orders():
    assert automorphism_group_order(petersen()) == 120
    assert automorphism_group_order(k4()) == 24
    assert automorphism_group_order(k33()) == 72
    assert automorphism_group_order(blanusa1()) == 8
    assert automorphism_group_order(blanusa2()) == 4
    assert not are_isomorphic(blanusa1(), blanusa2())


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(max_n=20, connected=False), st.integers(0, 10**6))
def test_relabel_invariance(g, seed):
    h = shuffled(g, seed)
    assert canonical_form(g) == canonical_form(h)
    assert from_graph6(canonical_form(g)) == g.relabel(canonical_labelling(g))


@settings(max_examples=25, deadline=None)
@given(cubic_graphs(max_n=14, connected=False))
def test_aut_matches_networkx(g):
    assert automorphism_group_order(g) == oracles.automorphism_count(g.n, list(g.edges))


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(min_n=10, max_n=12), cubic_graphs(min_n=10, max_n=12))
def test_isomorphism_decision_matches_networkx(g, h):
    assert are_isomorphic(g, h) == oracles.isomorphic(g.n, list(g.edges), h.n, list(h.edges))


def test_automorphisms_are_valid():
    g = petersen()
    auts = automorphisms(g)
    assert len(auts) == 120 and auts[0] == tuple(range(10))
    edges = set(g.edges)
    for sigma in auts:
        assert {tuple(sorted((sigma[u], sigma[v]))) for u, v in edges} == edges


def test_budgeted_call_agrees():
    assert canonical_form(petersen(), budget=10**6) == canonical_form(petersen())


def test_induced_copies_of_I_in_petersen():
    # I is Petersen minus an edge's ends; every edge gives 8 vertices
    sets = copy_vertex_sets(petersen(), block("I"))
    assert len(sets) == 15 and all(len(s) == 8 for s in sets)


def test_copies_count_against_automorphisms():
    # copies of Petersen in itself are exactly its automorphisms
    assert len(find_induced_copies(petersen(), petersen())) == 120


def test_non_induced_copies():
    c4 = k4()
    assert len(find_induced_copies(k33(), c4, induced=False)) == 0
    assert len(find_induced_copies(c4, c4, induced=False)) == 24


def test_disjoint_packings():
    a = [frozenset({1, 2}), frozenset({3, 4}), frozenset({2, 3})]
    b = [frozenset({5}), frozenset({1})]
    packs = list(disjoint_packings([("A", a, 2), ("B", b, 1)]))
    assert [("A", frozenset({1, 2})), ("A", frozenset({3, 4})), ("B", frozenset({5}))] in packs
    assert all(len(set().union(*(s for _, s in p))) == 5 for p in packs)
