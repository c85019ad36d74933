import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import cubic_graphs
from snarktools.budget import BudgetExhausted
from snarktools.constructions import blanusa1, k4, k33, petersen
from snarktools.graph import CubicGraph
from snarktools.matchings import (
    BridgeError,
    gamma2,
    is_perfect_matching,
    measure_report,
    mu3,
    odd_circuit_count,
    oddness,
    perfect_matching_index,
    perfect_matchings,
    resistance,
    two_factor_circuits,
    weak_oddness,
)


def edges_of(g):
    return g.n, list(g.edges)


def bridged() -> CubicGraph:
    # two K4s with one edge subdivided each, the new vertices joined by a bridge
    edges = []
    for off in (0, 5):
        a, b, c, d, s = (off + i for i in range(5))
        edges += [(a, c), (a, d), (b, c), (b, d), (c, d), (a, s), (b, s)]
    edges.append((4, 9))
    return CubicGraph(10, edges)


def bipartite_cubic(half: int, rng: random.Random) -> CubicGraph:
    while True:
        edges = set()
        for _ in range(3):
            perm = list(range(half))
            rng.shuffle(perm)
            edges |= {(i, half + perm[i]) for i in range(half)}
        if len(edges) == 3 * half:
            return CubicGraph(2 * half, edges)


def permanent(g: CubicGraph, half: int) -> int:
    return sum(all(g.has_edge(i, half + p[i]) for i in range(half)) for p in itertools.permutations(range(half)))


def test_small_counts():
    assert len(perfect_matchings(petersen())) == 6
    assert len(perfect_matchings(k4())) == 3
    assert len(perfect_matchings(k33())) == 6


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(max_n=14, connected=False))
def test_matchings_match_oracle(g):
    ours = {frozenset(i for i in range(g.m) if pm >> i & 1) for pm in perfect_matchings(g)}
    assert ours == set(oracles.perfect_matchings(*edges_of(g)))
    assert all(is_perfect_matching(g, pm) for pm in perfect_matchings(g))


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6), st.integers(0, 10**6))
def test_bipartite_count_is_permanent(half, seed):
    g = bipartite_cubic(half, random.Random(seed))
    assert len(perfect_matchings(g)) == permanent(g, half)


def test_pm_cap():
    with pytest.raises(BudgetExhausted):
        perfect_matchings(petersen(), cap=3)


def test_two_factor_circuits_of_petersen():
    g = petersen()
    for pm in perfect_matchings(g):
        circuits = two_factor_circuits(g, pm)
        assert sorted(len(c) for c in circuits) == [5, 5]
        assert odd_circuit_count(g, pm) == 2


def test_known_values():
    p = petersen()
    assert oddness(p, mode="direct").value == 2
    assert resistance(p).value == 2
    assert resistance(p, kind="vertex").value == 2
    assert perfect_matching_index(p).value == 5
    assert gamma2(p).value == 1
    assert mu3(p).value == 3
    assert weak_oddness(p, "direct").value == 2
    for g in (k4(), k33()):
        assert oddness(g, mode="direct").value == 0
        assert resistance(g).value == 0
        assert perfect_matching_index(g).value == 3
        assert gamma2(g).value == 0
        assert mu3(g).value == 0
        assert weak_oddness(g, "direct").value == 0


def test_known_values_by_oracle():
    for g in (petersen(), k4(), k33()):
        n, e = edges_of(g)
        assert oddness(g, mode="direct").value == oracles.oddness(n, e)
        assert resistance(g).value == oracles.edge_resistance(n, e)
        assert resistance(g, kind="vertex").value == oracles.vertex_resistance(n, e)
        assert perfect_matching_index(g).value == oracles.perfect_matching_index(n, e)
        assert gamma2(g).value == oracles.gamma2(n, e)
        assert mu3(g).value == oracles.mu3(n, e)
        assert weak_oddness(g, "direct").value == oracles.weak_oddness(n, e)


def test_blanusa_values():
    g = blanusa1()
    n, e = edges_of(g)
    assert oddness(g, mode="direct").value == oracles.oddness(n, e) == 2
    assert resistance(g).value == 2
    assert perfect_matching_index(g).value == oracles.perfect_matching_index(n, e)


@settings(max_examples=30, deadline=None)
@given(cubic_graphs(max_n=12, bridgeless=True))
def test_measures_match_oracle(g):
    n, e = edges_of(g)
    assert oddness(g, mode="direct").value == oracles.oddness(n, e)
    assert resistance(g).value == oracles.edge_resistance(n, e)
    assert perfect_matching_index(g).value == oracles.perfect_matching_index(n, e)
    assert gamma2(g).value == oracles.gamma2(n, e)
    assert mu3(g).value == oracles.mu3(n, e)


@settings(max_examples=15, deadline=None)
@given(cubic_graphs(max_n=10, bridgeless=True))
def test_weak_oddness_matches_oracle(g):
    assert weak_oddness(g, "direct").value == oracles.weak_oddness(*edges_of(g))


def test_bound_assisted_oddness():
    res = oddness(petersen(), mode="bound_assisted")
    assert res.value == 2 and not res.exhaustive
    res = oddness(petersen(), mode="bound_assisted", rho=2)
    assert res.value == 2
    with pytest.raises(ValueError):
        oddness(petersen(), mode="nonsense")


def test_bound_assisted_weak_oddness():
    assert weak_oddness(petersen(), "bound_assisted", rho=2, omega=2).value == 2
    w = weak_oddness(petersen(), "bound_assisted", rho=3, omega=6)
    assert w.value is None and (w.lower, w.upper) == (4, 6)
    assert weak_oddness(petersen(), "bound_assisted", rho=3, omega=4).value == 4
    with pytest.raises(ValueError):
        weak_oddness(petersen(), "bound_assisted")


def test_direct_weak_oddness_refused_when_large():
    g = blanusa1()
    with pytest.raises(ValueError):
        weak_oddness(g, "direct", max_direct_order=12)


def test_resistance_witness_and_cap():
    res = resistance(petersen())
    assert res.value == 2 and len(res.witness) == 2
    gone = set(res.witness)
    assert all((c == 0) == (i in gone) for i, c in enumerate(res.colouring))
    assert oracles.colourable(10, list(petersen().edges), frozenset(res.witness))
    capped = resistance(petersen(), cap=1)
    assert capped.capped and capped.value is None


def test_bridge_errors():
    g = bridged()
    for fn in (oddness, perfect_matching_index, gamma2, mu3):
        with pytest.raises(BridgeError):
            fn(g)
    rep = measure_report(g)
    assert rep.mode_flags.get("bridge") is True and rep.omega is None


def test_measure_report_petersen():
    rep = measure_report(petersen(), vertex_resistance=True)
    assert (rep.omega, rep.resistance, rep.resistance_vertex) == (2, 2, 2)
    assert (rep.pmi, rep.gamma2, rep.mu3, rep.weak_oddness) == (5, 1, 3, 2)
    assert rep.perfect_matchings == 6
    assert rep.mode_flags["omega"] == "bound_assisted"
    assert sorted(rep.witnesses["omega"]["circuit_lengths"]) == [5, 5]
    d = rep.to_dict()
    assert d["omega"] == 2


def test_measure_report_only_and_budget():
    rep = measure_report(petersen(), only=["gamma2"])
    assert rep.gamma2 == 1 and rep.resistance is None
    tight = measure_report(petersen(), budget=5)
    assert "undecided" in tight.budget_flags.values()
