import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import cubic_graphs, random_cubic
from snarktools.colouring import (
    ColourType,
    EdgeSolver,
    FourPoleClass,
    block_N_signature,
    block_T_signature,
    boundary_types,
    check_colouring,
    classify_4pole,
    find_colouring,
    is_colourable,
    iter_colourings,
    parity_holds,
    semiedge_colours,
    type_of,
)
from snarktools.constructions import blanusa1, blanusa2, block, dipole_Z, k4, k33, petersen
from snarktools.graph import delete
from snarktools.matchings import oddness
from snarktools.multipole import Multipole


def oracle_types(m: Multipole) -> set[str]:
    idx = [m.end_of(s)[0] for s in m.semiedges]
    out = set()
    for c in oracles.colourings(m.n, list(m.edges)):
        a, b, x, y = (c[i] for i in idx)
        if a == b == x == y:
            out.add("1111")
        elif a == b and x == y:
            out.add("1122")
        elif a == x and b == y:
            out.add("1212")
        else:
            out.add("1221")
    return out


def test_known_graphs():
    assert is_colourable(k4()) and is_colourable(k33())
    for g in (petersen(), blanusa1(), blanusa2()):
        assert not is_colourable(g)
        assert not oracles.colourable(g.n, list(g.edges))


@settings(max_examples=80, deadline=None)
@given(cubic_graphs(max_n=14, connected=False))
def test_decision_matches_oracle(g):
    assert is_colourable(g) == oracles.colourable(g.n, list(g.edges))
    col = find_colouring(g)
    if col is not None:
        assert check_colouring(g, col)


@settings(max_examples=40, deadline=None)
@given(cubic_graphs(max_n=10, connected=False))
def test_enumeration_count_matches_oracle(g):
    ours = {tuple(c) for c in iter_colourings(g, all_permutations=True)}
    theirs = {tuple(c) for c in oracles.colourings(g.n, list(g.edges))}
    assert ours == theirs


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_multipole_enumeration_matches_oracle(seed):
    rng = random.Random(seed)
    g = random_cubic(rng.choice([6, 8, 10]), seed)
    m = delete(g, vertices=rng.sample(range(g.n), rng.randint(1, 3)))
    ours = {tuple(c) for c in iter_colourings(m, all_permutations=True)}
    theirs = {tuple(c) for c in oracles.colourings(m.n, list(m.edges))}
    assert ours == theirs


def test_removed_edges_and_order():
    g = petersen()
    solver = EdgeSolver.of(g)
    assert solver.colouring() is None
    col = solver.colouring(removed=[0, 7])
    assert col is not None and col[0] == col[7] == 0
    assert check_colouring(g, col)
    # one vertex is not enough, two adjacent ones are
    assert solver.colouring(removed_vertices=[0]) is None
    col = solver.colouring(removed_vertices=[0, 1], order=list(range(g.m))[::-1])
    assert col is not None and all(col[e] == 0 for e in g.inc[0] + g.inc[1])
    assert check_colouring(g, col)


def test_check_colouring_rejects():
    g = k4()
    col = find_colouring(g)
    assert check_colouring(g, col)
    assert not check_colouring(g, [1] * g.m)
    assert not check_colouring(g, [4] + col[1:])


def test_type_of():
    assert type_of((1, 1, 1, 1)) is ColourType.T1111
    assert type_of((2, 2, 3, 3)) is ColourType.T1122
    assert type_of((1, 2, 1, 2)) is ColourType.T1212
    assert type_of((1, 2, 2, 1)) is ColourType.T1221
    with pytest.raises(ValueError):
        type_of((1, 2, 3, 3))
    assert len(ColourType) == 4


def test_parity_holds():
    assert parity_holds([1, 1, 2, 2])
    assert parity_holds([1, 2, 3])
    assert not parity_holds([1, 1, 2])


def test_blocks_classification():
    cls, pairing = classify_4pole(block("I"))
    assert cls is FourPoleClass.ISOCHROMATIC and pairing == ((0, 1), (2, 3))
    assert oracle_types(block("I")) == {"1111", "1122"}
    for name in ("H1", "H2"):
        cls, pairing = classify_4pole(block(name))
        assert cls is FourPoleClass.HETEROCHROMATIC and pairing == ((0, 1), (2, 3))
        assert oracle_types(block(name)) == {"1212", "1221"}
    assert {t.value for t in boundary_types(block("H1"))} == {"1212", "1221"}


def test_z1_uncolourable():
    z1 = dipole_Z(1)
    assert classify_4pole(z1)[0] is FourPoleClass.UNCOLOURABLE
    assert oracle_types(z1) == set()


def test_k4_minus_two_edges_is_multi_type():
    m = delete(k4(), edges=[(0, 1), (2, 3)])
    assert classify_4pole(m)[0] is FourPoleClass.MULTI_TYPE
    assert len(oracle_types(m)) == 3


def test_classify_needs_4_pole():
    with pytest.raises(ValueError):
        classify_4pole(block("T"))


def test_T_and_N_signatures():
    assert block_T_signature(block("T"))
    assert block_N_signature(block("N"))
    # an uncolourable pole never satisfies a signature
    assert not block_T_signature(dipole_Z(4))
    with pytest.raises(ValueError):
        block_T_signature(block("N"))


def _oracle_T(m: Multipole) -> bool:
    two = [m.end_of(s)[0] for s in m.connectors[0]]
    three = [m.end_of(s)[0] for s in m.connectors[1]]
    cols = list(oracles.colourings(m.n, list(m.edges)))
    for c in cols:
        x, y = (c[i] for i in two)
        rest = sorted(c[i] for i in three)
        if x == y or x ^ y not in rest:
            return False
        rest.remove(x ^ y)
        if rest[0] != rest[1]:
            return False
    return bool(cols)


def test_small_23_pole_by_enumeration():
    # triangle from K4 minus a vertex, with one triangle edge severed
    m = delete(k4(), vertices=[3], edges=[(0, 1)])
    sems = list(m.semiedges)
    by_vertex = {}
    for s in sems:
        by_vertex.setdefault(m.vertex_of(s), []).append(s)
    two = by_vertex[0]
    three = [s for s in sems if s not in two]
    pole = m.with_connectors([two, three])
    assert block_T_signature(pole) == _oracle_T(pole)


def test_colourable_iff_oddness_zero():
    for g in (k4(), k33(), petersen(), blanusa1(), random_cubic(12, 3), random_cubic(16, 5)):
        assert is_colourable(g) == (oddness(g, mode="direct").value == 0)


@settings(max_examples=50, deadline=None)
@given(cubic_graphs(max_n=16), st.integers(0, 10**6))
def test_kempe_switch_closure(g, seed):
    col = find_colouring(g)
    if col is None:
        return
    rng = random.Random(seed)
    a, b = rng.sample((1, 2, 3), 2)
    two = nx.Graph()
    two.add_edges_from((*g.edges[i], {"i": i}) for i, c in enumerate(col) if c in (a, b))
    chain = rng.choice(list(nx.connected_components(two)))
    switched = list(col)
    for u, v, data in two.subgraph(chain).edges(data=True):
        switched[data["i"]] = a + b - col[data["i"]]
    assert check_colouring(g, switched)
    assert tuple(switched) in {tuple(c) for c in iter_colourings(g, all_permutations=True)}


def test_semiedge_colours_follow_order():
    m = block("I")
    col = find_colouring(m)
    words = semiedge_colours(m, col)
    assert len(words) == 4 and words[0] == words[1] and words[2] == words[3]


def test_all_permutations_multiplies_by_six():
    g = k33()
    plain = list(iter_colourings(g))
    full = list(iter_colourings(g, all_permutations=True))
    assert len(full) == 6 * len(plain)
    assert len(full) == sum(1 for _ in oracles.colourings(g.n, list(g.edges)))
