"""Petersen-derived building blocks, the Z dipoles, 4-joins and I-moves.

Petersen labelling used throughout: outer cycle 0-1-2-3-4-0, spokes
i-(i+5), inner pentagram 5-7-9-6-8-5 (vertex i+5 is adjacent to
(i+2)%5 + 5).

Blocks (connectors listed in order, each semiedge named by the Petersen
vertex it hangs from):

=====  ===========================================  =====================
block  made by                                      connectors
=====  ===========================================  =====================
I      removing adjacent vertices 0, 1              (4, 5) (2, 6)
H1     severing edges 01 and 23 (distance 1)        (0, 1) (2, 3)
H2     severing edges 01 and 38 (distance 2)        (0, 1) (3, 8)
T      removing 0 and severing 23                   (2, 3) (1, 4, 5)
N      removing the path 4-0-1                      (3, 9) (2, 6) (5)
=====  ===========================================  =====================

Surviving vertices keep their relative order and are renumbered from 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

from .graph import CubicGraph, GraphFormatError, delete, stub_origins
from .multipole import JunctionError, Multipole, complete_junction, dipole_junction, subdivide_and_attach

__all__ = [
    "petersen",
    "k4",
    "k33",
    "blanusa1",
    "blanusa2",
    "named_graph",
    "NAMED_GRAPHS",
    "block",
    "BLOCK_NAMES",
    "dipole_Z",
    "SideSpec",
    "FourJoinSpec",
    "side_multipole",
    "four_join",
    "side_choices",
    "enumerate_four_joins",
    "i_extension",
    "i_reduction",
]


def petersen() -> CubicGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return CubicGraph(10, outer + spokes + inner)


def k4() -> CubicGraph:
    return CubicGraph(4, itertools.combinations(range(4), 2))


def k33() -> CubicGraph:
    return CubicGraph(6, [(a, b) for a in range(3) for b in range(3, 6)])


# -- blocks -------------------------------------------------------------------


def _carve(g: CubicGraph, vertices: Sequence[int], edges: Sequence[tuple[int, int]], groups: Sequence[Sequence[object]]) -> Multipole:
    """Delete from ``g`` and group semiedges by origin.

    The origin of a semiedge is the deleted vertex it pointed to, or the
    severed edge (as a sorted pair) it came from.  ``groups`` lists origins
    per connector; inside a connector semiedges follow :func:`delete` order.
    """
    cut = [g.edge_id(*e) for e in edges]
    m = delete(g, vertices=vertices, edges=cut)
    dead = set(vertices)
    origins = []
    for v, i in stub_origins(g, dead, cut):
        a, b = g.edges[i]
        if i in cut:
            origins.append((a, b))
        else:
            origins.append(a if a in dead else b)
    conns = []
    for wanted in groups:
        conns.append(tuple(s for s, o in zip(m.semiedges, origins) if o in wanted))
    return m.with_connectors(conns)


def _block_I() -> Multipole:
    return _carve(petersen(), (0, 1), (), [(0,), (1,)])


def _block_H(distance: int) -> Multipole:
    f = (2, 3) if distance == 1 else (3, 8)
    return _carve(petersen(), (), ((0, 1), f), [((0, 1),), (f,)])


def _block_T() -> Multipole:
    return _carve(petersen(), (0,), ((2, 3),), [((2, 3),), (0,)])


def _block_N() -> Multipole:
    # path 4-0-1: 4 and 1 give the 2-connectors, 0 the 1-connector
    return _carve(petersen(), (4, 0, 1), (), [(4,), (1,), (0,)])


BLOCK_NAMES = ("I", "H1", "H2", "T", "N")


def block(name: str) -> Multipole:
    """One of the five building blocks (see the module table)."""
    makers: dict[str, Callable[[], Multipole]] = {
        "I": _block_I,
        "H1": lambda: _block_H(1),
        "H2": lambda: _block_H(2),
        "H": lambda: _block_H(1),
        "T": _block_T,
        "N": _block_N,
    }
    if name not in makers:
        raise ValueError(f"unknown block {name!r}; expected one of {', '.join(BLOCK_NAMES)}")
    return makers[name]()


def dipole_Z(i: int, h: str = "H1") -> Multipole:
    """Z1 = I o H, Z2 = I o H o I, Z3 = I o I with a connecting edge
    subdivided and given a dangling edge, Z4 = I o T (on T's 2-connector)."""
    bi = block("I")
    if i == 1:
        return dipole_junction(bi, block(h))
    if i == 2:
        return dipole_junction(dipole_junction(bi, block(h)), bi)
    if i == 3:
        ii = dipole_junction(bi, bi)
        link = next(j for j, (a, b) in enumerate(ii.edges) if a >= 0 and b >= 0 and (a < bi.n) != (b < bi.n))
        return subdivide_and_attach(ii, link)
    if i == 4:
        return dipole_junction(bi, block("T"))
    raise ValueError("Z dipoles are numbered 1..4")


# -- 4-join -----------------------------------------------------------------------


Mode = Literal["vertices", "edges"]


@dataclass(frozen=True)
class SideSpec:
    """``vertices``: two adjacent vertices (u, v).  ``edges``: two
    nonadjacent edges ((a, b), (c, d))."""

    mode: Mode
    args: tuple

    def to_json(self) -> dict:
        return {"mode": self.mode, "args": [list(a) if isinstance(a, tuple) else a for a in self.args]}

    @classmethod
    def from_json(cls, data: dict) -> "SideSpec":
        mode = data["mode"]
        if mode == "vertices":
            u, v = data["args"]
            return cls(mode, (int(u), int(v)))
        if mode == "edges":
            e, f = data["args"]
            return cls(mode, (tuple(map(int, e)), tuple(map(int, f))))
        raise ValueError(f"unknown 4-join mode {mode!r}")


@dataclass(frozen=True)
class FourJoinSpec:
    side1: SideSpec
    side2: SideSpec
    perm: tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise ValueError(f"perm {self.perm} is not a permutation of 0..3")

    def to_json(self) -> str:
        return json.dumps({"side1": self.side1.to_json(), "side2": self.side2.to_json(), "perm": list(self.perm)})

    @classmethod
    def from_json(cls, text: str | dict) -> "FourJoinSpec":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(SideSpec.from_json(data["side1"]), SideSpec.from_json(data["side2"]), tuple(data.get("perm", (0, 1, 2, 3))))


def side_multipole(g: CubicGraph, side: SideSpec) -> Multipole:
    """The 4-pole left after the deletion; semiedges in :func:`delete` order."""
    if side.mode == "vertices":
        u, v = side.args
        if not g.has_edge(u, v):
            raise ValueError(f"vertices {u} and {v} are not adjacent")
        return delete(g, vertices=(u, v))
    if side.mode == "edges":
        e, f = side.args
        if not (g.has_edge(*e) and g.has_edge(*f)):
            raise ValueError(f"{e} or {f} is not an edge")
        if set(e) & set(f):
            raise ValueError(f"edges {e} and {f} are adjacent")
        return delete(g, edges=(tuple(e), tuple(f)))
    raise ValueError(f"unknown 4-join mode {side.mode!r}")


def four_join(g1: CubicGraph, g2: CubicGraph, spec: FourJoinSpec) -> CubicGraph:
    """Semiedge i of the first 4-pole meets semiedge perm[i] of the second.

    Raises :class:`JunctionError` when the result has parallel edges.
    """
    m1 = side_multipole(g1, spec.side1)
    m2 = side_multipole(g2, spec.side2)
    out = complete_junction(m1, m2, spec.perm, require_graph=True)
    expected = g1.n + g2.n - 2 * sum(s.mode == "vertices" for s in (spec.side1, spec.side2))
    assert out.n == expected
    return out


def side_choices(g: CubicGraph, mode: Mode, up_to_symmetry: bool = True) -> list[SideSpec]:
    """All valid sides of one mode, or one per automorphism orbit."""
    if mode == "vertices":
        items = [tuple(e) for e in g.edges]
    else:
        items = [(e, f) for e, f in itertools.combinations(g.edges, 2) if not set(e) & set(f)]
    if up_to_symmetry:
        from .canon import automorphisms

        auts = automorphisms(g)

        def image(item, s):
            if mode == "vertices":
                return tuple(sorted((s[item[0]], s[item[1]])))
            return tuple(sorted(tuple(sorted((s[a], s[b]))) for a, b in item))

        reps, seen = [], set()
        for it in items:
            key = image(it, range(g.n))
            if key in seen:
                continue
            reps.append(it)
            seen.update(image(it, s) for s in auts)
        items = reps
    return [SideSpec(mode, it) for it in items]


def enumerate_four_joins(
    g1: CubicGraph,
    g2: CubicGraph,
    filter: Callable[[CubicGraph], bool] | None = None,
    dedup: bool = True,
    modes1: Iterable[Mode] = ("vertices", "edges"),
    modes2: Iterable[Mode] = ("vertices", "edges"),
    up_to_symmetry: bool = True,
) -> list[tuple[FourJoinSpec, CubicGraph]]:
    """Every 4-join of g1 and g2 over the given modes and all 24 orders.

    With ``up_to_symmetry`` each side is taken once per automorphism orbit;
    since all orders are tried this loses no isomorphism class.  Joins with
    parallel edges are skipped.  Output follows the enumeration order; with
    ``dedup`` only the first graph of each isomorphism class is kept.
    """
    from .canon import canonical_form

    sides1 = [s for mode in modes1 for s in side_choices(g1, mode, up_to_symmetry)]
    sides2 = [s for mode in modes2 for s in side_choices(g2, mode, up_to_symmetry)]
    out = []
    seen: set[str] = set()
    for s1 in sides1:
        m1 = side_multipole(g1, s1)
        for s2 in sides2:
            m2 = side_multipole(g2, s2)
            for perm in itertools.permutations(range(4)):
                try:
                    g = complete_junction(m1, m2, perm, require_graph=True)
                except JunctionError:
                    continue
                if filter is not None and not filter(g):
                    continue
                if dedup:
                    key = canonical_form(g)
                    if key in seen:
                        continue
                    seen.add(key)
                out.append((FourJoinSpec(s1, s2, perm), g))
    return out


# -- I-extension / I-reduction ----------------------------------------------------------


def i_extension(g: CubicGraph, e: tuple[int, int] | int, f: tuple[int, int] | int) -> CubicGraph:
    """Subdivide e with new vertex n and f with n + 1, then join n to n + 1."""
    ei = g.edge_id(*e) if isinstance(e, tuple) else e
    fi = g.edge_id(*f) if isinstance(f, tuple) else f
    if ei == fi:
        raise ValueError("I-extension needs two distinct edges")
    a, b = g.edges[ei]
    c, d = g.edges[fi]
    x, y = g.n, g.n + 1
    edges = [uv for i, uv in enumerate(g.edges) if i not in (ei, fi)]
    edges += [(a, x), (x, b), (c, y), (y, d), (x, y)]
    return CubicGraph(g.n + 2, edges)


def i_reduction(g: CubicGraph, edge: tuple[int, int] | int) -> CubicGraph:
    """Remove the ends x, y of ``edge`` and reconnect the two remaining
    neighbours of x to each other, likewise for y.  Other vertices keep their
    relative order."""
    i = g.edge_id(*edge) if isinstance(edge, tuple) else edge
    x, y = g.edges[i]
    a, b = (u for u in g.adj[x] if u != y)
    c, d = (u for u in g.adj[y] if u != x)
    # a, b, c, d are never x or y in a simple graph; a shared neighbour
    # (xy in a triangle) is fine unless it doubles an edge
    if g.has_edge(a, b) or g.has_edge(c, d) or {a, b} == {c, d}:
        raise GraphFormatError(f"I-reduction on {x}-{y} would create parallel edges")
    keep = [v for v in range(g.n) if v not in (x, y)]
    new = {v: k for k, v in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in g.edges if x not in (u, v) and y not in (u, v)]
    edges += [(new[a], new[b]), (new[c], new[d])]
    return CubicGraph(g.n - 2, edges)


# -- named graphs ---------------------------------------------------------------------


def _blanusa(aut: int) -> CubicGraph:
    from .canon import automorphism_group_order
    from .colouring import is_colourable

    p = petersen()
    for _, g in enumerate_four_joins(p, p, filter=lambda h: not is_colourable(h), modes1=("edges",), modes2=("vertices",)):
        if automorphism_group_order(g) == aut:
            return g
    raise RuntimeError("no 18-vertex snark with that automorphism group order")


def blanusa1() -> CubicGraph:
    """The first Blanusa snark: the 18-vertex snark with |Aut| = 8."""
    return _blanusa(8)


def blanusa2() -> CubicGraph:
    """The second Blanusa snark: the 18-vertex snark with |Aut| = 4."""
    return _blanusa(4)


NAMED_GRAPHS: dict[str, Callable[[], CubicGraph]] = {
    "petersen": petersen,
    "k4": k4,
    "k33": k33,
    "blanusa1": blanusa1,
    "blanusa2": blanusa2,
}


def named_graph(name: str) -> CubicGraph:
    try:
        return NAMED_GRAPHS[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; known: {', '.join(NAMED_GRAPHS)}") from None
