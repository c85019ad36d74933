"""3-edge-colourings of cubic graphs and multipoles.

Colours are 1, 2, 3, read as the nonzero elements of Z2 x Z2, so the sum of
two distinct colours is their XOR (1+2=3, 1+3=2, 2+3=1).

The solver is a small constraint search over edges: assigning a colour
removes it from every edge sharing a vertex, edges left with one colour are
assigned at once, and branching takes the unassigned edge with the fewest
colours left (lowest index on ties).  Colours not used yet are
interchangeable, so only the smallest unused one is ever tried; each
colouring is therefore produced once up to renaming colours.
"""

from __future__ import annotations

import enum
import itertools
from typing import Callable, Iterable, Iterator, Sequence

from .budget import Budget, as_budget
from .graph import CubicGraph
from .multipole import Multipole

__all__ = [
    "EdgeSolver",
    "is_colourable",
    "find_colouring",
    "iter_colourings",
    "ColourType",
    "FourPoleClass",
    "boundary_words",
    "boundary_types",
    "classify_4pole",
    "block_T_signature",
    "block_N_signature",
    "parity_holds",
    "check_colouring",
]

_BIT_TO_COLOUR = {1: 1, 2: 2, 4: 3}
_LOWEST = {d: d & -d for d in range(8)}
_POP = [bin(d).count("1") for d in range(8)]
REMOVED = 8


def _edges_of(obj) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(obj, CubicGraph):
        return obj.n, list(obj.edges)
    if isinstance(obj, Multipole):
        return obj.n, list(obj.edges)
    n, edges = obj
    return n, list(edges)


class EdgeSolver:
    """Reusable colouring search over a fixed edge list.

    ``edges`` are pairs of ends; negative ends are free (semiedges) and impose
    no constraint.  Individual edges can be switched off per call, which is
    how the resistance search tests many edge removals without rebuilding.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        self.n = n
        self.m = len(edges)
        self.edges = list(edges)
        at: list[list[int]] = [[] for _ in range(n)]
        self.has_loop = False
        for i, (a, b) in enumerate(edges):
            if a >= 0 and a == b:
                self.has_loop = True
            for end in {a, b}:
                if end >= 0:
                    at[end].append(i)
        self.at = at
        nbrs = []
        for i, (a, b) in enumerate(edges):
            s = []
            for end in {a, b}:
                if end >= 0:
                    s.extend(j for j in at[end] if j != i)
            nbrs.append(tuple(s))
        self.nbrs = tuple(nbrs)

    @classmethod
    def of(cls, obj) -> "EdgeSolver":
        n, edges = _edges_of(obj)
        return cls(n, edges)

    def search(
        self,
        removed: Iterable[int] = (),
        removed_vertices: Iterable[int] = (),
        visit: Callable[[list[int]], bool] | None = None,
        budget: Budget | None = None,
        order: Sequence[int] | None = None,
    ) -> bool:
        """Run the search.

        ``order`` replaces the fewest-colours branching rule with a static
        edge order: the first unassigned edge in it whose domain is already
        restricted, else the first unassigned edge.

        Without ``visit`` this stops at the first colouring and returns
        whether one exists.  With ``visit`` every colouring (up to colour
        renaming) is passed as a list of colours 1..3 (0 for removed edges);
        returning True from ``visit`` stops the enumeration.
        """
        if self.has_loop:
            return False
        m = self.m
        nbrs = self.nbrs
        col = [0] * m
        dom = [7] * m
        for e in removed:
            col[e] = REMOVED
        for v in removed_vertices:
            for e in self.at[v]:
                col[e] = REMOVED
        tick = budget.tick if budget is not None and budget.limit is not None else None
        trail: list[tuple[int, int]] = []  # (edge, bit) domain removals and (edge, -1) assignments
        found = False

        def assign(e: int, c: int) -> bool:
            stack = [(e, c)]
            while stack:
                e, c = stack.pop()
                if col[e]:
                    if col[e] != c:
                        return False
                    continue
                if not dom[e] & c:
                    return False
                col[e] = c
                trail.append((e, -1))
                for f in nbrs[e]:
                    cf = col[f]
                    if cf == 0:
                        d = dom[f]
                        if d & c:
                            d ^= c
                            dom[f] = d
                            trail.append((f, c))
                            if d == 0:
                                return False
                            if _POP[d] == 1:
                                stack.append((f, d))
                    elif cf == c:
                        return False
            return True

        def undo(mark: int) -> None:
            while len(trail) > mark:
                e, c = trail.pop()
                if c < 0:
                    col[e] = 0
                else:
                    dom[e] |= c

        def pick_ordered() -> int:
            first = -1
            for e in order:
                if col[e] == 0:
                    if dom[e] != 7:
                        return e
                    if first < 0:
                        first = e
            return first

        def pick() -> int:
            best = -1
            bestd = 4
            for e in range(m):
                if col[e] == 0:
                    p = _POP[dom[e]]
                    if p < bestd:
                        best, bestd = e, p
                        if p <= 2:
                            break
            return best

        def rec(used: int) -> bool:
            nonlocal found
            if tick is not None:
                tick()
            e = pick() if order is None else pick_ordered()
            if e < 0:
                found = True
                if visit is None:
                    return True
                return bool(visit([_BIT_TO_COLOUR.get(c, 0) for c in col]))
            d = dom[e]
            fresh = d & ~used
            options = [b for b in (1, 2, 4) if d & b and (b & used or b == _LOWEST[fresh])]
            for b in options:
                mark = len(trail)
                if assign(e, b):
                    nu = used | b
                    if rec(nu):
                        return True
                undo(mark)
            return False

        rec(0)
        return found

    def colouring(
        self,
        removed: Iterable[int] = (),
        removed_vertices: Iterable[int] = (),
        budget: Budget | None = None,
        order: Sequence[int] | None = None,
    ) -> list[int] | None:
        """First colouring found (0 on removed edges), or None."""
        out: list[list[int]] = []

        def grab(c):
            out.append(c)
            return True

        self.search(removed=removed, removed_vertices=removed_vertices, visit=grab, budget=budget, order=order)
        return out[0] if out else None


def is_colourable(obj, budget: Budget | int | None = None) -> bool:
    """Whether a cubic graph or multipole has a proper 3-edge-colouring."""
    return EdgeSolver.of(obj).search(budget=as_budget(budget, "colouring"))


def find_colouring(obj, budget: Budget | int | None = None) -> list[int] | None:
    """One colouring as a colour per edge (in edge order), or None."""
    return EdgeSolver.of(obj).colouring(budget=as_budget(budget, "colouring"))


def iter_colourings(obj, all_permutations: bool = False, budget: Budget | int | None = None) -> Iterator[list[int]]:
    """All colourings, one per colour-renaming class unless
    ``all_permutations`` asks for the six renamings of each."""
    found: list[list[int]] = []
    EdgeSolver.of(obj).search(visit=lambda c: found.append(c) and False, budget=as_budget(budget, "colouring"))
    for c in found:
        if not all_permutations:
            yield c
            continue
        seen = set()
        for p in itertools.permutations((1, 2, 3)):
            img = tuple(p[x - 1] if x else 0 for x in c)
            if img not in seen:
                seen.add(img)
                yield list(img)


def check_colouring(obj, colours: Sequence[int]) -> bool:
    """Independent validity check of a colour-per-edge list."""
    n, edges = _edges_of(obj)
    seen: dict[int, set[int]] = {}
    for (a, b), c in zip(edges, colours):
        if c == 0:
            continue
        if c not in (1, 2, 3):
            return False
        for end in {a, b} if a != b else (a, a):
            if end < 0:
                continue
            bucket = seen.setdefault(end, set())
            if c in bucket:
                return False
            bucket.add(c)
    return True


def semiedge_colours(m: Multipole, colours: Sequence[int]) -> list[int]:
    """Colour of each semiedge of ``m`` in its global order."""
    return [colours[m.end_of(s)[0]] for s in m.semiedges]


def parity_holds(colours: Sequence[int]) -> bool:
    """k1 = k2 = k3 = k (mod 2) for the colours on a set of semiedges."""
    k = len(colours)
    return all(sum(1 for c in colours if c == i) % 2 == k % 2 for i in (1, 2, 3))


class ColourType(str, enum.Enum):
    T1111 = "1111"
    T1122 = "1122"
    T1212 = "1212"
    T1221 = "1221"


class FourPoleClass(str, enum.Enum):
    UNCOLOURABLE = "uncolourable"
    ISOCHROMATIC = "isochromatic"
    HETEROCHROMATIC = "heterochromatic"
    # reserved for a single attained type; Kempe switching rules it out for
    # genuine 4-poles, so seeing it means a malformed input
    COLOUR_CLOSED_OTHER = "colour-closed-other"
    MULTI_TYPE = "multi-type"


def type_of(word: Sequence[int]) -> ColourType:
    a, b, c, d = word
    if a == b == c == d:
        return ColourType.T1111
    if a == b and c == d:
        return ColourType.T1122
    if a == c and b == d:
        return ColourType.T1212
    if a == d and b == c:
        return ColourType.T1221
    raise ValueError(f"boundary word {word} violates the parity lemma")


def boundary_words(m: Multipole, budget: Budget | int | None = None) -> set[tuple[int, ...]]:
    """Every semiedge colour word attained by a colouring of ``m``."""
    idx = [m.end_of(s)[0] for s in m.semiedges]
    words: set[tuple[int, ...]] = set()

    def visit(c):
        w = tuple(c[i] for i in idx)
        for p in itertools.permutations((1, 2, 3)):
            words.add(tuple(p[x - 1] for x in w))
        return False

    EdgeSolver.of(m).search(visit=visit, budget=as_budget(budget, "colouring"))
    return words


def boundary_types(m: Multipole, budget: Budget | int | None = None) -> set[ColourType]:
    if m.k != 4:
        raise ValueError(f"boundary types need a 4-pole, got a {m.k}-pole")
    types = {type_of(w) for w in boundary_words(m, budget)}
    assert len(types) != 1, "a colourable 4-pole attains at least two types"
    return types


_PAIRINGS = {
    ColourType.T1122: ((0, 1), (2, 3)),
    ColourType.T1212: ((0, 2), (1, 3)),
    ColourType.T1221: ((0, 3), (1, 2)),
}


def classify_4pole(m: Multipole, budget: Budget | int | None = None) -> tuple[FourPoleClass, tuple | None]:
    """Colour class of a 4-pole and the pairing of semiedge positions that
    witnesses it (None unless iso- or heterochromatic)."""
    if m.k != 4:
        raise ValueError(f"classification needs a 4-pole, got a {m.k}-pole")
    types = {type_of(w) for w in boundary_words(m, budget)}
    if not types:
        return FourPoleClass.UNCOLOURABLE, None
    if len(types) == 1:
        return FourPoleClass.COLOUR_CLOSED_OTHER, None
    if len(types) >= 3:
        return FourPoleClass.MULTI_TYPE, None
    if ColourType.T1111 in types:
        (other,) = types - {ColourType.T1111}
        return FourPoleClass.ISOCHROMATIC, _PAIRINGS[other]
    (missing,) = set(_PAIRINGS) - types
    return FourPoleClass.HETEROCHROMATIC, _PAIRINGS[missing]


def _all_colourings_match(m: Multipole, check: Callable[[list[int]], bool], budget) -> bool:
    bad = []
    any_found = []

    def visit(c):
        any_found.append(True)
        if not check(c):
            bad.append(c)
            return True
        return False

    EdgeSolver.of(m).search(visit=visit, budget=as_budget(budget, "colouring"))
    return bool(any_found) and not bad


def block_T_signature(m: Multipole, budget: Budget | int | None = None) -> bool:
    """Every colouring of the (2,3)-pole gives the 2-connector distinct
    colours x, y and the 3-connector the multiset {x+y, z, z}.

    False for uncolourable inputs: the signature is about colourable poles.
    """
    sizes = m.connector_sizes
    if sorted(sizes) != [2, 3]:
        raise ValueError(f"expected a (2,3)-pole, got connector sizes {sizes}")
    two = m.connectors[sizes.index(2)]
    three = m.connectors[sizes.index(3)]
    i2 = [m.end_of(s)[0] for s in two]
    i3 = [m.end_of(s)[0] for s in three]

    def check(c):
        x, y = c[i2[0]], c[i2[1]]
        if x == y:
            return False
        rest = sorted(c[i] for i in i3)
        s = x ^ y
        if s not in rest:
            return False
        rest.remove(s)
        return rest[0] == rest[1]

    return _all_colourings_match(m, check, budget)


def block_N_signature(m: Multipole, budget: Budget | int | None = None) -> bool:
    """Every colouring of the (2,2,1)-pole gives one 2-connector distinct
    colours x, y, the other a repeated colour, and the 1-connector x+y."""
    sizes = m.connector_sizes
    if sorted(sizes) != [1, 2, 2]:
        raise ValueError(f"expected a (2,2,1)-pole, got connector sizes {sizes}")
    pairs = [[m.end_of(s)[0] for s in c] for c in m.connectors if len(c) == 2]
    single = [m.end_of(s)[0] for c in m.connectors if len(c) == 1 for s in c][0]

    def check(c):
        p, q = ([c[i] for i in pr] for pr in pairs)
        for a, b in ((p, q), (q, p)):
            if a[0] != a[1] and b[0] == b[1] and c[single] == a[0] ^ a[1]:
                return True
        return False

    return _all_colourings_match(m, check, budget)
