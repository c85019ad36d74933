"""Canonical labelling and automorphism group order.

Ordered partitions are refined to equitable ones (every vertex of a cell
has the same number of neighbours in each cell); when refinement stalls, a
vertex of the first smallest non-singleton cell is individualized, for each
vertex of that cell in turn.  Every leaf of this search tree is a discrete
partition, i.e. a relabelling.  The canonical form is the smallest graph6
string over all leaves.

The tree is built from isomorphism-invariant choices only, so an
automorphism maps leaves to leaves, and two leaves give the same relabelled
graph exactly when they differ by an automorphism.  Counting the leaves that
reproduce the canonical graph therefore gives |Aut|.  No automorphism
pruning is done; the trees stay small for the cubic graphs this package is
meant for.
"""

from __future__ import annotations

from functools import lru_cache

from .budget import Budget, as_budget
from .graph import CubicGraph, encode_graph6

__all__ = ["canonical_form", "canonical_labelling", "automorphism_group_order", "automorphisms", "are_isomorphic"]

def _refine(adj: tuple[tuple[int, ...], ...], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    n = len(adj)
    while True:
        where = [0] * n
        for i, cell in enumerate(cells):
            for v in cell:
                where[v] = i
        out: list[tuple[int, ...]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(sorted(where[u] for u in adj[v]))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(tuple(groups[sig]))
        if len(out) == len(cells):
            return out
        cells = out


def _search(g: CubicGraph, budget: Budget) -> tuple[str, tuple[int, ...], list[tuple[int, ...]]]:
    adj = g.adj
    best: list = [None, None, []]  # form, labelling, labellings giving it

    def leaf(cells: list[tuple[int, ...]]) -> None:
        pos = [0] * g.n
        for i, (v,) in enumerate(cells):
            pos[v] = i
        form = encode_graph6(g.n, ((pos[u], pos[v]) for u, v in g.edges))
        if best[0] is None or form < best[0]:
            best[0], best[1], best[2] = form, tuple(pos), [tuple(pos)]
        elif form == best[0]:
            best[2].append(tuple(pos))

    def rec(cells: list[tuple[int, ...]]) -> None:
        budget.tick()
        cells = _refine(adj, cells)
        if len(cells) == g.n:
            leaf(cells)
            return
        target = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        cell = cells[target]
        for v in sorted(cell):
            rest = tuple(u for u in cell if u != v)
            rec(cells[:target] + [(v,), rest] + cells[target + 1:])

    rec([tuple(range(g.n))] if g.n else [])
    if g.n == 0:
        return encode_graph6(0, ()), (), [()]
    return best[0], best[1], best[2]


@lru_cache(maxsize=256)
def _cached(g: CubicGraph) -> tuple[str, tuple[int, ...], list[tuple[int, ...]]]:
    return _search(g, Budget(None))


def _run(g: CubicGraph, budget) -> tuple[str, tuple[int, ...], list[tuple[int, ...]]]:
    if budget is None:
        return _cached(g)
    return _search(g, as_budget(budget, "canonical form"))


def canonical_form(g: CubicGraph, budget: Budget | int | None = None) -> str:
    """graph6 string of the canonically relabelled graph."""
    return _run(g, budget)[0]


def canonical_labelling(g: CubicGraph, budget: Budget | int | None = None) -> tuple[int, ...]:
    """``lab[v]`` is the canonical position of vertex ``v``."""
    return _run(g, budget)[1]


def automorphism_group_order(g: CubicGraph, budget: Budget | int | None = None) -> int:
    return len(_run(g, budget)[2])


def automorphisms(g: CubicGraph, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """Every automorphism as a vertex map ``sigma[v]``, identity first."""
    _, base, leaves = _run(g, budget)
    inv = [0] * g.n
    for v, p in enumerate(base):
        inv[p] = v
    return sorted(tuple(inv[pos[v]] for v in range(g.n)) for pos in leaves)


def are_isomorphic(g: CubicGraph, h: CubicGraph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)
