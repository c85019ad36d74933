"""Copies of a small pattern inside a cubic host graph."""

from __future__ import annotations

from collections import deque
from typing import Iterator

from .budget import Budget, as_budget
from .graph import CubicGraph
from .multipole import Multipole

__all__ = ["find_induced_copies", "iter_copies", "copy_vertex_sets", "disjoint_packings"]


def _pattern_adjacency(pattern: Multipole | CubicGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(pattern.n)]
    edges = pattern.inner_edges() if isinstance(pattern, Multipole) else pattern.edges
    for a, b in edges:
        if a == b:
            raise ValueError("pattern has a loop")
        if b in adj[a]:
            raise ValueError("pattern has parallel edges")
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _bfs_order(adj: list[set[int]]) -> list[tuple[int, int]]:
    """(vertex, already-placed neighbour or -1), component by component."""
    seen = [False] * len(adj)
    order = []
    for r in range(len(adj)):
        if seen[r]:
            continue
        seen[r] = True
        order.append((r, -1))
        queue = deque([r])
        while queue:
            v = queue.popleft()
            for u in sorted(adj[v]):
                if not seen[u]:
                    seen[u] = True
                    order.append((u, v))
                    queue.append(u)
    return order


def iter_copies(
    host: CubicGraph,
    pattern: Multipole | CubicGraph,
    induced: bool = True,
    budget: Budget | int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield embeddings ``phi`` (``phi[v]`` = host vertex of pattern vertex v).

    Pattern edges must map to host edges; with ``induced`` pattern
    non-edges must map to host non-edges as well, so every semiedge of the
    pattern leaves the copy.
    """
    bud = as_budget(budget, "subgraph search")
    padj = _pattern_adjacency(pattern)
    order = _bfs_order(padj)
    k = len(order)
    if k > host.n:
        return
    phi = [-1] * pattern.n
    used = [False] * host.n
    placed: list[int] = []

    def fits(v: int, h: int) -> bool:
        hn = host.adj[h]
        for q in placed:
            adjacent = phi[q] in hn
            if q in padj[v]:
                if not adjacent:
                    return False
            elif induced and adjacent:
                return False
        return True

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        bud.tick()
        if i == k:
            yield tuple(phi)
            return
        v, parent = order[i]
        cands = host.adj[phi[parent]] if parent >= 0 else range(host.n)
        for h in cands:
            if used[h] or not fits(v, h):
                continue
            phi[v] = h
            used[h] = True
            placed.append(v)
            yield from rec(i + 1)
            placed.pop()
            used[h] = False
            phi[v] = -1

    yield from rec(0)


def find_induced_copies(
    host: CubicGraph,
    pattern: Multipole | CubicGraph,
    induced: bool = True,
    budget: Budget | int | None = None,
) -> list[tuple[int, ...]]:
    """All embeddings, in search order (lowest host vertex first)."""
    return list(iter_copies(host, pattern, induced, budget))


def copy_vertex_sets(host: CubicGraph, pattern: Multipole | CubicGraph, induced: bool = True) -> list[frozenset[int]]:
    """Distinct host vertex sets covered by copies, sorted."""
    sets = {frozenset(phi) for phi in iter_copies(host, pattern, induced)}
    return sorted(sets, key=lambda s: sorted(s))


def disjoint_packings(
    families: list[tuple[str, list[frozenset[int]], int]],
) -> Iterator[list[tuple[str, frozenset[int]]]]:
    """Yield pairwise disjoint choices: ``count`` sets from each family.

    ``families`` is a list of ``(name, candidate sets, count)``.
    """
    slots: list[tuple[str, list[frozenset[int]]]] = []
    for name, sets, count in families:
        slots.extend([(name, sets)] * count)
    chosen: list[tuple[str, frozenset[int]]] = []

    def rec(i: int, used: frozenset[int], floor: int) -> Iterator[list[tuple[str, frozenset[int]]]]:
        if i == len(slots):
            yield list(chosen)
            return
        name, sets = slots[i]
        # copies of one family are taken in increasing index order
        start = floor if i > 0 and slots[i - 1][0] == name else 0
        for j in range(start, len(sets)):
            s = sets[j]
            if used & s:
                continue
            chosen.append((name, s))
            yield from rec(i + 1, used | s, j + 1)
            chosen.pop()

    yield from rec(0, frozenset(), 0)
