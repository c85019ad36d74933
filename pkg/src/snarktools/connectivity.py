"""Structural invariants: girth, cycle rank, cyclic connectivity, cuts,
circumference, diameter and radius.

Cyclic connectivity
-------------------
An edge cut is cycle-separating when at least two components of the
remainder contain a cycle; zeta is the smallest such cut, capped at the cycle
rank beta = m - n + 1 (K4 and K3,3 have no cycle-separating cut, so they get
beta).

The search here uses seeds instead of cycle pairs.  In a cubic graph a
connected vertex set X with c boundary edges is a tree exactly when
|X| = c - 2.  So for k >= 2, if two disjoint connected sets A and B of size
k - 1 can be separated by at most k edges, take the side X of such a cut
that contains A, shrink it to the component of A, and do the same for B on
the other side: neither component can be a tree (it has >= k - 1 vertices
but < k + 1 boundary edges), so the cut is cycle-separating.  Conversely, if
zeta = k then both sides of a minimum cut are connected and have >= k
vertices, so they contain such seeds.  Checking k = 1, 2, ... with a unit
capacity max-flow per seed pair (stopped once the flow exceeds k) is exact.
For k <= 2 single vertices serve as seeds, by the same counting.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .budget import Budget, BudgetExhausted, as_budget
from .graph import CubicGraph, indices_of

__all__ = [
    "bfs_distances",
    "is_connected",
    "bridges",
    "girth",
    "cycle_rank",
    "edge_connectivity",
    "cyclic_connectivity",
    "min_cycle_separating_cut",
    "is_cycle_separating",
    "CutSet",
    "cut_set",
    "circumference",
    "longest_cycle",
    "diameter_radius",
    "StructureReport",
    "structure_report",
]


def bfs_distances(g: CubicGraph, sources: Iterable[int]) -> list[int]:
    """Distance from the nearest source; -1 if unreachable."""
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def is_connected(g: CubicGraph) -> bool:
    return g.n == 0 or min(bfs_distances(g, [0])) >= 0


def bridges(g: CubicGraph) -> list[int]:
    """Indices of bridges (iterative lowpoint DFS)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.inc[root]))]
        while stack:
            v, pe, it = stack[-1]
            for e in it:
                if e == pe:
                    continue
                a, b = g.edges[e]
                u = b if a == v else a
                if disc[u] < 0:
                    disc[u] = low[u] = t
                    t += 1
                    stack.append((u, e, iter(g.inc[u])))
                    break
                low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if stack:
                    w = stack[-1][0]
                    low[w] = min(low[w], low[v])
                    if low[v] > disc[w]:
                        out.append(pe)
    return sorted(out)


def girth(g: CubicGraph) -> int:
    """Length of a shortest cycle (BFS from every vertex)."""
    best = g.n + 1
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for u in g.adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif u != parent[v]:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def cycle_rank(g: CubicGraph) -> int:
    """beta = m - n + c (c = number of components)."""
    seen = [False] * g.n
    comps = 0
    for s in range(g.n):
        if not seen[s]:
            comps += 1
            for v, d in enumerate(bfs_distances(g, [s])):
                if d >= 0:
                    seen[v] = True
    return g.m - g.n + comps


# -- flows ------------------------------------------------------------------


def _min_cut_between(g: CubicGraph, a_mask: int, b_mask: int, limit: int) -> tuple[int, int]:
    """Edge-disjoint path count from A to B, stopping once it exceeds
    ``limit``.  Returns (flow, X) where X is the source side of a minimum
    cut when flow <= limit."""
    flow: dict[tuple[int, int], int] = {}  # (u, v) -> units sent u->v
    value = 0
    while True:
        parent = {}
        queue = deque()
        for v in indices_of(a_mask):
            parent[v] = None
            queue.append(v)
        hit = -1
        while queue and hit < 0:
            v = queue.popleft()
            for u in g.adj[v]:
                if u in parent:
                    continue
                # residual capacity of v->u on an undirected unit edge
                if flow.get((v, u), 0) - flow.get((u, v), 0) >= 1:
                    continue
                parent[u] = v
                if b_mask >> u & 1:
                    hit = u
                    break
                queue.append(u)
        if hit < 0:
            side = 0
            for v in parent:
                side |= 1 << v
            return value, side
        value += 1
        if value > limit:
            return value, 0
        u = hit
        while parent[u] is not None:
            v = parent[u]
            flow[(v, u)] = flow.get((v, u), 0) + 1
            u = v


def _connected_sets(g: CubicGraph, size: int) -> list[int]:
    """All connected vertex sets of the given size, as bitmasks."""
    frontier = {1 << v for v in range(g.n)}
    for _ in range(size - 1):
        nxt = set()
        for s in frontier:
            border = 0
            for v in indices_of(s):
                border |= g.nbr_mask[v]
            border &= ~s
            while border:
                low = border & -border
                border ^= low
                nxt.add(s | low)
        frontier = nxt
    return sorted(frontier)


def _cut_edges(g: CubicGraph, side: int) -> list[int]:
    return [i for i, (u, v) in enumerate(g.edges) if (side >> u & 1) != (side >> v & 1)]


def _component_mask(g: CubicGraph, allowed: int, start: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        grow = g.nbr_mask[low.bit_length() - 1] & allowed & ~comp
        comp |= grow
        frontier |= grow
    return comp


def min_cycle_separating_cut(g: CubicGraph, budget: Budget | int | None = None) -> list[int] | None:
    """A smallest cycle-separating edge cut (edge indices), or None if the
    graph has none."""
    if not is_connected(g):
        raise ValueError("cyclic connectivity needs a connected graph")
    bud = as_budget(budget, "cyclic connectivity")
    beta = cycle_rank(g)
    for k in range(1, beta + 1):
        seeds = _connected_sets(g, max(1, k - 1))
        for i, a in enumerate(seeds):
            for b in seeds[i + 1:]:
                if a & b:
                    continue
                bud.tick()
                value, side = _min_cut_between(g, a, b, k)
                if value > k:
                    continue
                # the component of A on the source side; its boundary still
                # separates A's cyclic side from B's
                x = _component_mask(g, side, (a & -a).bit_length() - 1)
                cut = _cut_edges(g, x)
                assert is_cycle_separating(g, cut), "seed argument violated"
                return cut
    return None


def cyclic_connectivity(g: CubicGraph, budget: Budget | int | None = None) -> int:
    """zeta: size of a smallest cycle-separating cut, capped at beta."""
    cut = min_cycle_separating_cut(g, budget)
    beta = cycle_rank(g)
    return beta if cut is None else min(len(cut), beta)


def edge_connectivity(g: CubicGraph) -> int:
    """Plain global min edge cut (vertex 0 against every other vertex)."""
    if g.n <= 1:
        return 0
    return min(_min_cut_between(g, 1, 1 << v, g.m)[0] for v in range(1, g.n))


# -- cuts -----------------------------------------------------------------------


@dataclass
class CutSet:
    edges: list[int]
    components: list[list[int]]
    cyclic: list[bool]

    @property
    def cycle_separating(self) -> bool:
        return sum(self.cyclic) >= 2

    @property
    def disconnects(self) -> bool:
        return len(self.components) >= 2


def cut_set(g: CubicGraph, edges: Iterable[int | tuple[int, int]]) -> CutSet:
    """Components of G - S and which of them contain a cycle."""
    ids = sorted({g.edge_id(*e) if isinstance(e, tuple) else e for e in edges})
    gone = set(ids)
    adj = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if i not in gone:
            adj[u].append(v)
            adj[v].append(u)
    comp = [-1] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = len(comps)
        members = [s]
        for v in members:
            for u in adj[v]:
                if comp[u] < 0:
                    comp[u] = comp[s]
                    members.append(u)
        comps.append(sorted(members))
    cyclic = []
    for members in comps:
        inner = sum(len(adj[v]) for v in members) // 2
        cyclic.append(inner >= len(members))
    return CutSet(ids, comps, cyclic)


def is_cycle_separating(g: CubicGraph, edges: Iterable[int | tuple[int, int]]) -> bool:
    return cut_set(g, edges).cycle_separating


# -- circumference ----------------------------------------------------------------


def _cycle_at_least(g: CubicGraph, length: int, bud: Budget) -> list[int] | None:
    """A cycle with at least ``length`` vertices, or None.

    A cycle missing at most d = n - length vertices passes through one of the
    first d + 1 vertices; anchor at the smallest such vertex it uses.  Paths
    grow from the anchor; a partial path is abandoned once too many vertices
    are certainly off every completion (fewer than two usable neighbours, or
    cut off from both path ends).
    """
    n = g.n
    slack = n - length
    nbr = g.nbr_mask
    full = (1 << n) - 1
    for anchor in range(min(slack + 1, n)):
        banned = (1 << anchor) - 1
        path = [anchor]

        def viable(on: int, cur: int) -> int:
            avail = full & ~on & ~banned
            ends = (1 << anchor) | (1 << cur)
            changed = True
            while changed:
                changed = False
                rest = avail
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if (nbr[low.bit_length() - 1] & (avail | ends)).bit_count() < 2:
                        avail ^= low
                        changed = True
                if cur != anchor:
                    # keep only what cur can still reach through avail
                    seen = 0
                    frontier = nbr[cur] & avail
                    while frontier:
                        seen |= frontier
                        grow = 0
                        f = frontier
                        while f:
                            low = f & -f
                            f ^= low
                            grow |= nbr[low.bit_length() - 1]
                        frontier = grow & avail & ~seen
                    if seen != avail:
                        avail = seen
                        changed = True
            return avail

        def rec(on: int, cur: int) -> list[int] | None:
            bud.tick()
            avail = viable(on, cur)
            if (full & ~on & ~avail).bit_count() > slack:
                return None
            if len(path) >= 2:
                # each cycle is walked once: it must close through an anchor
                # neighbour above the first step
                closers = nbr[anchor] & ~((2 << path[1]) - 1)
                if closers >> cur & 1 and len(path) >= max(length, 3):
                    return list(path)
                if not closers & (avail | (1 << cur)):
                    return None
            step = nbr[cur] & avail
            while step:
                low = step & -step
                step ^= low
                u = low.bit_length() - 1
                path.append(u)
                got = rec(on | low, u)
                path.pop()
                if got:
                    return got
            return None

        got = rec(1 << anchor, anchor)
        if got:
            return got
    return None


def longest_cycle(
    g: CubicGraph, budget: Budget | int | None = None, upper: int | None = None, probe: int = 20000
) -> list[int]:
    """A longest cycle, as a vertex sequence.

    Cheap capped probes from ``upper`` (default n) downwards find a long
    cycle; then "a cycle longer than the best so far" is searched without a
    cap until it is refuted, which makes the answer exact.
    """
    bud = as_budget(budget, "circumference")
    top = g.n if upper is None else upper
    best: list[int] | None = None
    for length in range(top, 2, -1):
        try:
            best = _cycle_at_least(g, length, Budget(probe, "circumference probe"))
        except BudgetExhausted:
            continue
        if best is not None:
            break
    if best is None:
        best = _cycle_at_least(g, 3, bud)
        if best is None:
            raise ValueError("graph is acyclic")
    while len(best) < top:
        longer = _cycle_at_least(g, len(best) + 1, bud)
        if longer is None:
            break
        best = longer
    _check_cycle(g, best)
    return best


def _check_cycle(g: CubicGraph, cyc: Sequence[int]) -> None:
    if len(set(cyc)) != len(cyc) or len(cyc) < 3:
        raise AssertionError("cycle witness repeats a vertex")
    for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
        if not g.has_edge(a, b):
            raise AssertionError(f"cycle witness uses non-edge {a}-{b}")


def circumference(g: CubicGraph, budget: Budget | int | None = None, upper: int | None = None) -> int:
    return len(longest_cycle(g, budget, upper))


def diameter_radius(g: CubicGraph) -> tuple[int, int]:
    ecc = []
    for s in range(g.n):
        d = bfs_distances(g, [s])
        if min(d) < 0:
            raise ValueError("graph is disconnected")
        ecc.append(max(d))
    return max(ecc), min(ecc)


# -- report -----------------------------------------------------------------------


@dataclass
class StructureReport:
    n: int
    m: int
    girth: int | None = None
    cycle_rank: int | None = None
    zeta: int | None = None
    circumference: int | None = None
    circumference_deficit: int | None = None
    diameter: int | None = None
    radius: int | None = None
    aut: int | None = None
    canonical_form: str | None = None
    witnesses: dict = field(default_factory=dict)
    budget_flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def structure_report(g: CubicGraph, budget: int | None = None, only: Iterable[str] | None = None) -> StructureReport:
    from .canon import automorphism_group_order, canonical_form

    want = set(only) if only is not None else {"girth", "zeta", "circumference", "diameter", "aut"}
    rep = StructureReport(g.n, g.m, cycle_rank=cycle_rank(g))
    if "girth" in want:
        rep.girth = girth(g)
    if "diameter" in want:
        rep.diameter, rep.radius = diameter_radius(g)
    if "zeta" in want:
        try:
            cut = min_cycle_separating_cut(g, budget)
            rep.zeta = rep.cycle_rank if cut is None else min(len(cut), rep.cycle_rank)
            if cut is not None:
                rep.witnesses["zeta"] = [list(g.edges[i]) for i in cut]
        except BudgetExhausted:
            rep.budget_flags["zeta"] = "undecided"
    if "circumference" in want:
        try:
            cyc = longest_cycle(g, budget)
            rep.circumference = len(cyc)
            rep.circumference_deficit = g.n - len(cyc)
            rep.witnesses["circumference"] = cyc
        except BudgetExhausted:
            rep.budget_flags["circumference"] = "undecided"
    if "aut" in want:
        try:
            rep.aut = automorphism_group_order(g, budget=budget)
            rep.canonical_form = canonical_form(g, budget=budget)
        except BudgetExhausted:
            rep.budget_flags["aut"] = "undecided"
    return rep
