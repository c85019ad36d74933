"""Perfect matchings and the matching-based measures of uncolourability.

Everything here is driven by one enumerator of perfect matchings (edge
bitmasks).  The measures:

* oddness: fewest odd circuits in a 2-factor (the complement of a perfect
  matching);
* weak oddness: fewest odd-order components in an even factor;
* resistance: fewest edges (or vertices) whose removal leaves a colourable
  graph;
* perfect matching index: fewest perfect matchings covering every edge;
* gamma2: fewest common edges of two perfect matchings;
* mu3: fewest edges left uncovered by three perfect matchings.

The bound-assisted modes lean on these facts for bridgeless cubic graphs:
rho <= weak oddness <= oddness, oddness is even, rho = 2 iff oddness = 2,
oddness <= 2 * gamma2, oddness <= 2 * mu3 / 3, and the perfect matching
index is 3 exactly for colourable graphs.  A search whose best witness
meets the lower bound stops there, so every value returned is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Literal, Sequence

from .budget import Budget, BudgetExhausted, as_budget
from .colouring import EdgeSolver, check_colouring
from .graph import CubicGraph, indices_of
from .multipole import Multipole

__all__ = [
    "BridgeError",
    "enumerate_perfect_matchings",
    "perfect_matchings",
    "is_perfect_matching",
    "two_factor_circuits",
    "odd_circuit_count",
    "oddness",
    "resistance",
    "weak_oddness",
    "perfect_matching_index",
    "gamma2",
    "mu3",
    "MeasureReport",
    "measure_report",
]

DEFAULT_PM_CAP = 2_000_000


class BridgeError(ValueError):
    """The measure is undefined because the graph has a bridge."""


def _bridges(g: CubicGraph) -> list[int]:
    from .connectivity import bridges

    return bridges(g)


def _require_bridgeless(g: CubicGraph, what: str) -> None:
    br = _bridges(g)
    if br:
        raise BridgeError(f"{what} is undefined: edge {g.edges[br[0]]} is a bridge")


# -- enumeration ------------------------------------------------------------


def enumerate_perfect_matchings(
    g: CubicGraph,
    visit: Callable[[int], bool | None] | None = None,
    budget: Budget | int | None = None,
) -> int:
    """Visit every perfect matching once, as an edge bitmask.

    Branches on the lowest uncovered vertex and tries its edges in index
    order.  ``visit`` may return True to stop early.  Returns the number of
    matchings visited.
    """
    bud = as_budget(budget, "perfect matchings")
    n = g.n
    full = (1 << n) - 1
    options = [tuple((u, 1 << g.edge_id(v, u)) for u in g.adj[v]) for v in range(n)]
    nbrm = g.nbr_mask
    count = 0
    stop = False

    def rec(covered: int, matched: int) -> None:
        nonlocal count, stop
        if covered == full:
            count += 1
            bud.tick()
            if visit is not None and visit(matched):
                stop = True
            return
        free = ~covered & full
        v = (free & -free).bit_length() - 1
        for u, ebit in options[v]:
            if covered >> u & 1:
                continue
            nc = covered | (1 << v) | (1 << u)
            # every still-uncovered neighbour of v or u needs a free partner
            dead = False
            touched = (nbrm[v] | nbrm[u]) & ~nc
            while touched:
                w = touched & -touched
                touched ^= w
                if not nbrm[w.bit_length() - 1] & ~nc:
                    dead = True
                    break
            if dead:
                continue
            rec(nc, matched | ebit)
            if stop:
                return

    if n:
        rec(0, 0)
    return count


def perfect_matchings(g: CubicGraph, cap: int = DEFAULT_PM_CAP, budget: Budget | int | None = None) -> list[int]:
    """All perfect matchings as a list; raises BudgetExhausted past ``cap``."""
    out: list[int] = []
    bud = as_budget(budget, "perfect matchings")

    def keep(mm: int) -> None:
        out.append(mm)
        if len(out) > cap:
            raise BudgetExhausted("perfect matching list", len(out))

    enumerate_perfect_matchings(g, keep, bud)
    return out


def is_perfect_matching(g: CubicGraph, mask: int) -> bool:
    seen = set()
    for u, v in g.edges_in(mask):
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return len(seen) == g.n


def two_factor_circuits(g: CubicGraph, pm: int) -> list[list[int]]:
    """Circuits of the 2-factor complementary to perfect matching ``pm``."""
    partner = [[] for _ in range(g.n)]
    for i in indices_of(g.full_mask & ~pm):
        u, v = g.edges[i]
        partner[u].append(v)
        partner[v].append(u)
    seen = [False] * g.n
    circuits = []
    for s in range(g.n):
        if seen[s]:
            continue
        if len(partner[s]) != 2:
            raise ValueError("mask is not the complement of a perfect matching")
        cyc = [s]
        seen[s] = True
        prev, cur = s, partner[s][0]
        while cur != s:
            seen[cur] = True
            cyc.append(cur)
            a, b = partner[cur]
            prev, cur = cur, (b if a == prev else a)
        circuits.append(cyc)
    return circuits


def _odd_counter(g: CubicGraph) -> Callable[[int], int]:
    """Fast odd-circuit count of the 2-factor complementary to a matching."""
    n = g.n
    inc = [tuple((1 << e, u) for e, u in zip(g.inc[v], (g.edges[e][0] if g.edges[e][1] == v else g.edges[e][1] for e in g.inc[v]))) for v in range(n)]

    def count(pm: int) -> int:
        seen = 0
        odd = 0
        for s in range(n):
            if seen >> s & 1:
                continue
            length = 0
            prev = -1
            cur = s
            while True:
                seen |= 1 << cur
                length += 1
                nxt = -1
                for ebit, u in inc[cur]:
                    if not pm & ebit and u != prev:
                        nxt = u
                        break
                prev, cur = cur, nxt
                if cur == s:
                    break
            odd += length & 1
        return odd

    return count


def odd_circuit_count(g: CubicGraph, pm: int) -> int:
    return sum(len(c) & 1 for c in two_factor_circuits(g, pm))


# -- resistance --------------------------------------------------------------


def _far_root(g: CubicGraph, sources: Sequence[int]) -> int:
    from .connectivity import bfs_distances

    if not sources:
        return 0
    dist = bfs_distances(g, sources)
    return max(range(g.n), key=lambda v: (dist[v], -v))


class _RemovalTester:
    """Colourability of G minus edges/vertices, with the search started far
    from the removed part (where an intact obstruction is most likely)."""

    def __init__(self, g: CubicGraph):
        self.g = g
        self.solver = EdgeSolver.of(g)
        self._orders: dict[int, list[int]] = {}

    def _order(self, root: int) -> list[int]:
        order = self._orders.get(root)
        if order is None:
            from .connectivity import bfs_distances

            d = bfs_distances(self.g, [root])
            edges = self.g.edges
            order = sorted(range(self.g.m), key=lambda i: (min(d[edges[i][0]], d[edges[i][1]]), max(d[edges[i][0]], d[edges[i][1]]), i))
            self._orders[root] = order
        return order

    def colouring(self, edges: Iterable[int] = (), vertices: Iterable[int] = (), budget: Budget | None = None):
        edges = tuple(edges)
        vertices = tuple(vertices)
        ends = [v for e in edges for v in self.g.edges[e]] + list(vertices)
        order = self._order(_far_root(self.g, ends))
        return self.solver.colouring(removed=edges, removed_vertices=vertices, budget=budget, order=order)


@dataclass
class ResistanceResult:
    value: int | None
    kind: str
    witness: tuple[int, ...] | None
    colouring: list[int] | None = None
    tests: int = 0
    capped: bool = False


def resistance(
    g: CubicGraph | Multipole,
    kind: Literal["edge", "vertex"] = "edge",
    cap: int = 5,
    start: int = 0,
    budget: Budget | int | None = None,
    progress: Callable[[str], None] | None = None,
) -> ResistanceResult:
    """Smallest number of edges (or vertices) whose removal leaves a
    colourable graph, by testing every k-subset for k = start, start+1, ...

    Returns the first k with a witness set and its colouring (re-checked
    independently).  Past ``cap`` the result has ``value=None`` and
    ``capped=True`` meaning "at least cap+1".  Multipoles are accepted too:
    their dangling and isolated edges are ordinary edges with one or no
    constrained end.
    """
    bud = as_budget(budget, "resistance")
    if isinstance(g, Multipole):
        solver = EdgeSolver.of(g)

        def test(edges=(), vertices=()):
            return solver.colouring(removed=edges, removed_vertices=vertices, budget=bud)

        at = solver.at
        m_count = len(g.edges)
    else:
        tester = _RemovalTester(g)

        def test(edges=(), vertices=()):
            return tester.colouring(edges=edges, vertices=vertices, budget=bud)

        at = g.inc
        m_count = g.m
    pool = range(m_count) if kind == "edge" else range(g.n)
    tests = 0
    for k in range(start, cap + 1):
        if progress:
            progress(f"resistance: testing all {k}-subsets of {kind}s")
        for subset in itertools.combinations(pool, k):
            tests += 1
            col = test(edges=subset) if kind == "edge" else test(vertices=subset)
            if col is not None:
                gone = set(subset) if kind == "edge" else {e for v in subset for e in at[v]}
                if not check_colouring(g, col) or any((c == 0) != (i in gone) for i, c in enumerate(col)):
                    raise AssertionError(f"resistance witness {subset} failed re-validation")
                return ResistanceResult(k, kind, subset, col, tests)
    return ResistanceResult(None, kind, None, None, tests, capped=True)


# -- oddness -------------------------------------------------------------------


@dataclass
class OddnessResult:
    value: int
    witness: int | None  # perfect matching whose complement attains the value
    circuits: list[list[int]] | None
    mode: str
    matchings_seen: int
    exhaustive: bool


def oddness(
    g: CubicGraph,
    mode: Literal["direct", "bound_assisted"] = "bound_assisted",
    rho: int | None = None,
    budget: Budget | int | None = None,
) -> OddnessResult:
    """Fewest odd circuits in a 2-factor.

    ``direct`` scans every perfect matching (stopping only at 0).
    ``bound_assisted`` first gets the resistance (or takes ``rho``), which
    bounds oddness from below by the next even number >= rho, and stops at
    the first 2-factor meeting that bound.
    """
    _require_bridgeless(g, "oddness")
    bud = as_budget(budget, "oddness")
    count_odd = _odd_counter(g)
    if mode == "direct":
        target = 0
    elif mode == "bound_assisted":
        if rho is None:
            rho = resistance(g, budget=bud).value
            if rho is None:
                raise BudgetExhausted("resistance above cap", 0)
        target = rho + (rho & 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    best = [None, None]
    seen = 0

    def visit(pm: int) -> bool:
        nonlocal seen
        seen += 1
        k = count_odd(pm)
        if best[0] is None or k < best[0]:
            best[0], best[1] = k, pm
        return k <= target

    enumerate_perfect_matchings(g, visit, bud)
    if best[0] is None:
        raise ValueError("graph has no perfect matching")
    circuits = two_factor_circuits(g, best[1])
    assert sum(len(c) & 1 for c in circuits) == best[0]
    exhaustive = best[0] > target
    return OddnessResult(best[0], best[1], circuits, mode, seen, exhaustive)


# -- weak oddness -----------------------------------------------------------------


def _cycle_space_basis(g: CubicGraph) -> list[int]:
    """Fundamental cycles of a BFS spanning tree as edge masks."""
    parent = [-1] * g.n
    pedge = [-1] * g.n
    seen = [False] * g.n
    order = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        queue = [r]
        for v in queue:
            order.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    pedge[u] = g.edge_id(u, v)
                    queue.append(u)
    tree = {e for e in pedge if e >= 0}
    depth = [0] * g.n
    for v in order:
        if parent[v] >= 0:
            depth[v] = depth[parent[v]] + 1
    basis = []
    for i, (u, v) in enumerate(g.edges):
        if i in tree:
            continue
        mask = 1 << i
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            mask ^= 1 << pedge[a]
            a = parent[a]
        basis.append(mask)
    return basis


def _odd_components(g: CubicGraph, mask: int) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in indices_of(mask):
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    sizes: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return sum(1 for s in sizes.values() if s & 1)


@dataclass
class WeakOddnessResult:
    value: int | None
    lower: int
    upper: int | None
    witness: int | None
    mode: str


def weak_oddness(
    g: CubicGraph,
    mode: Literal["direct", "bound_assisted"] = "bound_assisted",
    rho: int | None = None,
    omega: int | None = None,
    max_direct_order: int = 24,
) -> WeakOddnessResult:
    """Fewest odd-order components of an even factor.

    In a cubic graph an even factor is an element of the cycle space (every
    vertex gets degree 0 or 2), so ``direct`` walks all 2**beta of them in
    Gray-code order; it is refused above ``max_direct_order`` vertices.
    ``bound_assisted`` pins the value from rho <= w' <= omega, w' even and
    w' = 2 only when rho = 2, and leaves ``value`` None when those do not
    determine it.
    """
    if mode == "direct":
        if g.n > max_direct_order:
            raise ValueError(f"direct weak oddness refused above {max_direct_order} vertices (n={g.n})")
        basis = _cycle_space_basis(g)
        mask = 0
        best, arg = _odd_components(g, 0), 0
        for step in range(1, 1 << len(basis)):
            bit = (step & -step).bit_length() - 1
            mask ^= basis[bit]
            k = _odd_components(g, mask)
            if k < best:
                best, arg = k, mask
                if best == 0:
                    break
        return WeakOddnessResult(best, best, best, arg, "direct")
    if rho is None or omega is None:
        raise ValueError("bound-assisted weak oddness needs rho and omega")
    lower = rho + (rho & 1)
    if lower == 2 and rho != 2:
        lower = 4
    upper = omega
    value = lower if lower == upper else None
    return WeakOddnessResult(value, lower, upper, None, "bound_assisted")


# -- perfect matching index, gamma2, mu3 -------------------------------------------


def _colour_classes(g: CubicGraph) -> list[int] | None:
    col = EdgeSolver.of(g).colouring()
    if col is None:
        return None
    return [sum(1 << i for i, c in enumerate(col) if c == k) for k in (1, 2, 3)]


@dataclass
class CoverResult:
    value: int | None
    witness: tuple[int, ...] | None
    lower: int
    exhaustive_below: bool = True


def perfect_matching_index(
    g: CubicGraph, pms: list[int] | None = None, max_k: int = 7, budget: Budget | int | None = None
) -> CoverResult:
    """Fewest perfect matchings covering all edges.

    3 with the colour classes as witness when colourable; otherwise a
    depth-first set cover over the matchings for k = 4, 5, ... (each k is
    exhausted before moving on).
    """
    _require_bridgeless(g, "perfect matching index")
    classes = _colour_classes(g)
    if classes is not None:
        return CoverResult(3, tuple(classes), 3)
    bud = as_budget(budget, "perfect matching index")
    pms = perfect_matchings(g, budget=bud) if pms is None else pms
    if not pms:
        raise ValueError("graph has no perfect matching")
    full = g.full_mask
    containing = [[p for p in pms if p >> i & 1] for i in range(g.m)]
    half = g.n // 2

    def cover(uncovered: int, left: int, chosen: list[int]) -> tuple[int, ...] | None:
        if not uncovered:
            return tuple(chosen)
        if left == 0 or uncovered.bit_count() > left * half:
            return None
        bud.tick()
        # branch on the uncovered edge with fewest matchings through it
        best_i, best_len = -1, None
        rest = uncovered
        while rest:
            low = rest & -rest
            rest ^= low
            i = low.bit_length() - 1
            ln = len(containing[i])
            if best_len is None or ln < best_len:
                best_i, best_len = i, ln
                if ln <= 1:
                    break
        for p in containing[best_i]:
            chosen.append(p)
            got = cover(uncovered & ~p, left - 1, chosen)
            chosen.pop()
            if got:
                return got
        return None

    for k in range(4, max_k + 1):
        got = cover(full, k, [])
        if got:
            return CoverResult(k, got, 4)
    return CoverResult(None, None, max_k + 1)


def gamma2(g: CubicGraph, pms: list[int] | None = None, omega: int | None = None, budget: Budget | int | None = None) -> CoverResult:
    """Fewest common edges of two distinct perfect matchings.

    Stops early at the lower bound: 0 for colourable graphs, otherwise
    max(1, omega/2).
    """
    _require_bridgeless(g, "gamma2")
    classes = _colour_classes(g)
    if classes is not None:
        return CoverResult(0, (classes[0], classes[1]), 0)
    bud = as_budget(budget, "gamma2")
    pms = perfect_matchings(g, budget=bud) if pms is None else pms
    lower = max(1, (omega or 0) // 2)
    if len(pms) == 1:
        return CoverResult(g.n // 2, (pms[0], pms[0]), lower)
    best, arg = None, None
    for i, a in enumerate(pms):
        bud.tick()
        for b in pms[i + 1:]:
            k = (a & b).bit_count()
            if best is None or k < best:
                best, arg = k, (a, b)
                if best <= lower:
                    return CoverResult(best, arg, lower)
    return CoverResult(best, arg, lower)


def mu3(g: CubicGraph, pms: list[int] | None = None, omega: int | None = None, budget: Budget | int | None = None) -> CoverResult:
    """Fewest edges left uncovered by the union of three perfect matchings.

    Stops early at the lower bound: 0 for colourable graphs, otherwise
    ceil(3 * omega / 2) (and 1 when omega is unknown).
    """
    _require_bridgeless(g, "mu3")
    classes = _colour_classes(g)
    if classes is not None:
        return CoverResult(0, tuple(classes), 0)
    bud = as_budget(budget, "mu3")
    pms = perfect_matchings(g, budget=bud) if pms is None else pms
    m = g.m
    half = g.n // 2
    lower = max(1, -(-3 * (omega or 0) // 2))
    if len(pms) < 3:
        trip = tuple(itertools.islice(itertools.cycle(pms), 3))
        u = trip[0] | trip[1] | trip[2]
        return CoverResult(m - u.bit_count(), trip, lower)
    best, arg = m + 1, None
    # pairs with the largest union first: good triples show up early
    pairs = sorted(
        ((m - (a | b).bit_count(), i, j) for i, a in enumerate(pms) for j, b in enumerate(pms) if i < j),
    )
    for unc, i, j in pairs:
        if unc - half >= best:
            break
        bud.tick()
        u = pms[i] | pms[j]
        for c in pms:
            k = m - (u | c).bit_count()
            if k < best:
                best, arg = k, (pms[i], pms[j], c)
                if best <= lower:
                    return CoverResult(best, arg, lower)
    return CoverResult(best, arg, lower)


# -- combined report --------------------------------------------------------------


@dataclass
class MeasureReport:
    omega: int | None = None
    weak_oddness: int | None = None
    resistance: int | None = None
    resistance_vertex: int | None = None
    pmi: int | None = None
    gamma2: int | None = None
    mu3: int | None = None
    perfect_matchings: int | None = None
    witnesses: dict = field(default_factory=dict)
    mode_flags: dict = field(default_factory=dict)
    budget_flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _edge_list(g: CubicGraph, mask: int) -> list[list[int]]:
    return [list(e) for e in g.edges_in(mask)]


def measure_report(
    g: CubicGraph,
    only: Iterable[str] | None = None,
    budget: int | None = None,
    vertex_resistance: bool = False,
    direct_oddness: bool = False,
) -> MeasureReport:
    """Compute the requested matching measures, sharing intermediate results.

    A measure whose search runs out of budget is left as None and flagged
    ``undecided`` in ``budget_flags``.
    """
    want = set(only) if only is not None else {"omega", "weak_oddness", "resistance", "pmi", "gamma2", "mu3"}
    rep = MeasureReport()
    if _bridges(g):
        rep.mode_flags["bridge"] = True
        return rep

    def run(name, fn):
        try:
            return fn()
        except BudgetExhausted:
            rep.budget_flags[name] = "undecided"
            return None

    need_rho = want & {"resistance", "omega", "weak_oddness"}
    rho = None
    if need_rho:
        res = run("resistance", lambda: resistance(g, budget=budget))
        if res is not None:
            rho = res.value
            rep.resistance = rho
            if res.witness is not None:
                rep.witnesses["resistance"] = [list(g.edges[i]) for i in res.witness]
    if vertex_resistance:
        res_v = run("resistance_vertex", lambda: resistance(g, kind="vertex", budget=budget))
        if res_v is not None:
            rep.resistance_vertex = res_v.value
            if res_v.witness is not None:
                rep.witnesses["resistance_vertex"] = list(res_v.witness)
    omega = None
    if want & {"omega", "weak_oddness", "gamma2", "mu3"}:
        mode = "direct" if direct_oddness or rho is None else "bound_assisted"
        od = run("omega", lambda: oddness(g, mode=mode, rho=rho, budget=budget))
        if od is not None:
            omega = od.value
            rep.omega = omega
            rep.mode_flags["omega"] = mode
            rep.witnesses["omega"] = {"matching": _edge_list(g, od.witness), "circuit_lengths": sorted(len(c) for c in od.circuits)}
    if "weak_oddness" in want and rho is not None and omega is not None:
        if g.n <= 20:
            wo = weak_oddness(g, "direct")
            rep.mode_flags["weak_oddness"] = "direct"
        else:
            wo = weak_oddness(g, "bound_assisted", rho=rho, omega=omega)
            rep.mode_flags["weak_oddness"] = "bound_assisted"
        rep.weak_oddness = wo.value
    pms = None
    if want & {"pmi", "gamma2", "mu3"}:
        pms = run("perfect_matchings", lambda: perfect_matchings(g, budget=budget))
        if pms is not None:
            rep.perfect_matchings = len(pms)
    if pms is not None:
        if "pmi" in want:
            r = run("pmi", lambda: perfect_matching_index(g, pms, budget=budget))
            if r is not None:
                rep.pmi = r.value
                rep.witnesses["pmi"] = [_edge_list(g, p) for p in r.witness or ()]
        if "gamma2" in want:
            r = run("gamma2", lambda: gamma2(g, pms, omega=omega, budget=budget))
            if r is not None:
                rep.gamma2 = r.value
                rep.witnesses["gamma2"] = [_edge_list(g, p) for p in r.witness]
        if "mu3" in want:
            r = run("mu3", lambda: mu3(g, pms, omega=omega, budget=budget))
            if r is not None:
                rep.mu3 = r.value
                rep.witnesses["mu3"] = [_edge_list(g, p) for p in r.witness]
    return rep
