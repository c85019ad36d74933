"""Multipoles: graph fragments with semiedges grouped into connectors.

An edge is a pair of *ends*.  An end ``>= 0`` is a vertex; an end ``< 0``
is a semiedge, stored as ``~sid`` so that semiedge ids are ``0, 1, 2, ...``.
A dangling edge has one semiedge end, an isolated edge has two.  Loops and
parallel edges are allowed here and only rejected when a multipole is
finalized to a :class:`~snarktools.graph.CubicGraph`.

``semiedges`` is the global linear order used by positional junctions;
``connectors`` partitions it into ordered groups.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .graph import CubicGraph, GraphFormatError

__all__ = [
    "Multipole",
    "JunctionError",
    "FreeLoopWarning",
    "join",
    "complete_junction",
    "partial_junction",
    "dipole_junction",
    "subdivide_and_attach",
]

TEXT_VERSION = 1


class JunctionError(ValueError):
    pass


class FreeLoopWarning(UserWarning):
    """Both semiedges of one isolated edge were joined to each other."""


def _sid(end: int) -> int:
    return ~end


@dataclass(frozen=True)
class Multipole:
    n: int
    edges: tuple[tuple[int, int], ...]
    semiedges: tuple[int, ...]
    connectors: tuple[tuple[int, ...], ...]
    origin: tuple[int, ...] | None = field(default=None, compare=False)
    free_loops: int = 0

    def __post_init__(self):
        deg = [0] * self.n
        seen: list[int] = []
        for a, b in self.edges:
            for end in (a, b):
                if end >= 0:
                    if end >= self.n:
                        raise GraphFormatError(f"edge end {end} out of range")
                    deg[end] += 1
                else:
                    seen.append(_sid(end))
        if sorted(seen) != sorted(self.semiedges) or len(set(seen)) != len(seen):
            raise GraphFormatError("semiedge list does not match the edge ends")
        flat = [s for c in self.connectors for s in c]
        if sorted(flat) != sorted(self.semiedges):
            raise GraphFormatError("connectors must partition the semiedges")
        for v, d in enumerate(deg):
            if d != 3:
                raise GraphFormatError(f"vertex {v} has degree {d}, expected 3")

    @classmethod
    def build(
        cls,
        n: int,
        inner: Iterable[Sequence[int]],
        dangling: Sequence[int] = (),
        isolated: int = 0,
        connectors: Sequence[Sequence[int]] | None = None,
        origin: Sequence[int] | None = None,
    ) -> "Multipole":
        """Semiedge ``i`` hangs from vertex ``dangling[i]``; isolated edges
        take the following ids in pairs.  Default: one connector with all.
        The global semiedge order follows the connectors."""
        edges = [(int(u), int(v)) for u, v in inner]
        k = len(dangling)
        for i, v in enumerate(dangling):
            edges.append((int(v), ~i))
        for j in range(isolated):
            edges.append((~(k + 2 * j), ~(k + 2 * j + 1)))
        sems = tuple(range(k + 2 * isolated))
        conns = tuple(tuple(c) for c in connectors) if connectors is not None else ((sems,) if sems else ())
        flat = tuple(s for c in conns for s in c)
        return cls(n, tuple(edges), flat, conns, tuple(origin) if origin is not None else None)

    @classmethod
    def from_graph(cls, g: CubicGraph) -> "Multipole":
        return cls(g.n, g.edges, (), ())

    @property
    def k(self) -> int:
        return len(self.semiedges)

    @property
    def connector_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.connectors)

    def end_of(self, s: int) -> tuple[int, int]:
        """(edge index, side) holding semiedge ``s``."""
        target = ~s
        for i, (a, b) in enumerate(self.edges):
            if a == target:
                return i, 0
            if b == target:
                return i, 1
        raise KeyError(f"semiedge {s} not found")

    def vertex_of(self, s: int) -> int | None:
        """Vertex the semiedge dangles from; ``None`` for an isolated edge."""
        i, side = self.end_of(s)
        other = self.edges[i][1 - side]
        return other if other >= 0 else None

    def with_connectors(self, connectors: Sequence[Sequence[int]]) -> "Multipole":
        """Regroup the semiedges; the global order follows the new grouping."""
        conns = tuple(tuple(c) for c in connectors)
        flat = tuple(s for c in conns for s in c)
        return replace(self, semiedges=flat, connectors=conns)

    def inner_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.edges if a >= 0 and b >= 0]

    def is_simple(self) -> bool:
        inner = self.inner_edges()
        if any(a == b for a, b in inner):
            return False
        keys = [(min(a, b), max(a, b)) for a, b in inner]
        return len(set(keys)) == len(keys)

    def to_graph(self) -> CubicGraph:
        """Finalize a 0-pole into a simple cubic graph."""
        if self.k:
            raise JunctionError(f"{self.k} semiedges remain; not a graph")
        if self.free_loops:
            raise JunctionError("free loop component present")
        return CubicGraph(self.n, self.edges)

    def delete_vertices(self, vertices: Iterable[int]) -> "Multipole":
        """Remove vertices; edges into them become dangling edges.

        New semiedges get fresh ids and form one extra trailing connector.
        Edges between two removed vertices disappear.
        """
        dead = set(vertices)
        keep = [v for v in range(self.n) if v not in dead]
        new = {v: i for i, v in enumerate(keep)}
        fresh = max(self.semiedges, default=-1) + 1
        added = []
        edges = []
        for a, b in self.edges:
            ends = []
            for end in (a, b):
                if end < 0:
                    ends.append(end)
                elif end in dead:
                    ends.append(None)
                else:
                    ends.append(new[end])
            if ends[0] is None and ends[1] is None:
                continue
            if ends[0] is None or ends[1] is None:
                # a dangling edge of a deleted vertex becomes isolated
                other = ends[1] if ends[0] is None else ends[0]
                ends = [other, ~fresh]
                added.append(fresh)
                fresh += 1
            edges.append((ends[0], ends[1]))
        conns = self.connectors + ((tuple(added),) if added else ())
        origin = tuple((self.origin or range(self.n))[v] for v in keep)
        return Multipole(len(keep), tuple(edges), self.semiedges + tuple(added), conns, origin, self.free_loops)

    def disjoint_union(self, other: "Multipole") -> tuple["Multipole", dict[int, int]]:
        """Place ``other`` beside ``self``; returns the union and the id map
        for ``other``'s semiedges."""
        shift = self.n
        base = max(self.semiedges, default=-1) + 1
        remap = {s: base + i for i, s in enumerate(sorted(other.semiedges))}

        def move(end: int) -> int:
            return end + shift if end >= 0 else ~remap[~end]

        edges = self.edges + tuple((move(a), move(b)) for a, b in other.edges)
        sems = self.semiedges + tuple(remap[s] for s in other.semiedges)
        conns = self.connectors + tuple(tuple(remap[s] for s in c) for c in other.connectors)
        return Multipole(self.n + other.n, edges, sems, conns, None, self.free_loops + other.free_loops), remap

    # text form ---------------------------------------------------------

    def to_text(self) -> str:
        """Adjacency body plus a ``connectors:`` line.

        ``v: a b sK`` lists neighbours, with ``sK`` naming semiedge K.  An
        isolated edge appears as ``isolated: sA sB``.
        """
        nbrs: list[list[str]] = [[] for _ in range(self.n)]
        isolated = []
        for a, b in self.edges:
            if a >= 0 and b >= 0:
                nbrs[a].append(str(b))
                nbrs[b].append(str(a))
            elif a >= 0:
                nbrs[a].append(f"s{~b}")
            elif b >= 0:
                nbrs[b].append(f"s{~a}")
            else:
                isolated.append(f"s{~a} s{~b}")
        lines = [f"multipole v{TEXT_VERSION}"]
        lines.append("; ".join(f"{v}: {' '.join(nbrs[v])}" for v in range(self.n)))
        for item in isolated:
            lines.append(f"isolated: {item}")
        lines.append("connectors: " + "".join("[" + " ".join(f"s{s}" for s in c) + "]" for c in self.connectors))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multipole":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("multipole v"):
            raise GraphFormatError("missing 'multipole v1' header")
        if lines[0] != f"multipole v{TEXT_VERSION}":
            raise GraphFormatError(f"unsupported multipole text version: {lines[0]}")
        body = lines[1] if len(lines) > 1 and ":" in lines[1] and not lines[1].startswith(("isolated", "connectors")) else ""
        rest = lines[2:] if body else lines[1:]
        rows: dict[int, list[str]] = {}
        for chunk in body.split(";"):
            if not chunk.strip():
                continue
            head, _, tail = chunk.partition(":")
            rows[int(head)] = tail.split()
        n = len(rows)
        if sorted(rows) != list(range(n)):
            raise GraphFormatError("multipole vertices must be 0..n-1")
        edges = []
        for v, toks in rows.items():
            for t in toks:
                if t.startswith("s"):
                    edges.append((v, ~int(t[1:])))
                else:
                    u = int(t)
                    if u > v:
                        edges.append((v, u))
                    elif u == v:
                        edges.append((v, v))
        # loops were listed twice, parallel edges once per copy on each side
        loops = [e for e in edges if e[0] == e[1]]
        edges = [e for e in edges if e[0] != e[1]] + loops[::2]
        conns: list[tuple[int, ...]] = []
        for ln in rest:
            if ln.startswith("isolated:"):
                a, b = ln.split(":", 1)[1].split()
                edges.append((~int(a[1:]), ~int(b[1:])))
            elif ln.startswith("connectors:"):
                for group in re.findall(r"\[([^\]]*)\]", ln):
                    conns.append(tuple(int(t[1:]) for t in group.split()))
            else:
                raise GraphFormatError(f"unexpected line {ln!r}")
        sems = tuple(s for c in conns for s in c)
        return cls(n, tuple(edges), sems, tuple(conns))


def join(m: Multipole, s: int, t: int) -> Multipole:
    """Join semiedges ``s`` and ``t`` into one edge ``s*t``."""
    if s == t:
        raise JunctionError("cannot join a semiedge with itself")
    if s not in m.semiedges or t not in m.semiedges:
        raise JunctionError(f"semiedge {s if s not in m.semiedges else t} not found")
    i, si = m.end_of(s)
    j, tj = m.end_of(t)
    edges = list(m.edges)
    loops = m.free_loops
    if i == j:
        warnings.warn("joining both ends of an isolated edge leaves a free loop", FreeLoopWarning, stacklevel=2)
        del edges[i]
        loops += 1
    else:
        a = edges[i][1 - si]
        b = edges[j][1 - tj]
        for idx in sorted((i, j), reverse=True):
            del edges[idx]
        edges.append((a, b))
    sems = tuple(x for x in m.semiedges if x not in (s, t))
    conns = tuple(tuple(x for x in c if x not in (s, t)) for c in m.connectors)
    conns = tuple(c for c in conns if c)
    return Multipole(m.n, tuple(edges), sems, conns, m.origin, loops)


def _join_pairs(m: Multipole, pairs: Iterable[tuple[int, int]]) -> Multipole:
    for s, t in pairs:
        m = join(m, s, t)
    return m


def partial_junction(m1: Multipole, m2: Multipole, pairs: Sequence[tuple[int, int]]) -> Multipole:
    """Join semiedge ``a`` of ``m1`` to semiedge ``b`` of ``m2`` for each pair."""
    union, remap = m1.disjoint_union(m2)
    return _join_pairs(union, [(a, remap[b]) for a, b in pairs])


def complete_junction(m1: Multipole, m2: Multipole, perm: Sequence[int] | None = None, require_graph: bool = False):
    """Positional junction ``s_i * t_perm[i]`` of two k-poles.

    Returns a :class:`CubicGraph` when nothing is left dangling and the
    result is simple; otherwise the raw multipole.  With ``require_graph``
    a non-simple result raises :class:`JunctionError`.
    """
    if m1.k != m2.k:
        raise JunctionError(f"k mismatch: {m1.k}-pole and {m2.k}-pole")
    perm = list(range(m1.k)) if perm is None else list(perm)
    if sorted(perm) != list(range(m1.k)):
        raise JunctionError("perm must be a permutation of the semiedge positions")
    pairs = [(m1.semiedges[i], m2.semiedges[perm[i]]) for i in range(m1.k)]
    result = partial_junction(m1, m2, pairs)
    if result.k == 0 and result.free_loops == 0 and result.is_simple():
        return result.to_graph()
    if require_graph:
        raise JunctionError("junction produced loops or parallel edges")
    return result


def dipole_junction(d1: Multipole, d2: Multipole, perm: Sequence[int] | None = None) -> Multipole:
    """The dipole junction: second connector of ``d1`` meets first of ``d2``.

    The result has connectors (first of ``d1``, second of ``d2``).
    """
    if len(d1.connectors) != 2 or len(d2.connectors) != 2:
        raise JunctionError("dipole junction needs two dipoles")
    out, into = d1.connectors[1], d2.connectors[0]
    if len(out) != len(into):
        raise JunctionError(f"connector size mismatch: {len(out)} vs {len(into)}")
    perm = list(range(len(out))) if perm is None else list(perm)
    union, remap = d1.disjoint_union(d2)
    joined = _join_pairs(union, [(out[i], remap[into[perm[i]]]) for i in range(len(out))])
    first = d1.connectors[0]
    second = tuple(remap[s] for s in d2.connectors[1])
    return joined.with_connectors([first, second])


def subdivide_and_attach(m: Multipole, edge: int | tuple[int, int]) -> Multipole:
    """Subdivide an inner edge and hang a new dangling edge off the new vertex.

    ``edge`` is an index into ``m.edges`` or a vertex pair.  The new semiedge
    is a 1-connector appended last.
    """
    if isinstance(edge, tuple):
        cands = [i for i, (a, b) in enumerate(m.edges) if {a, b} == set(edge) and a >= 0 and b >= 0]
        if not cands:
            raise JunctionError(f"{edge} is not an inner edge")
        idx = cands[0]
    else:
        idx = edge
    a, b = m.edges[idx]
    if a < 0 or b < 0:
        raise JunctionError(f"edge {idx} is not an inner edge")
    w = m.n
    s = max(m.semiedges, default=-1) + 1
    edges = list(m.edges)
    edges[idx] = (a, w)
    edges.append((w, b))
    edges.append((w, ~s))
    return Multipole(m.n + 1, tuple(edges), m.semiedges + (s,), m.connectors + ((s,),), None, m.free_loops)
