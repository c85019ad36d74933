"""Simple cubic graphs: representation, validation and serialization.

Vertices are the dense integers ``0..n-1``.  Edges are the unordered pairs
``(u, v)`` with ``u < v`` sorted lexicographically, so the index of an edge
never changes for a given graph.  Edge sets are plain Python ints used as
bitmasks over those indices.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CubicGraph",
    "GraphFormatError",
    "parse_adjacency_list",
    "to_adjacency_list",
    "to_graph6",
    "from_graph6",
    "decode_graph6",
    "encode_graph6",
    "delete",
    "stub_origins",
    "mask_of",
    "indices_of",
]


class GraphFormatError(ValueError):
    """Malformed or non-cubic graph input."""


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class CubicGraph:
    """An immutable simple 3-regular graph.

    Construct from an edge list; vertices are ``0..n-1``.  ``labels`` keeps the
    original vertex names when the graph was read from a file that used other
    integers.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]], labels: Sequence[int] | None = None):
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {u}-{v} out of range for n={n}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphFormatError(f"parallel edges between {a[0]} and {a[1]}")
        adj: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(norm):
            adj[u].append(v)
            adj[v].append(u)
            inc[u].append(i)
            inc[v].append(i)
        for v in range(n):
            if len(adj[v]) != 3:
                raise GraphFormatError(f"vertex {v} has degree {len(adj[v])}, expected 3")
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.inc: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in inc)
        self._edge_index = {e: i for i, e in enumerate(norm)}
        self.labels = tuple(labels) if labels is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge ``uv``; ``KeyError`` if absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def nbr_mask(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a vertex bitmask."""
        return tuple(mask_of(a) for a in self.adj)

    def edges_in(self, mask: int) -> list[tuple[int, int]]:
        return [self.edges[i] for i in indices_of(mask)]

    def relabel(self, perm: Sequence[int]) -> "CubicGraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return CubicGraph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CubicGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m})"


_ENTRY = re.compile(r"^\s*(-?\d+)\s*:\s*((?:-?\d+\s*)*)$")


def parse_adjacency_list(text: str) -> CubicGraph:
    """Parse ``"0: 12 14 27; 1: 6 9 16; ..."`` (braces optional).

    Vertex names may be any distinct integers; they are mapped to ``0..n-1``
    in increasing order and kept in ``labels``.
    """
    body = text.strip()
    if body.startswith("{"):
        body = body[1:]
    if body.endswith("}"):
        body = body[:-1]
    rows: dict[int, list[int]] = {}
    for pos, chunk in enumerate(body.split(";")):
        if not chunk.strip():
            continue
        match = _ENTRY.match(chunk)
        if not match:
            raise GraphFormatError(f"cannot parse entry {pos}: {chunk.strip()!r}")
        v = int(match.group(1))
        if v in rows:
            raise GraphFormatError(f"duplicate entry for vertex {v} (entry {pos})")
        rows[v] = [int(x) for x in match.group(2).split()]
    if not rows:
        raise GraphFormatError("empty adjacency list")

    for v, nbrs in rows.items():
        if len(set(nbrs)) != len(nbrs):
            raise GraphFormatError(f"parallel edges at vertex {v}")
        if v in nbrs:
            raise GraphFormatError(f"loop at vertex {v}")
        if len(nbrs) != 3:
            raise GraphFormatError(f"vertex {v} has degree {len(nbrs)}, expected 3")
        for u in nbrs:
            if u not in rows:
                raise GraphFormatError(f"vertex {v} lists unknown vertex {u}")
            if v not in rows[u]:
                raise GraphFormatError(f"asymmetric adjacency: {v} lists {u} but {u} does not list {v}")

    labels = sorted(rows)
    index = {lab: i for i, lab in enumerate(labels)}
    edges = {(min(index[v], index[u]), max(index[v], index[u])) for v, nbrs in rows.items() for u in nbrs}
    keep = None if labels == list(range(len(labels))) else labels
    return CubicGraph(len(labels), edges, labels=keep)


def to_adjacency_list(g: CubicGraph, braces: bool = True) -> str:
    body = "; ".join(f"{v}: {' '.join(map(str, g.adj[v]))}" for v in range(g.n))
    return "{" + body + "}" if braces else body


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(n: int, edges: Iterable[Sequence[int]]) -> str:
    """Standard graph6 encoding of a simple graph."""
    present = {(min(u, v), max(u, v)) for u, v in edges}
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return _encode_n(n) + "".join(chars)


def decode_graph6(s: str) -> tuple[int, list[tuple[int, int]]]:
    """Decode graph6 into ``(n, edges)`` without any degree checks."""
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise GraphFormatError("graph6 contains a byte outside 63..126")
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            if len(data) < 8:
                raise GraphFormatError("truncated graph6 header")
            n = 0
            for x in data[2:8]:
                n = (n << 6) | x
            data = data[8:]
        else:
            if len(data) < 4:
                raise GraphFormatError("truncated graph6 header")
            n = (data[1] << 12) | (data[2] << 6) | data[3]
            data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) < need:
        raise GraphFormatError(f"truncated graph6 bit vector: {len(data)} of {need} bytes")
    if len(data) > need:
        raise GraphFormatError("trailing bytes after graph6 bit vector")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (data[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return n, edges


def to_graph6(g: CubicGraph) -> str:
    return encode_graph6(g.n, g.edges)


def from_graph6(s: str) -> CubicGraph:
    n, edges = decode_graph6(s)
    return CubicGraph(n, edges)


def delete(g: CubicGraph, vertices: Iterable[int] = (), edges: Iterable[int | tuple[int, int]] = ()):
    """Remove vertices and edges from ``g`` and keep the dangling ends.

    ``edges`` may be given as edge indices or vertex pairs.  Each deleted edge
    leaves a semiedge at both ends; each edge from a surviving vertex into a
    deleted vertex leaves one semiedge.  Semiedges are numbered by ascending
    surviving vertex, then by the index of the edge they came from.  Surviving
    vertices keep their relative order.  Returns a
    :class:`~snarktools.multipole.Multipole` with a single connector holding
    every semiedge.
    """
    from .multipole import Multipole

    dead = set(vertices)
    for v in dead:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    cut = set()
    for e in edges:
        i = g.edge_id(*e) if isinstance(e, tuple) else e
        if not 0 <= i < g.m:
            raise ValueError(f"edge {e} not in graph")
        u, v = g.edges[i]
        if u in dead or v in dead:
            raise ValueError(f"edge {g.edges[i]} is already removed with a deleted vertex")
        cut.add(i)

    stubs = stub_origins(g, dead, cut)
    keep = [v for v in range(g.n) if v not in dead]
    new = {v: i for i, v in enumerate(keep)}
    inner = [(new[u], new[v]) for i, (u, v) in enumerate(g.edges) if i not in cut and u not in dead and v not in dead]
    return Multipole.build(len(keep), inner, [new[v] for v, _ in stubs], origin=tuple(keep))


def stub_origins(g: CubicGraph, dead: Iterable[int], cut: Iterable[int]) -> list[tuple[int, int]]:
    """The semiedges :func:`delete` creates, in its order, as
    ``(surviving vertex, index of the edge it came from)``."""
    dead = set(dead)
    cut = set(cut)
    stubs = []
    for i, (u, v) in enumerate(g.edges):
        if i in cut:
            stubs.append((u, i))
            stubs.append((v, i))
        elif u in dead and v not in dead:
            stubs.append((v, i))
        elif v in dead and u not in dead:
            stubs.append((u, i))
    stubs.sort()
    return stubs
