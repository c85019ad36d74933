"""The 31 snarks of order 44 with cyclic connectivity 4 and oddness 4.

Adjacency lists live in ``data/m31/gNN.adj``; expected invariant values in
``data/m31/expected.csv``.  :func:`verify_all` recomputes everything and
diffs against the CSV.  Genus is carried along for display only.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable

from .budget import BudgetExhausted
from .graph import CubicGraph, parse_adjacency_list

__all__ = [
    "COUNT",
    "CLASS_COMPOSITION",
    "DatasetEntry",
    "entries",
    "load",
    "load_text",
    "expected",
    "classes",
    "compute_row",
    "VerificationReport",
    "verify_all",
    "class_evidence",
    "VERIFIED_COLUMNS",
]

COUNT = 31

# block counts and extra vertices per class (the class number is the first
# character of the label)
CLASS_COMPOSITION: dict[str, tuple[dict[str, int], int]] = {
    "1": ({"H": 2, "I": 3}, 0),
    "2": ({"H": 2, "I": 2, "N": 1}, 1),
    "3": ({"H": 1, "I": 4}, 2),
    "4": ({"H": 1, "I": 3, "T": 1}, 1),
    "5": ({"I": 5}, 4),
    "6": ({"I": 4, "T": 1}, 3),
}

VERIFIED_COLUMNS = (
    "girth",
    "zeta",
    "resistance",
    "omega",
    "weak_oddness",
    "pmi",
    "gamma2",
    "mu3",
    "circumference",
    "diameter",
    "radius",
    "aut",
)


def _data_dir():
    return resources.files("snarktools").joinpath("data").joinpath("m31")


def _check_index(index: int) -> None:
    if not isinstance(index, int) or not 1 <= index <= COUNT:
        raise IndexError(f"dataset index must be in 1..{COUNT}, got {index!r}")


def load_text(index: int) -> str:
    _check_index(index)
    return _data_dir().joinpath(f"g{index:02d}.adj").read_text()


@lru_cache(maxsize=None)
def load(index: int) -> CubicGraph:
    """Graph number ``index`` (1..31)."""
    return parse_adjacency_list(load_text(index))


@lru_cache(maxsize=1)
def _expected_rows() -> dict[int, dict[str, str]]:
    text = _data_dir().joinpath("expected.csv").read_text()
    body = "\n".join(ln for ln in text.splitlines() if not ln.startswith("#"))
    return {int(r["index"]): r for r in csv.DictReader(io.StringIO(body))}


def expected(index: int) -> dict[str, int | str]:
    """Expected values; ints except ``class``."""
    _check_index(index)
    row = _expected_rows()[index]
    return {k: (v if k == "class" else int(v)) for k, v in row.items()}


def classes() -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for i in range(1, COUNT + 1):
        out.setdefault(str(expected(i)["class"]), []).append(i)
    return out


@dataclass
class DatasetEntry:
    index: int
    adjacency: str
    class_label: str
    expected: dict


def entries() -> list[DatasetEntry]:
    return [DatasetEntry(i, load_text(i).strip(), str(expected(i)["class"]), expected(i)) for i in range(1, COUNT + 1)]


# -- verification --------------------------------------------------------------------


def compute_row(g: CubicGraph, budget: int | None = None) -> dict:
    """Every verified invariant of one graph.  Values that ran out of budget
    are the string ``"undecided"``."""
    from .canon import automorphism_group_order, canonical_form
    from .colouring import is_colourable
    from .connectivity import bridges, circumference, cyclic_connectivity, diameter_radius, girth
    from .matchings import gamma2, mu3, oddness, perfect_matching_index, perfect_matchings, resistance, weak_oddness

    row: dict = {"n": g.n, "bridgeless": not bridges(g)}
    UNDECIDED = "undecided"

    def attempt(fn: Callable[[], object]):
        try:
            return fn()
        except BudgetExhausted:
            return UNDECIDED

    row["colourable"] = attempt(lambda: is_colourable(g, budget))
    row["girth"] = girth(g)
    row["zeta"] = attempt(lambda: cyclic_connectivity(g, budget))
    row["diameter"], row["radius"] = diameter_radius(g)
    row["aut"] = attempt(lambda: automorphism_group_order(g, budget))
    row["canonical_form"] = attempt(lambda: canonical_form(g, budget))

    res = attempt(lambda: resistance(g, budget=budget))
    rho = None if res == UNDECIDED else res.value
    row["resistance"] = UNDECIDED if rho is None else rho
    if rho is not None:
        row["resistance_witness"] = [list(g.edges[i]) for i in res.witness]

    omega = None
    if rho is not None and row["bridgeless"]:
        od = attempt(lambda: oddness(g, "bound_assisted", rho=rho, budget=budget))
        if od != UNDECIDED:
            omega = od.value
            row["omega_circuit_lengths"] = sorted(len(c) for c in od.circuits)
            wo = weak_oddness(g, "bound_assisted", rho=rho, omega=omega)
            row["weak_oddness"] = UNDECIDED if wo.value is None else wo.value
    row["omega"] = UNDECIDED if omega is None else omega

    pms = attempt(lambda: perfect_matchings(g, budget=budget))
    for key, fn in (
        ("pmi", lambda: perfect_matching_index(g, pms, budget=budget)),
        ("gamma2", lambda: gamma2(g, pms, omega=omega, budget=budget)),
        ("mu3", lambda: mu3(g, pms, omega=omega, budget=budget)),
    ):
        r = UNDECIDED if pms == UNDECIDED else attempt(fn)
        row[key] = UNDECIDED if r == UNDECIDED or r.value is None else r.value
    if pms != UNDECIDED:
        row["perfect_matchings"] = len(pms)
    row["circumference"] = attempt(lambda: circumference(g, budget))
    return row


def _row_for_index(args: tuple[int, int | None]) -> tuple[int, dict]:
    index, budget = args
    return index, compute_row(load(index), budget)


@dataclass
class VerificationReport:
    rows: dict[int, dict] = field(default_factory=dict)
    diffs: list[dict] = field(default_factory=list)
    undecided: list[dict] = field(default_factory=list)
    distinct_canonical_forms: int = 0
    integrity: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diffs and not self.undecided and not self.integrity

    def to_json(self) -> str:
        data = asdict(self)
        data["ok"] = self.ok
        data["rows"] = {str(k): v for k, v in self.rows.items()}
        return json.dumps(data, indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        cols = ["index", "class", "aut", "genus*", "diameter", "radius", "circumference", "girth", "zeta", "omega", "weak_oddness", "resistance", "pmi", "gamma2", "mu3", "status"]
        lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        bad = {(d["index"]) for d in self.diffs + self.undecided}
        for i, row in sorted(self.rows.items()):
            exp = expected(i) if 1 <= i <= COUNT else {}
            cells = [str(i), str(exp.get("class", "?")), str(row.get("aut")), str(exp.get("genus", "?"))]
            cells += [str(row.get(c)) for c in cols[4:-1]]
            cells.append("diff" if i in bad else "ok")
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        lines.append("genus* is copied from the reference data and not verified by this tool.")
        lines.append(f"distinct canonical forms: {self.distinct_canonical_forms}")
        return "\n".join(lines) + "\n"


def verify_all(
    budget: int | None = None,
    jobs: int = 1,
    indices: Iterable[int] | None = None,
    graphs: dict[int, CubicGraph] | None = None,
    progress: Callable[[str], None] | None = None,
) -> VerificationReport:
    """Recompute every verified column and diff against the expected CSV.

    ``graphs`` overrides the stored graph for some indices (fault injection
    and experiments).  Rows are aggregated by index, so the verdict does not
    depend on ``jobs``.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    idx = sorted(indices) if indices is not None else list(range(1, COUNT + 1))
    for i in idx:
        _check_index(i)
    graphs = graphs or {}
    rep = VerificationReport()
    todo = [i for i in idx if i not in graphs]
    for i in idx:
        if i in graphs:
            rep.rows[i] = compute_row(graphs[i], budget)
            if progress:
                progress(f"graph {i}: done")
    if jobs == 1 or len(todo) <= 1:
        for i in todo:
            rep.rows[i] = compute_row(load(i), budget)
            if progress:
                progress(f"graph {i}: done")
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, row in pool.map(_row_for_index, [(i, budget) for i in todo]):
                rep.rows[i] = row
                if progress:
                    progress(f"graph {i}: done")
    rep.rows = dict(sorted(rep.rows.items()))
    for i, row in rep.rows.items():
        exp = expected(i)
        if row["n"] != 44:
            rep.integrity.append(f"graph {i}: {row['n']} vertices")
        if row.get("colourable") is not False:
            rep.integrity.append(f"graph {i}: colourable={row.get('colourable')}")
        if not row["bridgeless"]:
            rep.integrity.append(f"graph {i}: has a bridge")
        for col in VERIFIED_COLUMNS:
            got = row.get(col, "undecided")
            item = {"index": i, "column": col, "expected": exp[col], "got": got}
            if got == "undecided":
                rep.undecided.append(item)
            elif got != exp[col]:
                rep.diffs.append(item)
    forms = [row.get("canonical_form") for row in rep.rows.values()]
    rep.distinct_canonical_forms = len(set(forms))
    if rep.distinct_canonical_forms != len(forms):
        rep.integrity.append("two dataset graphs are isomorphic")
    return rep


# -- class evidence ----------------------------------------------------------------


@dataclass
class ClassEvidence:
    index: int
    class_label: str
    composition: dict[str, int]
    extra_vertices: int
    packing: list[tuple[str, list[int]]] | None
    leftover: list[int]
    z_copies: list[tuple[str, list[int], int]]
    z_lower_bound: int

    @property
    def ok(self) -> bool:
        return self.packing is not None and len(self.leftover) == self.extra_vertices

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _host_piece(g: CubicGraph, vertices: Iterable[int]):
    from .graph import delete

    keep = set(vertices)
    return delete(g, vertices=[v for v in range(g.n) if v not in keep])


def class_evidence(index: int, z_search: bool = True) -> ClassEvidence:
    """Disjoint block copies realising the class composition, plus a
    resistance lower bound from disjoint Z-dipole copies.

    Block copies are induced subgraphs.  Z copies only need to be subgraphs:
    identifying dangling edges of an uncolourable piece keeps it
    uncolourable, so the host piece on a Z copy's vertex set has resistance
    at least that of the Z dipole, which is rechecked directly.  Disjoint
    pieces add up, giving a lower bound on the resistance of the graph.
    """
    from .constructions import block, dipole_Z
    from .matchings import resistance
    from .subgraphs import copy_vertex_sets, disjoint_packings

    g = load(index)
    label = str(expected(index)["class"])
    comp, extra = CLASS_COMPOSITION[label[0]]
    candidates = {
        "I": copy_vertex_sets(g, block("I")),
        "H": sorted(set(copy_vertex_sets(g, block("H1"))) | set(copy_vertex_sets(g, block("H2"))), key=sorted),
        "T": copy_vertex_sets(g, block("T")),
        "N": copy_vertex_sets(g, block("N")),
    }
    fams = [(name, candidates[name], count) for name, count in comp.items()]
    packing = next(disjoint_packings(fams), None)
    used = set().union(*(s for _, s in packing)) if packing else set()
    leftover = sorted(set(range(g.n)) - used) if packing else []

    z_copies: list[tuple[str, list[int], int]] = []
    bound = 0
    if z_search:
        pieces: list[tuple[str, frozenset[int]]] = []
        for name, pattern in (
            ("Z2", dipole_Z(2, "H1")), ("Z2", dipole_Z(2, "H2")),
            ("Z1", dipole_Z(1, "H1")), ("Z1", dipole_Z(1, "H2")),
            ("Z4", dipole_Z(4)), ("Z3", dipole_Z(3)),
        ):
            for s in copy_vertex_sets(g, pattern, induced=False):
                pieces.append((name, s))
        weight = {"Z1": 1, "Z2": 2, "Z3": 1, "Z4": 1}
        # best disjoint packing by weight (small search: few copies)
        best: list[tuple[str, frozenset[int]]] = []

        def rec(i: int, used_: frozenset[int], chosen: list, w: int):
            nonlocal best, bound
            if w > bound:
                bound, best = w, list(chosen)
            for j in range(i, len(pieces)):
                name, s = pieces[j]
                if not used_ & s:
                    chosen.append(pieces[j])
                    rec(j + 1, used_ | s, chosen, w + weight[name])
                    chosen.pop()

        rec(0, frozenset(), [], 0)
        bound = 0
        for name, s in best:
            piece = _host_piece(g, s)
            r = resistance(piece, kind="vertex", cap=weight[name]).value
            got = weight[name] + 1 if r is None else r
            z_copies.append((name, sorted(s), got))
            bound += min(got, weight[name])
    return ClassEvidence(
        index,
        label,
        dict(comp),
        extra,
        [(name, sorted(s)) for name, s in packing] if packing else None,
        leftover,
        z_copies,
        bound,
    )
