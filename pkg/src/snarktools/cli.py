"""Command-line front end: ``snarktools <command> ...``.

Exit codes: 0 success, 1 verification diff, 2 usage error, 3 node budget
exhausted.  Progress goes to standard error; standard output carries only
the result.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Callable

from .budget import BudgetExhausted
from .graph import CubicGraph, GraphFormatError, decode_graph6, from_graph6, parse_adjacency_list, to_adjacency_list, to_graph6

EXIT_OK, EXIT_DIFF, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- input ------------------------------------------------------------------------


def read_graphs(spec: str) -> list[tuple[str, CubicGraph]]:
    """A named graph, ``m31:<index>``, or a file (.g6: one graph per line;
    anything else: one adjacency list)."""
    from .constructions import NAMED_GRAPHS, named_graph

    if spec.lower() in NAMED_GRAPHS:
        return [(spec, named_graph(spec))]
    if spec.lower().startswith("m31:"):
        from .dataset import load

        try:
            return [(spec, load(int(spec[4:])))]
        except (ValueError, IndexError) as exc:
            raise UsageError(str(exc)) from None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"no such file or graph name: {spec}")
    text = path.read_text()
    try:
        if path.suffix == ".g6" or (":" not in text and text.strip()):
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if len(lines) == 1:
                return [(spec, from_graph6(lines[0]))]
            return [(f"{spec}#{k + 1}", from_graph6(ln)) for k, ln in enumerate(lines)]
        return [(spec, parse_adjacency_list(text))]
    except GraphFormatError as exc:
        raise UsageError(f"{spec}: {exc}") from None


def read_graph(spec: str) -> CubicGraph:
    graphs = read_graphs(spec)
    if len(graphs) != 1:
        raise UsageError(f"{spec}: expected one graph, found {len(graphs)}")
    return graphs[0][1]


def emit(data, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    elif fmt == "markdown" and isinstance(data, list) and data and isinstance(data[0], dict):
        keys = [k for k in data[0] if not isinstance(data[0][k], (dict, list))]
        print("| " + " | ".join(keys) + " |")
        print("|" + "---|" * len(keys))
        for row in data:
            print("| " + " | ".join(str(row.get(k)) for k in keys) + " |")
    else:
        items = data if isinstance(data, list) else [data]
        for item in items:
            if isinstance(item, dict):
                for k, v in item.items():
                    if not isinstance(v, (dict, list)):
                        print(f"{k}: {v}")
                print()
            else:
                print(item)


def progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- commands ----------------------------------------------------------------------------

MEASURES = ("colourable", "girth", "zeta", "circumference", "diameter", "aut", "canon", "omega", "weak_oddness", "resistance", "pmi", "gamma2", "mu3")


def cmd_invariants(args) -> int:
    from .colouring import is_colourable
    from .connectivity import structure_report
    from .matchings import measure_report

    want = set(MEASURES) if not args.only else {w.strip() for w in args.only.split(",") if w.strip()}
    unknown = want - set(MEASURES) - {"radius"}
    if unknown:
        raise UsageError(f"unknown invariant(s): {', '.join(sorted(unknown))}")
    if "radius" in want:
        want.add("diameter")
    out = []
    undecided = False
    for spec in args.files:
        for name, g in read_graphs(spec):
            progress(f"{name}: computing")
            rec: dict = {"graph": name, "n": g.n}
            if "colourable" in want:
                try:
                    rec["colourable"] = is_colourable(g, args.budget)
                except BudgetExhausted:
                    rec["colourable"] = "undecided"
            structural = {"girth", "zeta", "circumference", "diameter", "aut", "canon"} & want
            if structural:
                only = {"canon": "aut"}
                sr = structure_report(g, args.budget, only={only.get(w, w) for w in structural})
                d = sr.to_dict()
                for key in ("girth", "zeta", "circumference", "circumference_deficit", "diameter", "radius", "aut", "canonical_form"):
                    if d.get(key) is not None:
                        rec[key] = d[key]
                rec["cycle_rank"] = d["cycle_rank"]
                for k in d["budget_flags"]:
                    rec[k] = "undecided"
                    undecided = True
                if d["witnesses"]:
                    rec["structure_witnesses"] = d["witnesses"]
            matching = {"omega", "weak_oddness", "resistance", "pmi", "gamma2", "mu3"} & want
            if matching:
                mr = measure_report(g, only=matching, budget=args.budget)
                d = mr.to_dict()
                if d["mode_flags"].get("bridge"):
                    rec["matching_measures"] = "undefined: graph has a bridge"
                for key in ("omega", "weak_oddness", "resistance", "pmi", "gamma2", "mu3"):
                    if key in matching:
                        rec[key] = d[key]
                for k in d["budget_flags"]:
                    rec[k] = "undecided"
                    undecided = True
                rec["witnesses"] = d["witnesses"]
                rec["mode_flags"] = d["mode_flags"]
            out.append(rec)
    emit(out if len(out) != 1 or args.format == "markdown" else out[0], args.format)
    return EXIT_BUDGET if undecided else EXIT_OK


def cmd_verify_dataset(args) -> int:
    from .dataset import verify_all

    indices = None
    if args.indices:
        try:
            indices = [int(x) for x in args.indices.split(",")]
        except ValueError:
            raise UsageError("--indices takes comma-separated integers") from None
    try:
        rep = verify_all(budget=args.budget, jobs=args.jobs, indices=indices, progress=progress)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(rep.to_json())
    else:
        print(rep.to_markdown(), end="")
        for d in rep.diffs:
            print(f"DIFF graph {d['index']} {d['column']}: expected {d['expected']}, got {d['got']}")
        for d in rep.undecided:
            print(f"UNDECIDED graph {d['index']} {d['column']}")
        for msg in rep.integrity:
            print(f"INTEGRITY {msg}")
        n = len(rep.rows)
        bad = len({d["index"] for d in rep.diffs + rep.undecided})
        print(f"{n - bad}/{n} rows match")
    if rep.diffs or rep.integrity:
        return EXIT_DIFF
    if rep.undecided:
        return EXIT_BUDGET
    return EXIT_OK


def _filter(name: str) -> Callable[[CubicGraph], bool] | None:
    from .colouring import is_colourable
    from .connectivity import cyclic_connectivity, girth

    table: dict[str, Callable[[CubicGraph], bool] | None] = {
        "none": None,
        "uncolourable": lambda g: not is_colourable(g),
        "snark": lambda g: not is_colourable(g) and girth(g) >= 5 and cyclic_connectivity(g) >= 4,
        "zeta4": lambda g: cyclic_connectivity(g) >= 4,
        "false": lambda g: False,
    }
    if name not in table:
        raise UsageError(f"unknown filter {name!r}; choose from {', '.join(table)}")
    return table[name]


def cmd_fourjoin(args) -> int:
    from .constructions import FourJoinSpec, enumerate_four_joins, four_join
    from .multipole import JunctionError

    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    if args.enumerate:
        modes = {"vertices": ("vertices",), "edges": ("edges",), "both": ("vertices", "edges")}
        res = enumerate_four_joins(
            g1, g2, filter=_filter(args.filter), dedup=args.dedup,
            modes1=modes[args.modes1], modes2=modes[args.modes2],
        )
        if args.format == "json":
            emit([{"spec": json.loads(s.to_json()), "graph6": to_graph6(g), "n": g.n} for s, g in res], "json")
        else:
            for _, g in res:
                print(to_graph6(g))
        progress(f"{len(res)} graph(s)")
        return EXIT_OK
    if not args.spec:
        raise UsageError("fourjoin needs --spec FILE or --enumerate")
    try:
        spec = FourJoinSpec.from_json(Path(args.spec).read_text())
        g = four_join(g1, g2, spec)
    except FileNotFoundError:
        raise UsageError(f"no such spec file: {args.spec}") from None
    except (ValueError, KeyError, JunctionError) as exc:
        raise UsageError(f"invalid 4-join: {exc}") from None
    if args.format == "json":
        emit({"graph6": to_graph6(g), "n": g.n, "adjacency": to_adjacency_list(g)}, "json")
    else:
        print(to_graph6(g))
    return EXIT_OK


def cmd_convert(args) -> int:
    src = Path(args.input)
    if not src.is_file():
        raise UsageError(f"no such file: {args.input}")
    text = src.read_text()
    target = args.to or ("graph6" if args.output.endswith(".g6") else "adj" if args.output.endswith(".adj") else None)
    try:
        if target is None:
            target = "adj" if (src.suffix == ".g6" or ":" not in text) else "graph6"
        if src.suffix == ".g6" or ":" not in text:
            n, edges = decode_graph6(text.strip().splitlines()[0])
            g = CubicGraph(n, edges)
        else:
            g = parse_adjacency_list(text)
    except GraphFormatError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    if target == "graph6":
        body = to_graph6(g) + "\n"
    else:
        labels = g.labels
        if labels is not None:
            body = "{" + "; ".join(f"{labels[v]}: {' '.join(str(labels[u]) for u in g.adj[v])}" for v in range(g.n)) + "}\n"
        else:
            body = to_adjacency_list(g) + "\n"
    if args.output == "-":
        sys.stdout.write(body)
    else:
        Path(args.output).write_text(body)
    return EXIT_OK


def cmd_blocks(args) -> int:
    from .colouring import block_N_signature, block_T_signature, classify_4pole
    from .constructions import block, dipole_Z

    name = args.name
    if name.upper().startswith("Z") and name[1:].isdigit():
        m = dipole_Z(int(name[1:]), h=args.h)
    else:
        try:
            m = block(name.upper() if name.lower() != "h" else "H1")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        info: dict = {"name": name, "n": m.n, "connectors": list(map(list, m.connectors)), "text": m.to_text()}
        if m.k == 4:
            cls, pairing = classify_4pole(m, args.budget)
            info["class"] = cls.value
            info["pairing"] = pairing
        if name.upper() == "T":
            info["signature"] = block_T_signature(m, args.budget)
        if name.upper() == "N":
            info["signature"] = block_N_signature(m, args.budget)
        emit(info, "json")
    else:
        print(m.to_text(), end="")
    return EXIT_OK


def cmd_canon(args) -> int:
    from .canon import automorphism_group_order, canonical_form

    out = []
    for spec in args.files:
        for name, g in read_graphs(spec):
            out.append({"graph": name, "canonical_form": canonical_form(g, args.budget), "aut": automorphism_group_order(g, args.budget)})
    if args.format == "text":
        for rec in out:
            print(f"{rec['canonical_form']}\t{rec['aut']}\t{rec['graph']}")
    else:
        emit(out, args.format)
    return EXIT_OK


def cmd_oddness(args) -> int:
    from .matchings import oddness

    g = read_graph(args.file)
    r = oddness(g, mode=args.mode, budget=args.budget)
    emit({"omega": r.value, "mode": r.mode, "circuit_lengths": sorted(len(c) for c in r.circuits), "matchings_seen": r.matchings_seen}, args.format)
    return EXIT_OK


def cmd_resistance(args) -> int:
    from .matchings import resistance

    g = read_graph(args.file)
    r = resistance(g, kind=args.kind, cap=args.cap, budget=args.budget, progress=progress)
    if r.value is None:
        emit({"resistance": f">={args.cap + 1}", "kind": args.kind}, args.format)
        return EXIT_BUDGET
    witness = [list(g.edges[i]) for i in r.witness] if args.kind == "edge" else list(r.witness)
    emit({"resistance": r.value, "kind": args.kind, "witness": witness, "tests": r.tests}, args.format)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="node budget per search (default: unlimited)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=("json", "text", "markdown"), default=None, help="output format (default depends on the command)")
    common.add_argument("--seed", type=int, default=0, help="random seed (all current commands are deterministic)")

    p = argparse.ArgumentParser(prog="snarktools", description="Snark invariants, building blocks and the 31-graph dataset.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="matching and structural invariants")
    s.add_argument("files", nargs="+", help="graph files (.adj / .g6), names like petersen, or m31:<index>")
    s.add_argument("--only", help="comma-separated subset of: " + ", ".join(MEASURES))
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify-dataset", parents=[common], help="recompute and diff the 31-graph dataset")
    s.add_argument("--indices", help="comma-separated subset of 1..31")
    s.set_defaults(func=cmd_verify_dataset, default_format="markdown")

    s = sub.add_parser("fourjoin", parents=[common], help="one 4-join from a spec file, or all of them")
    s.add_argument("--g1", required=True)
    s.add_argument("--g2", required=True)
    s.add_argument("--spec", help="JSON spec file")
    s.add_argument("--enumerate", action="store_true")
    s.add_argument("--filter", default="none", help="none, uncolourable, snark, zeta4, false")
    s.add_argument("--dedup", action="store_true")
    s.add_argument("--modes1", choices=("vertices", "edges", "both"), default="both")
    s.add_argument("--modes2", choices=("vertices", "edges", "both"), default="both")
    s.set_defaults(func=cmd_fourjoin, default_format="text")

    s = sub.add_parser("convert", parents=[common], help="adjacency list <-> graph6")
    s.add_argument("input")
    s.add_argument("output", help="output file or - for stdout")
    s.add_argument("--to", choices=("graph6", "adj"))
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("blocks", parents=[common], help="print a building block or Z dipole")
    s.add_argument("name", help="I, H1, H2, T, N, Z1..Z4")
    s.add_argument("--h", default="H1", choices=("H1", "H2"), help="H variant inside Z1/Z2")
    s.set_defaults(func=cmd_blocks, default_format="text")

    s = sub.add_parser("canon", parents=[common], help="canonical graph6 and |Aut|")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_canon, default_format="text")

    s = sub.add_parser("oddness", parents=[common])
    s.add_argument("file")
    s.add_argument("--mode", choices=("direct", "bound_assisted"), default="bound_assisted")
    s.set_defaults(func=cmd_oddness)

    s = sub.add_parser("resistance", parents=[common])
    s.add_argument("file")
    s.add_argument("--kind", choices=("edge", "vertex"), default="edge")
    s.add_argument("--cap", type=int, default=5)
    s.set_defaults(func=cmd_resistance)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
