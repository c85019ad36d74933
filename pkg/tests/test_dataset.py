import json

import pytest

from snarktools import dataset
from snarktools.canon import automorphism_group_order
from snarktools.connectivity import diameter_radius, girth
from snarktools.graph import CubicGraph


def test_entries_and_loading():
    items = dataset.entries()
    assert len(items) == dataset.COUNT == 31
    g = dataset.load(28)
    assert (g.n, g.m) == (44, 66)
    assert dataset.load_text(28).lstrip().startswith("{0:")
    for bad in (0, 32, -1):
        with pytest.raises(IndexError):
            dataset.load(bad)


def test_expected_table_values():
    assert dataset.expected(17)["aut"] == 64
    assert dataset.expected(4)["aut"] == 1
    assert (dataset.expected(30)["diameter"], dataset.expected(30)["radius"]) == (7, 6)
    assert (dataset.expected(28)["diameter"], dataset.expected(28)["radius"]) == (8, 6)
    assert all(dataset.expected(i)["circumference"] == 41 for i in range(1, 32))


def test_classes_partition_the_dataset():
    groups = dataset.classes()
    members = sorted(i for idx in groups.values() for i in idx)
    assert members == list(range(1, 32))
    assert {label[0] for label in groups} == set(dataset.CLASS_COMPOSITION)
    assert 10 in groups[str(dataset.expected(10)["class"])]


@pytest.mark.parametrize("index", [4, 17, 28, 30])
def test_cheap_columns(index):
    g = dataset.load(index)
    exp = dataset.expected(index)
    assert girth(g) == 5
    assert diameter_radius(g) == (exp["diameter"], exp["radius"])
    assert automorphism_group_order(g) == exp["aut"]


@pytest.mark.parametrize(
    "index, comp, extra",
    [(28, {"I": 5}, 4), (29, {"I": 4, "T": 1}, 3), (10, {"H": 2, "I": 2, "N": 1}, 1)],
)
def test_class_evidence(index, comp, extra):
    ev = dataset.class_evidence(index)
    assert ev.ok
    assert ev.composition == comp and len(ev.leftover) == extra
    counted = {}
    for name, vs in ev.packing:
        counted[name] = counted.get(name, 0) + 1
    assert counted == comp
    used = [v for _, vs in ev.packing for v in vs]
    assert len(used) == len(set(used))
    assert 1 <= ev.z_lower_bound <= 3
    assert ev.to_dict()["ok"]


def test_tight_budget_reports_undecided():
    rep = dataset.verify_all(budget=50, indices=[1])
    assert not rep.ok
    assert rep.undecided and all(item["index"] == 1 for item in rep.undecided)
    assert not rep.diffs


def test_corrupted_entry_is_reported():
    g = dataset.load(5)
    # swap one endpoint between two disjoint edges: a-b, c-d -> a-d, c-b
    edges = list(g.edges)
    (a, b) = edges[0]
    j = next(j for j, (c, d) in enumerate(edges) if {c, d}.isdisjoint({a, b}) and not g.has_edge(a, d) and not g.has_edge(c, b))
    c, d = edges[j]
    edges[0], edges[j] = (a, d), (c, b)
    bad = CubicGraph(g.n, edges)
    rep = dataset.verify_all(indices=[5], graphs={5: bad}, budget=2_000_000)
    assert not rep.ok
    assert rep.diffs or rep.integrity
    assert all(item["index"] == 5 for item in rep.diffs)
    data = json.loads(rep.to_json())
    assert data["ok"] is False
    assert "genus*" in rep.to_markdown()


def test_bad_arguments():
    with pytest.raises(ValueError):
        dataset.verify_all(jobs=0)
    with pytest.raises(IndexError):
        dataset.verify_all(indices=[99])
