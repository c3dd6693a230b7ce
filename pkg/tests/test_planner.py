from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.arith import IntMatrix
from mahlerkit.errors import DomainError, SchemaError
from mahlerkit.fixtures.registry import load_json
from mahlerkit.planner import (
    Embedding,
    discharge,
    items_from_request,
    plan,
    plan_request,
    render_report,
    report,
)
from mahlerkit.systems import radii_mult_classes, spectral_radius

REQUEST = load_json("matryoshka-request")

EXTERNAL = [
    "[AF3, Theorem 2.4]",
    "[ABu07] Theorem 4",
    "[AF3, Theorem 2.1]",
    "[Ni_Liv] Theorem 3.5",
    "[Ni84] Theorem 3",
    "[DHR] Theorem 4.3",
]


def _req(*items):
    return {"items": [dict(it) for it in items]}


def _item(label, fixture, point, **extra):
    return dict(label=label, fixture=fixture, point=point, **extra)


@pytest.fixture(scope="module")
def request_tree():
    return plan_request(REQUEST)


def test_request_radius_classes(request_tree):
    rhos = [c.rho[:6] for c in request_tree.classes]
    assert rhos == ["1.6180", "1.8392", "3.4142", "2.0000"]
    assert [len(c.items) for c in request_tree.classes] == [3, 2, 2, 5]


def test_request_point_classes(request_tree):
    binary = request_tree.classes[3]
    assert [leaf.point for leaf in binary.children] == ["1/2", "1/10", "1/3", "1/7"]
    golden = request_tree.classes[0]
    assert [leaf.point for leaf in golden.children] == ["1/2", "1/3", "1/5"]


def test_request_citations(request_tree):
    assert request_tree.citations() == EXTERNAL
    assert request_tree.conditional  # Cobham admissibility is declared, not proved


def test_request_leaf_rules(request_tree):
    by_point = {leaf.point: leaf for leaf in request_tree.classes[3].children}
    assert by_point["1/2"].rule.startswith("lifting")
    kinds = [o.kind for o in by_point["1/2"].obligations]
    assert kinds.count("Transcendence") == 2 and "FunctionAlgIndep" in kinds
    assert by_point["1/2"].obligations[-1].citation == "[Ni_Liv] Theorem 3.5"
    assert by_point["1/10"].obligations[-1].citation == "[Ni84] Theorem 3"
    assert by_point["1/3"].obligations[-1].citation == "[DHR] Theorem 4.3"
    single = request_tree.classes[0].children[0]
    assert [o.citation for o in single.obligations] == ["[ABu07] Theorem 4"]


def _shape(tree):
    classes = {frozenset(c.items) for c in tree.classes}
    leaves = {(frozenset(l.items), l.rule, frozenset((o.kind, o.citation) for o in l.obligations)) for l in tree.leaves()}
    return classes, leaves, set(tree.citations())


@settings(max_examples=6, deadline=None)
@given(st.randoms(use_true_random=False))
def test_plan_is_permutation_invariant(rnd):
    items = list(REQUEST["items"])
    rnd.shuffle(items)
    shuffled = plan_request({"items": items})
    assert _shape(shuffled) == _shape(plan_request(REQUEST))


MATS = [IntMatrix([[1, 1], [1, 0]]), IntMatrix([[1, 1, 0], [1, 0, 1], [1, 0, 0]]),
        IntMatrix([[2, 2], [1, 2]]), IntMatrix([[2, 0], [0, 2]])]


@settings(max_examples=8, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_iteration_keeps_stage1_partition(ds):
    """Replacing each T by T^d (d <= 3) changes radii but not their classes."""
    iterated = radii_mult_classes([spectral_radius(t**d) for t, d in zip(MATS, ds)], 20)
    assert iterated.classes == ((0,), (1,), (2,), (3,))
    pairs = [spectral_radius(MATS[0]), spectral_radius(MATS[0] ** ds[0])]
    assert len(radii_mult_classes(pairs, 20).classes) == 1


def test_embedding_base_prefers_small_support():
    items = items_from_request(_req(_item("a", "tm", "1/2"), _item("b", "tm", "1/3"), _item("c", "tm", "1/6")))
    tree = plan(items)
    [emb] = tree.classes[0].children
    assert isinstance(emb, Embedding)
    assert emb.decomposition["base"] == ["1/2", "1/3"]
    assert emb.base_check == "Admissible"
    assert emb.leaf.obligations[-1].subject == ("f_tm(z1)", "f_tm(z2)", "f_tm(z1*z2)")
    assert emb.leaf.flags  # no cited result for the lifted family


def test_hecke_request_plans_and_reports_dependent():
    split = load_json("hecke-split")["items"]
    data = {"items": [{"label": it["label"], "hecke": {"omega": it["omega"]}, "point": it["alpha"]} for it in split]}
    tree = plan_request(data)
    assert tree.hecke is not None and tree.hecke.decision["verdict"] == "Dependent"
    doc = report(tree, discharge(tree))
    assert doc["summary"] == "Dependent, witness (1,1,-2)"


def test_skip_everything_is_inconclusive(request_tree):
    doc = report(request_tree, discharge(request_tree, ["*"]))
    assert doc["verdict"] == "Inconclusive"
    assert "skipped" in render_report(doc)


def test_mixed_family_is_flagged():
    data = _req(_item("a", "tm", "1/2"))
    data["items"].append({"label": "h", "hecke": {"omega": {"a": 0, "b": 1, "c": 1, "d": 2}}, "point": "1/2"})
    tree = plan_request(data)
    doc = report(tree, discharge(tree, ["*"]))
    assert doc["verdict"] == "Inconclusive"


@pytest.mark.slow
def test_request_discharge_is_conditional_independence(request_tree):
    doc = report(request_tree, discharge(request_tree))
    assert doc["verdict"] == "Independent"
    assert doc["summary"] == "Independent, conditional on obligations O1…O6 (citations attached)"
    assert [o["citation"] for o in doc["conditional_on"]] == EXTERNAL


def test_request_errors():
    with pytest.raises(SchemaError):
        items_from_request({"items": [{"fixture": "tm", "point": "1/2"}]})
    with pytest.raises(SchemaError):
        items_from_request(_req(_item("a", "tm", "1/2"), _item("a", "pf", "1/3")))
    with pytest.raises(SchemaError):
        items_from_request(_req(_item("a", "tm", "one half")))
    with pytest.raises(DomainError):
        items_from_request({"items": []})
