import json

import pytest

import lwheel


def test_ttf_minimal_shape():
    w = lwheel.generate_ttf(1, 4)
    assert w.flavor == "ttf"
    assert [len(layer) for layer in w.layers] == [1, 5]
    assert lwheel.girth(w.graph) == 4
    assert lwheel.validate_axioms(w) == []


def test_ehf_audits_and_holes():
    w = lwheel.generate_ehf(2, 4)
    assert len(w.layers[1]) == 7
    assert lwheel.validate_axioms(w) == []
    assert lwheel.parity_audit(w) == []
    holes = lwheel.enumerate_holes(w.graph)
    assert holes["complete"]
    assert holes["has_even_hole"] == "no"
    assert holes["min_hole_len"] >= 4
    for name in ("find_pyramid", "find_prism", "find_theta"):
        r = getattr(lwheel, name)(w.graph)
        assert r["complete"]
    assert lwheel.find_pyramid(w.graph)["present"] == "no"


def test_theta_found_on_k23():
    g = lwheel.Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    r = lwheel.find_theta(g)
    assert r["present"] == "yes"
    assert sorted(r["witness"]["roles"]["ends"]) == [0, 1]


def test_pyramid_variant_witness():
    w = lwheel.generate_ehf(3, 4, variant="pyramid")
    wit = lwheel.pyramid_witness_in_variant(w)
    assert wit["kind"] == "pyramid"
    assert len(wit["roles"]["triangle"]) == 3


def test_widths():
    w = lwheel.generate_ttf(2, 4)
    assert len(lwheel.minor_branch_sets(w)) == 3
    pd = lwheel.path_decomposition(w)
    assert 2 <= pd["width"] <= 4


def test_uniform_and_feasibility():
    m = lwheel.minimal_uniform_m("ttf", 2, 4)
    assert m == 19
    w = lwheel.generate_ttf(2, 4, policy="uniform", m=m)
    assert lwheel.uniformity_audit(w)["uniform_m"] == m
    with pytest.raises(lwheel.FeasibilityError) as info:
        lwheel.generate_ttf(2, 4, policy="uniform", m=3)
    assert info.value.minimal_m == 19
    with pytest.raises(ValueError):
        lwheel.generate_ttf(2, 3)


def test_serialization_round_trips():
    w = lwheel.generate_ehf(2, 5, variant="pyramid")
    text = w.to_json()
    assert lwheel.wheel_from_json(text).to_json() == text
    assert json.loads(text)["flavor"] == "ehf_pyramid_variant"
    c4 = lwheel.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert lwheel.export_graph(c4, "graph6") == "Cl\n"
    for fmt in ("graph6", "dimacs", "edgelist", "dot"):
        assert lwheel.import_graph(lwheel.export_graph(w.graph, fmt), fmt) == w.graph
    with pytest.raises(lwheel.ParseError):
        lwheel.import_graph("C", "graph6")
