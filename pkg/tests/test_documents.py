import json
import random

import pytest

from roughnelson import catalog, documents
from roughnelson.corpus import monteiro_corpus, random_quasiorder
from roughnelson.dot import emit_dot
from roughnelson.errors import InputError
from roughnelson.order import Lattice, Poset
from roughnelson.roughset import build_rs, rs_algebra
from roughnelson.topology import from_quasiorder


def structures():
    rng = random.Random(6)
    rels = [catalog.e1(), catalog.e2(), catalog.e3()] + [random_quasiorder(rng.randint(1, 6), rng) for _ in range(20)]
    out = []
    for r in rels:
        out += [r, from_quasiorder(r), build_rs(r), rs_algebra(r)]
    out += monteiro_corpus(count=20, max_points=4, seed=1)
    out += [catalog.boolean2(), catalog.chain4_algebra(), catalog.e4()]
    return out


def test_save_then_load_is_exact(tmp_path):
    for i, s in enumerate(structures()):
        doc = documents.dump(s)
        assert doc["version"] == "1"
        path = tmp_path / f"{i}.json"
        documents.save(s, path)
        back = documents.load(json.loads(path.read_text(encoding="utf-8")))
        assert documents.dump(back) == doc
        if hasattr(s, "opens"):
            assert set(back.opens) == set(s.opens)
        elif hasattr(s, "witnesses"):
            assert back.pairs == s.pairs and back.witnesses == s.witnesses
        else:
            assert back == s


def test_close_flag_applies_the_closure():
    doc = documents.dump(catalog.e1())
    doc["payload"]["pairs"] = [["1", "2"]]
    assert not documents.load(doc).is_quasiorder()
    doc["payload"]["close"] = True
    assert documents.load(doc) == catalog.e1()


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(version="2"),
    lambda d: d.update(kind="graph"),
    lambda d: d.update(payload=[]),
    lambda d: d["payload"].pop("universe"),
    lambda d: d["payload"].update(pairs=[["1", "9"]]),
    lambda d: d["payload"].update(close="yes"),
])
def test_malformed_relation_documents(mutate):
    doc = documents.dump(catalog.e1())
    mutate(doc)
    with pytest.raises(InputError):
        documents.load(doc)


def test_rough_set_system_pairs_are_validated():
    doc = documents.dump(build_rs(catalog.e1()))
    doc["payload"]["pairs"][1]["upper"] = ["2"]
    with pytest.raises(InputError):
        documents.load(doc)


def test_algebra_documents_are_validated():
    doc = documents.dump(catalog.chain4_algebra())
    doc["payload"]["leq"][0][1] = False
    with pytest.raises(InputError):
        documents.load(doc)
    doc = documents.dump(catalog.chain4_algebra())
    doc["payload"]["neg"][0] = "z"
    with pytest.raises(InputError):
        documents.load(doc)


def test_wrapped_cli_output_is_loadable():
    doc = {"command": "rs build", "document": documents.dump(catalog.e2())}
    assert documents.load(doc) == catalog.e2()


def edges(dot):
    return [line.strip() for line in dot.splitlines() if "->" in line]


def nodes(dot):
    return [line.strip() for line in dot.splitlines() if "[label=" in line]


def test_dot_two_chain():
    dot = emit_dot(Poset.chain(["a", "b"]))
    assert len(nodes(dot)) == 2 and edges(dot) == ["n0 -> n1;"]
    assert "rankdir=BT;" in dot


def test_dot_e1_is_a_path():
    dot = emit_dot(build_rs(catalog.e1()))
    assert edges(dot) == ["n0 -> n1;", "n1 -> n2;", "n2 -> n3;"]
    assert 'n2 [label="({2},{1,2})"];' in dot


def test_dot_e2_hasse_diagram():
    system = build_rs(catalog.e2())
    dot = emit_dot(system)
    assert len(nodes(dot)) == 8
    assert len(edges(dot)) == len(system.poset.hasse_edges()) == 10
    assert emit_dot(build_rs(catalog.e2())) == dot
    assert emit_dot(system.lattice) == emit_dot(Lattice(system.poset))


def test_dot_of_relations():
    e3 = emit_dot(catalog.e3())
    assert nodes(e3) == ['n0 [label="{1,2}"];'] and edges(e3) == []
    e2 = emit_dot(catalog.e2())
    assert len(nodes(e2)) == 3 and edges(e2) == ["n0 -> n1;"]
    from conftest import from_pairs

    loose = emit_dot(from_pairs("ab", [("a", "b"), ("b", "b")]))
    assert set(edges(loose)) == {"n0 -> n1;", "n1 -> n1;"}


def test_dot_labels_are_escaped():
    dot = emit_dot(Poset.chain(['say "hi"']))
    assert r'label="say \"hi\""' in dot
