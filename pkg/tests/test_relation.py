import random

import pytest

import oracles
from conftest import as_pairs, from_pairs
from roughnelson.corpus import all_quasiorders, random_quasiorder
from roughnelson.errors import InputError
from roughnelson.relation import Relation, Universe, bits, format_set


def test_bits_and_format():
    assert list(bits(0b1011)) == [0, 1, 3]
    assert format_set([]) == "{}"
    assert format_set(["a", "b"]) == "{a,b}"


def test_universe_rejects_duplicates_and_unknown_labels():
    with pytest.raises(InputError):
        Universe(("a", "a"))
    u = Universe(("a", "b"))
    with pytest.raises(InputError):
        u.index("c")
    assert u.subset(["b"]) == 0b10
    assert u.format(0b11) == "{a,b}"


def test_successor_sets(e1, e2):
    assert Relation.identity(Universe.of_size(2)).successors("1") == 0b01
    assert e1.universe.members(e1.successors("1")) == ["1", "2"]
    assert e2.universe.members(e2.successors("x")) == ["x", "y"]


def test_quasiorder_examples(e1):
    assert Relation.identity(Universe.of_size(3)).is_quasiorder()
    assert e1.is_quasiorder()
    assert not from_pairs("12", [("1", "2")]).is_quasiorder()


def test_equivalence_and_partial_order(e1, e3):
    assert e3.is_equivalence() and not e3.is_partial_order()
    assert e1.is_partial_order() and not e1.is_equivalence()
    ident = Relation.identity(Universe.of_size(3))
    assert ident.is_equivalence() and ident.is_partial_order()


def test_closure_examples():
    empty = from_pairs("12", [])
    assert empty.quasiorder_closure() == Relation.identity(empty.universe)
    chain = from_pairs("xyz", [("x", "y"), ("y", "z")]).quasiorder_closure()
    assert as_pairs(chain) == {("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z"), ("x", "z")}


def test_non_transitive_witness_is_reported():
    rel = from_pairs("abc", [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")])
    report = rel.check()
    assert not report.ok
    (finding,) = report.findings
    assert finding.name == "transitive"
    assert finding.witness == {"x": "a", "y": "b", "z": "c"}


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 4), (3, 29), (4, 355)])
def test_quasiorder_generator_matches_brute_force(n, expected):
    generated = [frozenset(as_pairs(r)) for r in all_quasiorders(n)]
    brute = oracles.all_quasiorders([str(i) for i in range(1, n + 1)])
    assert len(generated) == len(set(generated)) == expected
    assert set(generated) == set(brute)


def test_quasiorder_count_on_five_points():
    assert sum(1 for _ in all_quasiorders(5)) == 6942


def test_quasiorder_iff_successor_inclusion():
    for n in range(1, 6):
        for rel in all_quasiorders(n):
            for x in range(n):
                for y in range(n):
                    assert rel.holds(x, y) == (rel.rows[y] & ~rel.rows[x] == 0)


def test_closure_agrees_with_oracle_and_is_a_closure_operator():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 6)
        u = Universe.of_size(n)
        rows = tuple(rng.getrandbits(n) if n else 0 for _ in range(n))
        rel = Relation(u, rows)
        closed = rel.quasiorder_closure()
        assert as_pairs(closed) == oracles.closure(u.labels, as_pairs(rel))
        assert closed.is_quasiorder()
        assert closed.quasiorder_closure() == closed
        assert all(r & ~c == 0 for r, c in zip(rel.rows, closed.rows))
        bigger = Relation(u, tuple(r | rng.getrandbits(n) for r in rows)).quasiorder_closure()
        assert all(c & ~b == 0 for c, b in zip(closed.rows, bigger.rows))


def test_equivalence_and_partial_order_imply_quasiorder():
    rng = random.Random(5)
    for _ in range(200):
        rel = random_quasiorder(rng.randint(1, 6), rng)
        sym = Relation(rel.universe, tuple(r | c for r, c in zip(rel.rows, rel.converse().rows)))
        for r in (rel, sym, sym.quasiorder_closure()):
            if r.is_equivalence() or r.is_partial_order():
                assert r.is_quasiorder()
