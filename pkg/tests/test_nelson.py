import random

import numpy as np
import pytest

import oracles
from roughnelson import catalog
from roughnelson.corpus import all_quasiorders, random_quasiorder
from roughnelson.errors import InputError
from roughnelson.nelson import (
    NelsonAlgebra,
    check_axioms,
    check_derived_identities,
    check_embedding,
    check_homomorphism,
    check_isomorphism,
    find_isomorphism,
    implication_from_n4,
    is_semi_simple,
    semi_simple_witness,
)
from roughnelson.roughset import rs_algebra


def failed_names(report):
    return {f.name for f in report.findings}


def test_known_algebras_pass(e1):
    assert check_axioms(rs_algebra(e1)).ok
    assert check_axioms(catalog.boolean2()).ok
    assert check_axioms(catalog.chain4_algebra()).ok


def test_identity_negation_breaks_n2(e1):
    A = rs_algebra(e1)
    broken = NelsonAlgebra(A.lattice, list(range(A.size)), A.impl)
    report = check_axioms(broken)
    assert "N2" in failed_names(report)
    (n2,) = [f for f in report.findings if f.name == "N2"]
    a, b = A.index(n2.witness["a"]), A.index(n2.witness["b"])
    assert A.leq[a, b] != A.leq[b, a]


def test_chain4_table_agrees_with_n4_and_with_e1(e1):
    A = catalog.chain4_algebra()
    table, ok = implication_from_n4(A.lattice, A.neg)
    assert ok.all() and (table == A.impl).all()
    f = find_isomorphism(A, rs_algebra(e1))
    assert f == [0, 1, 2, 3]
    assert check_isomorphism(f, A, rs_algebra(e1)).ok


def test_weak_negation_bounds():
    for A in (catalog.boolean2(), catalog.chain4_algebra(), rs_algebra(catalog.e2())):
        assert A.weak_negation(A.bottom) == A.top
        assert A.weak_negation(A.top) == A.bottom


def test_semi_simple_examples(e1, e3):
    assert is_semi_simple(rs_algebra(e3))
    assert is_semi_simple(catalog.boolean2())
    A = rs_algebra(e1)
    assert not is_semi_simple(A)
    assert A.labels[semi_simple_witness(A)] == "({2},{1,2})"
    # Set formulas: not (0,{1}) = (U,U), so only ({2},{1,2}) fails a | not a = 1.
    rs, neg, impl = oracles.rs_ops(("1", "2"), {("1", "1"), ("2", "2"), ("1", "2")})
    U, E = frozenset("12"), frozenset()
    failing = {a for a in rs if (a[0] | impl(a, (E, E))[0], a[1] | impl(a, (E, E))[1]) != (U, U)}
    assert failing == {(frozenset("2"), U)}


def test_homomorphism_examples(e1):
    A = rs_algebra(e1)
    assert check_isomorphism(list(range(A.size)), A, A).ok
    report = check_homomorphism([A.top] * A.size, A, A)
    assert "zero" in failed_names(report)
    assert "injective" in failed_names(check_embedding([A.top] * A.size, A, A))


def test_from_tables_validation():
    with pytest.raises(InputError):
        NelsonAlgebra.from_tables(["0", "1"], [[True, True], [False, True]], ["1", "x"], [["1", "1"], ["0", "1"]])
    with pytest.raises(InputError):
        NelsonAlgebra.from_tables(["0", "1"], [[True, True], [False, True]], ["1"], [["1", "1"], ["0", "1"]])


def _as_oracle(A):
    elems = list(range(A.size))
    return (lambda a, b: bool(A.leq[a, b])), elems, (lambda a: int(A.neg[a])), (lambda a, b: int(A.impl[a, b]))


def test_axiom_checker_agrees_with_literal_quantification_under_mutation():
    rng = random.Random(21)
    bases = [rs_algebra(r) for n in (1, 2, 3) for r in all_quasiorders(n)][:40] + [catalog.boolean2()]
    seen = set()
    for _ in range(400):
        A = rng.choice(bases)
        neg, impl = A.neg.copy(), A.impl.copy()
        kind = rng.randrange(3)
        if kind == 0:
            neg[rng.randrange(A.size)] = rng.randrange(A.size)
        elif kind == 1:
            impl[rng.randrange(A.size), rng.randrange(A.size)] = rng.randrange(A.size)
        B = NelsonAlgebra(A.lattice, neg, impl)
        want = oracles.nelson_failures(*_as_oracle(B))
        got = failed_names(check_axioms(B)) - {"bounds", "distributive"}
        assert got == want
        seen |= want
    assert seen >= {"N1", "N2", "N4", "N5"}


def test_n4_determines_the_implication_on_the_corpus():
    rng = random.Random(8)
    algebras = [rs_algebra(r) for n in range(1, 4) for r in all_quasiorders(n)]
    algebras += [rs_algebra(random_quasiorder(rng.randint(4, 7), rng)) for _ in range(40)]
    for A in algebras:
        table, ok = implication_from_n4(A.lattice, A.neg)
        assert ok.all() and (table == A.impl).all()


def test_n4_oracle_on_small_algebras():
    for n in range(1, 4):
        for rel in all_quasiorders(n):
            A = rs_algebra(rel)
            leq, elems, neg, _ = _as_oracle(A)
            for a in elems:
                for b in elems:
                    assert A.impl[a, b] == oracles.n4_implication(leq, elems, neg, a, b)


def test_derived_identities_hold():
    rng = random.Random(1)
    for _ in range(40):
        A = rs_algebra(random_quasiorder(rng.randint(1, 7), rng))
        assert check_derived_identities(A).ok
        assert A.neg[A.bottom] == A.top and A.neg[A.top] == A.bottom


def test_find_isomorphism_rejects_non_isomorphic(e1, e3):
    assert find_isomorphism(rs_algebra(e1), rs_algebra(e3)) is None
    assert find_isomorphism(rs_algebra(e1), catalog.chain4_algebra()) is not None
