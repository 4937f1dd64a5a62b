from itertools import product

import pytest

import oracles
from roughnelson import catalog
from roughnelson.corpus import involutions, monteiro_corpus, monteiro_spaces_on
from roughnelson.errors import CheckFailed, InputError
from roughnelson.monteiro import MonteiroSpace, check_monteiro, monteiro_nelson_algebra, upset_negation
from roughnelson.nelson import check_axioms, find_isomorphism, implication_from_n4
from roughnelson.order import Poset
from roughnelson.relation import Universe
from roughnelson.roughset import rs_algebra


def failed(report):
    return {f.name for f in report.findings}


def test_discrete_identity_space():
    space = MonteiroSpace(Poset.antichain(["a", "b"]), (0, 1))
    assert check_monteiro(space).ok
    A = monteiro_nelson_algebra(space)
    assert A.size == 4 and check_axioms(A).ok
    # ~ is complement on the Boolean algebra of all subsets.
    assert {A.labels[i]: A.labels[A.neg[i]] for i in range(A.size)} == {
        "{}": "{a,b}", "{a}": "{b}", "{b}": "{a}", "{a,b}": "{}",
    }


def test_one_point_space():
    A = monteiro_nelson_algebra(MonteiroSpace(Poset.chain(["x"]), (0,)))
    assert A.size == 2 and check_axioms(A).ok


def test_e4_space_gives_the_e1_algebra():
    space = catalog.e4()
    assert check_monteiro(space).ok
    A = monteiro_nelson_algebra(space)
    assert A.size == 4 and check_axioms(A).ok
    assert find_isomorphism(A, rs_algebra(catalog.e1())) is not None


def test_two_chain_with_identity_fails_j1():
    space = MonteiroSpace(Poset.chain(["x", "y"]), (0, 1))
    report = check_monteiro(space)
    assert failed(report) == {"J1"}
    assert report.findings[0].witness == {"x": "x", "y": "y"}
    with pytest.raises(CheckFailed):
        monteiro_nelson_algebra(space)


def test_bad_g_is_rejected():
    with pytest.raises(InputError):
        MonteiroSpace(Poset.chain(["x", "y"]), (0,))
    with pytest.raises(InputError):
        MonteiroSpace(Poset.chain(["x", "y"]), (0, 2))


def test_check_agrees_with_literal_quantification():
    for n in range(1, 4):
        for pairs in oracles.all_partial_orders(n):
            leq = [[(a, b) in pairs for b in range(n)] for a in range(n)]
            space_poset = Poset(Universe.of_size(n), leq)
            for g in product(range(n), repeat=n):
                got = check_monteiro(MonteiroSpace(space_poset, g)).ok
                assert got == oracles.monteiro_ok(range(n), lambda a, b: (a, b) in pairs, g)


def test_upset_algebras_match_set_formulas():
    for space in monteiro_corpus(count=60, max_points=4, seed=3):
        A = monteiro_nelson_algebra(space)
        leq = lambda a, b, m=space.poset.leq: bool(m[a, b])
        pts = range(space.size)
        family, neg, impl = oracles.upset_algebra(pts, leq, space.g)
        decoded = [frozenset(i for i in pts if (1 << i) & m) for m in _family_masks(space, A)]
        assert set(decoded) == set(family)
        for a in range(A.size):
            assert decoded[A.neg[a]] == neg(decoded[a])
            for b in range(A.size):
                assert decoded[A.impl[a, b]] == impl(decoded[a], decoded[b])


def _family_masks(space, A):
    u = space.poset.carrier
    return [u.subset(label.strip("{}").split(",") if label != "{}" else []) for label in A.labels]


def test_generated_spaces_give_nelson_algebras():
    spaces = monteiro_corpus(count=120, max_points=5, seed=7)
    assert len(spaces) == 120
    for space in spaces:
        A = monteiro_nelson_algebra(space)
        assert check_axioms(A).ok
        table, ok = implication_from_n4(A.lattice, A.neg)
        assert ok.all() and (table == A.impl).all()
        for mask in space.poset.upsets():
            neg = upset_negation(space, mask)
            assert space.poset.is_upset(neg)
            assert upset_negation(space, neg) == mask


def test_involutions_are_enumerated_once():
    assert [len(list(involutions(n))) for n in range(6)] == [1, 1, 2, 4, 10, 26]


def test_printed_j2_reading_admits_spaces_whose_algebra_fails_n1():
    # Under g(g(x)) = g(x) every non-involutive idempotent g that passes gives a non-involutive ~.
    found = 0
    for n in range(1, 4):
        for pairs in oracles.natural_partial_orders(n):
            leq = [[(a, b) in pairs for b in range(n)] for a in range(n)]
            poset = Poset(Universe.of_size(n), leq)
            for space in monteiro_spaces_on(poset, j2="printed"):
                if any(space.g[space.g[x]] != x for x in range(n)):
                    A = monteiro_nelson_algebra(space, j2="printed")
                    assert "N1" in failed(check_axioms(A))
                    found += 1
    assert found > 0
