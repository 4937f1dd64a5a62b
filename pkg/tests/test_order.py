import numpy as np
import pytest

import oracles
from roughnelson.errors import InputError, LatticeError
from roughnelson.order import (
    Lattice,
    Poset,
    distributivity_witness,
    heyting_table,
    is_distributive,
    join_irreducibles,
    prime_filters,
    relative_pseudocomplement,
    upsets,
)
from roughnelson.relation import Relation, Universe
from roughnelson.roughset import build_rs


def chain(labels):
    return Lattice(Poset.chain(labels))


def diamond():
    labels = ["0", "a", "b", "1"]
    leq = [[True, True, True, True], [False, True, False, True], [False, False, True, True], [False, False, False, True]]
    return Lattice.from_leq(labels, leq)


def m3():
    labels = ["0", "a", "b", "c", "1"]
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return Lattice.from_leq(labels, leq)


def names(lattice, idx):
    return sorted(lattice.labels[i] for i in idx)


def test_poset_validation():
    with pytest.raises(InputError):
        Poset(Universe(("a", "b")), [[True, True], [True, True]])
    with pytest.raises(InputError):
        Poset(Universe(("a",)), [[False]])


def test_non_lattice_is_rejected():
    leq = np.eye(2, dtype=bool)
    with pytest.raises(LatticeError):
        Lattice(Poset(Universe(("a", "b")), leq))


def test_join_irreducible_examples():
    assert names(chain(["0", "1"]), join_irreducibles(chain(["0", "1"]))) == ["1"]
    c4 = chain(["0", "p", "q", "1"])
    assert names(c4, join_irreducibles(c4)) == ["1", "p", "q"]
    d = diamond()
    assert names(d, join_irreducibles(d)) == ["a", "b"]


def test_distributivity_examples():
    assert is_distributive(chain(list("abcde")))
    assert not is_distributive(m3())
    assert distributivity_witness(m3()) is not None
    e2 = Relation.from_pairs(Universe(("x", "y", "z")), [("x", "x"), ("y", "y"), ("z", "z"), ("x", "y")])
    assert is_distributive(build_rs(e2).lattice)


def test_pseudocomplement_examples():
    c4 = chain(["0", "p", "q", "1"])
    i = c4.index
    assert relative_pseudocomplement(c4, i("q"), i("p")) == i("p")
    assert relative_pseudocomplement(c4, i("p"), i("q")) == i("1")
    for a in range(4):
        assert relative_pseudocomplement(c4, a, a) == c4.top


def test_upset_examples():
    anti = Poset.antichain(["a", "b", "c"])
    assert len(upsets(anti)) == 8
    xyz = Poset.chain(["x", "y", "z"])
    assert [xyz.carrier.format(m) for m in upsets(xyz)] == ["{}", "{z}", "{y,z}", "{x,y,z}"]


def test_prime_filter_examples():
    c4 = chain(["0", "p", "q", "1"])
    got = sorted(tuple(c4.poset.carrier.members(f)) for f in prime_filters(c4))
    assert got == sorted([("p", "q", "1"), ("q", "1"), ("1",)])
    two = chain(["0", "1"])
    assert [two.poset.carrier.members(f) for f in prime_filters(two)] == [["1"]]
    d = diamond()
    assert sorted(d.poset.carrier.members(f) for f in prime_filters(d)) == [["a", "1"], ["b", "1"]]
    with pytest.raises(LatticeError):
        prime_filters(m3())


def _lattices_up_to(n_max, naturally_labelled=False):
    """Every labelled lattice with at most n_max elements, as (Lattice, leq predicate).

    ``naturally_labelled`` keeps only labellings where a <= b implies a <= b as
    integers, which still covers every lattice up to isomorphism.
    """
    for n in range(1, n_max + 1):
        orders = oracles.natural_partial_orders(n) if naturally_labelled else oracles.all_partial_orders(n)
        for pairs in orders:
            leq = lambda a, b, p=pairs: (a, b) in p
            if not oracles.is_lattice(leq, range(n)):
                continue
            matrix = [[(a, b) in pairs for b in range(n)] for a in range(n)]
            yield Lattice.from_leq([str(i) for i in range(n)], matrix), leq


def test_lattice_operations_match_oracle_on_all_small_lattices():
    count = 0
    for L, leq in _lattices_up_to(4):
        elems = range(L.size)
        count += 1
        for a in elems:
            for b in elems:
                assert L.join[a, b] == oracles.join(leq, elems, a, b)
                assert L.meet[a, b] == oracles.meet(leq, elems, a, b)
        assert sorted(join_irreducibles(L)) == sorted(oracles.join_irreducibles(leq, elems))
        assert is_distributive(L) == oracles.is_distributive(leq, elems)
    assert count > 0


def test_non_lattices_are_rejected_on_small_posets():
    for n in range(1, 5):
        for pairs in oracles.all_partial_orders(n):
            leq = lambda a, b, p=pairs: (a, b) in p
            matrix = [[(a, b) in pairs for b in range(n)] for a in range(n)]
            poset = Poset(Universe.of_size(n), matrix)
            if oracles.is_lattice(leq, range(n)):
                Lattice(poset)
            else:
                with pytest.raises(LatticeError):
                    Lattice(poset)


def _distributive_lattices(n_max):
    # Labelled 6-point posets are too many for the brute-force oracle; every finite distributive
    # lattice is the upset lattice of its join-irreducibles, so size 6 comes from small posets.
    for L, leq in _lattices_up_to(5, naturally_labelled=True):
        if is_distributive(L):
            yield L
    for n in (3, 4):
        for pairs in oracles.all_partial_orders(n):
            poset = Poset(Universe.of_size(n), [[(a, b) in pairs for b in range(n)] for a in range(n)])
            family = upsets(poset)
            if len(family) > 6:
                continue
            leq = [[a & ~b == 0 for b in family] for a in family]
            yield Lattice.from_leq([str(m) for m in family], leq)


def test_prime_filters_match_brute_force_on_distributive_lattices_up_to_six():
    sizes = set()
    for L in _distributive_lattices(6):
        sizes.add(L.size)
        leq = lambda a, b, m=L.leq: bool(m[a, b])
        elems = list(range(L.size))
        want = sorted(sorted(f) for f in oracles.prime_filters(leq, elems))
        got = sorted(sorted(i for i in range(L.size) if f >> i & 1) for f in prime_filters(L))
        assert got == want
    assert sizes == {1, 2, 3, 4, 5, 6}


def test_heyting_table_and_birkhoff_decomposition():
    for L in _distributive_lattices(6):
        H = heyting_table(L)
        n = L.size
        J = join_irreducibles(L)
        for a in range(n):
            assert L.join_all(j for j in J if L.leq[j, a]) == a
            for b in range(n):
                for c in range(n):
                    assert bool(L.leq[c, H[a, b]]) == bool(L.leq[L.meet[a, c], b])
