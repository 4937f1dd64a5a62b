from hypothesis import given, settings
from hypothesis import strategies as st

from roughnelson.nelson import check_axioms, check_derived_identities
from roughnelson.relation import Relation, Universe
from roughnelson.representation import equivalence_suite
from roughnelson.roughset import build_rs, lower_approx, rough_equality_class, rs_nelson_algebra, upper_approx


@st.composite
def relations(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Relation(Universe.of_size(n), tuple(rows))


@st.composite
def quasiorders(draw, max_size=6):
    return draw(relations(max_size)).quasiorder_closure()


@given(relations(), st.data())
def test_approximations_are_dual(rel, data):
    x = data.draw(st.integers(0, rel.universe.full))
    full = rel.universe.full
    assert lower_approx(rel, x) == full & ~upper_approx(rel, full & ~x)


@given(quasiorders(), st.data())
def test_quasiorder_approximations_bracket_the_set(rel, data):
    x = data.draw(st.integers(0, rel.universe.full))
    lo, up = lower_approx(rel, x), upper_approx(rel, x)
    assert lo & ~x == 0 and x & ~up == 0
    assert lower_approx(rel, lo) == lo and upper_approx(rel, up) == up


@given(quasiorders(), st.data())
def test_rough_equality_class_members_share_approximations(rel, data):
    x = data.draw(st.integers(0, rel.universe.full))
    members = rough_equality_class(rel, x)
    assert x in members
    assert all(lower_approx(rel, y) == lower_approx(rel, x) and upper_approx(rel, y) == upper_approx(rel, x)
               for y in members)


@settings(max_examples=60, deadline=None)
@given(quasiorders())
def test_rough_set_algebras_are_nelson(rel):
    A = rs_nelson_algebra(build_rs(rel))
    assert check_axioms(A).ok
    assert check_derived_identities(A).ok


@settings(max_examples=25, deadline=None)
@given(quasiorders(max_size=5))
def test_representation_cycle_closes(rel):
    report = equivalence_suite(rel)
    assert report.ok, report.findings
