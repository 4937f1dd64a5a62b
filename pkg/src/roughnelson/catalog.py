"""Small named structures used by the regression suite, the tests and the CLI demos."""

from __future__ import annotations

from .monteiro import MonteiroSpace
from .nelson import NelsonAlgebra
from .relation import Relation, Universe


def e1() -> Relation:
    """U = {1, 2}, 1 R 2 plus the diagonal; RS is a 4-chain."""
    return Relation.from_pairs(Universe(("1", "2")), [("1", "1"), ("2", "2"), ("1", "2")])


def e2() -> Relation:
    """U = {x, y, z}, x R y plus the diagonal; RS has 8 elements."""
    return Relation.from_pairs(Universe(("x", "y", "z")), [("x", "x"), ("y", "y"), ("z", "z"), ("x", "y")])


def e3() -> Relation:
    """The total relation on {1, 2}; RS is a 3-chain."""
    return Relation.total(Universe(("1", "2")))


def boolean2() -> NelsonAlgebra:
    """{0, 1} with ~ = complement and a -> b = ~a | b."""
    return NelsonAlgebra.from_tables(
        ["0", "1"],
        [[True, True], [False, True]],
        ["1", "0"],
        [["1", "1"], ["0", "1"]],
        name="boolean-2",
    )


def chain4_algebra() -> NelsonAlgebra:
    """0 < p < q < 1 with ~p = q; isomorphic to the RS algebra of E1."""
    labels = ["0", "p", "q", "1"]
    leq = [[i <= k for k in range(4)] for i in range(4)]
    # -> from (N4): the greatest c with a & c <= ~a | b.
    impl = [
        ["1", "1", "1", "1"],
        ["1", "1", "1", "1"],
        ["p", "p", "1", "1"],
        ["0", "p", "q", "1"],
    ]
    return NelsonAlgebra.from_tables(labels, leq, ["1", "q", "p", "0"], impl, name="chain-4")


def e4() -> MonteiroSpace:
    """Three-point chain a < b < c with g swapping the ends and fixing b.

    This is the shape of the prime-filter space of the E1 algebra.
    """
    leq = [[i <= k for k in range(3)] for i in range(3)]
    return MonteiroSpace.from_labels(["a", "b", "c"], leq, ["c", "b", "a"])
