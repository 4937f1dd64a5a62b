"""Rough approximations and the rough set system of a quasiorder.

For a relation R on U, the lower approximation of X is {x | R(x) <= X} and
the upper approximation is {x | R(x) meets X}.  The rough set system RS
collects the pairs (lower, upper) over all X, deduplicated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConsistencyError, InputError
from .limits import require_within_cap
from .nelson import NelsonAlgebra
from .order import Lattice, Poset
from .relation import Relation, Universe


def lower_approx(relation: Relation, x: int) -> int:
    relation.universe.check_subset(x)
    return sum(1 << i for i, row in enumerate(relation.rows) if row & ~x == 0)


def upper_approx(relation: Relation, x: int) -> int:
    relation.universe.check_subset(x)
    return sum(1 << i for i, row in enumerate(relation.rows) if row & x)


def lower_many(rows, xs: np.ndarray) -> np.ndarray:
    """Vectorised lower approximation of every subset in ``xs``."""
    out = np.zeros_like(xs)
    for i, row in enumerate(rows):
        out |= ((np.int64(row) & ~xs) == 0).astype(np.int64) << i
    return out


def upper_many(rows, xs: np.ndarray) -> np.ndarray:
    out = np.zeros_like(xs)
    for i, row in enumerate(rows):
        out |= ((xs & np.int64(row)) != 0).astype(np.int64) << i
    return out


@dataclass(frozen=True, order=True)
class RoughPair:
    lower: int
    upper: int

    def format(self, universe: Universe) -> str:
        return f"({universe.format(self.lower)},{universe.format(self.upper)})"

    def leq(self, other: RoughPair) -> bool:
        return self.lower & ~other.lower == 0 and self.upper & ~other.upper == 0


def _pair_sort_keys(lower: np.ndarray, upper: np.ndarray, n: int) -> np.ndarray:
    # Size first so the listing is a linear extension of the coordinatewise order.
    size = np.bitwise_count(lower).astype(np.int64) + np.bitwise_count(upper).astype(np.int64)
    return np.lexsort(((lower << n) | upper, size))


@dataclass(frozen=True)
class RoughSetSystem:
    """The deduplicated family RS with one witness subset per pair.

    Pairs are listed by total size, then by the packed value
    ``lower << n | upper``; this is a linear extension of the
    coordinatewise order, so bottom comes first and top last.
    """

    relation: Relation
    pairs: tuple[RoughPair, ...]
    witnesses: tuple[int, ...]

    @property
    def universe(self) -> Universe:
        return self.relation.universe

    @property
    def size(self) -> int:
        return len(self.pairs)

    @cached_property
    def index(self) -> dict[RoughPair, int]:
        return {p: i for i, p in enumerate(self.pairs)}

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.format(self.universe) for p in self.pairs)

    @cached_property
    def lowers(self) -> np.ndarray:
        return np.array([p.lower for p in self.pairs], dtype=np.int64)

    @cached_property
    def uppers(self) -> np.ndarray:
        return np.array([p.upper for p in self.pairs], dtype=np.int64)

    @cached_property
    def poset(self) -> Poset:
        lo, up = self.lowers, self.uppers
        leq = ((lo[:, None] & ~lo[None, :]) == 0) & ((up[:, None] & ~up[None, :]) == 0)
        return Poset(Universe(self.labels), leq)

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice(self.poset)

    def lookup(self, lower: np.ndarray, upper: np.ndarray, what: str) -> np.ndarray:
        """Indices of the given pairs; raises if one is not in RS."""
        n = self.universe.size
        keys = (self.lowers << n) | self.uppers
        order = np.argsort(keys)
        sorted_keys = keys[order]
        query = (np.asarray(lower, dtype=np.int64) << n) | np.asarray(upper, dtype=np.int64)
        pos = np.clip(np.searchsorted(sorted_keys, query), 0, len(keys) - 1)
        found = sorted_keys[pos] == query
        if not found.all():
            bad = np.argwhere(~found)[0]
            pair = RoughPair(int(np.asarray(lower)[tuple(bad)]), int(np.asarray(upper)[tuple(bad)]))
            raise ConsistencyError(f"{what} produced {pair.format(self.universe)}, which is not in RS")
        return order[pos]

    def contains(self, lower: int, upper: int) -> bool:
        return RoughPair(lower, upper) in self.index


def build_rs(relation: Relation) -> RoughSetSystem:
    """Enumerate (X lower, X upper) for all 2^|U| subsets X."""
    if not relation.is_quasiorder():
        raise InputError("the rough set system is built from a quasiorder; close the relation first")
    n = relation.size
    require_within_cap("rough set enumeration", n)
    xs = np.arange(1 << n, dtype=np.int64)
    lower = lower_many(relation.rows, xs)
    upper = upper_many(relation.rows, xs)
    keys, first = np.unique((lower << n) | upper, return_index=True)
    lo, up = lower[first], upper[first]
    order = _pair_sort_keys(lo, up, n)
    pairs = tuple(RoughPair(int(a), int(b)) for a, b in zip(lo[order], up[order]))
    witnesses = tuple(int(w) for w in xs[first][order])
    return RoughSetSystem(relation, pairs, witnesses)


def rough_equality_class(relation: Relation, x: int) -> list[int]:
    """All Y with the same lower and upper approximation as X, ascending."""
    relation.universe.check_subset(x)
    n = relation.size
    require_within_cap("rough equality class", n)
    xs = np.arange(1 << n, dtype=np.int64)
    same = (lower_many(relation.rows, xs) == lower_approx(relation, x)) & (
        upper_many(relation.rows, xs) == upper_approx(relation, x)
    )
    return [int(y) for y in xs[same]]


def rough_equality_classes(system: RoughSetSystem) -> list[list[int]]:
    """Members of every rough set, aligned with ``system.pairs``."""
    rel = system.relation
    n = rel.size
    require_within_cap("rough equality classes", n)
    xs = np.arange(1 << n, dtype=np.int64)
    which = system.lookup(lower_many(rel.rows, xs), upper_many(rel.rows, xs), "approximation")
    classes: list[list[int]] = [[] for _ in system.pairs]
    for x, i in zip(xs.tolist(), which.tolist()):
        classes[i].append(x)
    return classes


def rs_nelson_algebra(system: RoughSetSystem) -> NelsonAlgebra:
    """The Nelson algebra on RS.

    Join and meet are coordinatewise union and intersection, the strong
    negation is (L, U) -> (-U, -L), and
    (L1, U1) -> (L2, U2) = ((-L1 | L2) lower, -L1 | U2).
    The lattice is derived from the coordinatewise order and checked
    against the union/intersection formulas.
    """
    lattice = system.lattice
    full = np.int64(system.universe.full)
    lo, up = system.lowers, system.uppers
    rows = system.relation.rows

    join = system.lookup(lo[:, None] | lo[None, :], up[:, None] | up[None, :], "union")
    meet = system.lookup(lo[:, None] & lo[None, :], up[:, None] & up[None, :], "intersection")
    if not np.array_equal(join, lattice.join):
        raise ConsistencyError("coordinatewise union disagrees with the join of the coordinatewise order")
    if not np.array_equal(meet, lattice.meet):
        raise ConsistencyError("coordinatewise intersection disagrees with the meet of the coordinatewise order")

    neg = system.lookup(full & ~up, full & ~lo, "strong negation")
    not_lo = (full & ~lo)[:, None]
    impl = system.lookup(lower_many(rows, not_lo | lo[None, :]), not_lo | up[None, :], "implication")
    return NelsonAlgebra(lattice, neg, impl, name="rough-set-algebra")


def rs_algebra(relation: Relation) -> NelsonAlgebra:
    return rs_nelson_algebra(build_rs(relation))

