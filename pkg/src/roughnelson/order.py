"""Finite posets and lattices.

A lattice keeps its join and meet as explicit ``n x n`` tables computed
once from the order matrix, so every downstream algorithm is a table
lookup.  Families of subsets (upsets, filters) are lists of bit-vector
ints in ascending numeric order.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, LatticeError
from .limits import require_within_cap
from .relation import Relation, Universe, bits, format_set


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def masks_to_bool(masks: Sequence[int], n: int) -> np.ndarray:
    out = np.zeros((len(masks), n), dtype=bool)
    for i, m in enumerate(masks):
        for j in bits(m):
            out[i, j] = True
    return out


def bool_to_masks(matrix: np.ndarray) -> tuple[int, ...]:
    weights = [1 << j for j in range(matrix.shape[1])]
    return tuple(sum(w for w, b in zip(weights, row) if b) for row in matrix.tolist())


class Poset:
    """A finite partial order; ``leq[x, y]`` is true iff x <= y."""

    def __init__(self, carrier: Universe, leq):
        leq = np.array(leq, dtype=bool)
        n = carrier.size
        if leq.shape != (n, n):
            raise InputError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            x = int(np.flatnonzero(~leq.diagonal())[0])
            raise InputError(f"order is not reflexive at {carrier.labels[x]!r}")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            x, y = map(int, np.argwhere(both)[0])
            raise InputError(f"order is not antisymmetric: {carrier.labels[x]!r} and {carrier.labels[y]!r}")
        li = leq.astype(np.int64)
        bad = ((li @ li) > 0) & ~leq
        if bad.any():
            x, z = map(int, np.argwhere(bad)[0])
            raise InputError(f"order is not transitive: {carrier.labels[x]!r} <= ... <= {carrier.labels[z]!r}")
        self.carrier = carrier
        self.leq = _frozen(leq)

    @classmethod
    def from_relation(cls, relation: Relation) -> Poset:
        n = relation.size
        return cls(relation.universe, masks_to_bool(relation.rows, n))

    @classmethod
    def from_masks(cls, carrier: Universe, up: Sequence[int]) -> Poset:
        """Build from ``up[x]`` = bit-vector of elements above x."""
        return cls(carrier, masks_to_bool(up, carrier.size))

    @classmethod
    def chain(cls, labels: Sequence[str]) -> Poset:
        n = len(labels)
        return cls(Universe(tuple(labels)), np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, labels: Sequence[str]) -> Poset:
        return cls(Universe(tuple(labels)), np.eye(len(labels), dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.carrier == other.carrier and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.carrier, self.leq.tobytes()))

    def __repr__(self):
        return f"Poset({list(self.carrier.labels)})"

    @property
    def size(self) -> int:
        return self.carrier.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.carrier.labels

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[x]`` = bit-vector of {y | x <= y}."""
        return bool_to_masks(self.leq)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return bool_to_masks(self.leq.T)

    def dual(self) -> Poset:
        return Poset(self.carrier, self.leq.T)

    def as_relation(self) -> Relation:
        return Relation(self.carrier, self.up)

    @cached_property
    def linear_extension(self) -> np.ndarray:
        """Indices sorted so that x < y implies x comes before y."""
        # |down(x)| strictly grows along the order, so it is a valid sort key.
        return _frozen(np.lexsort((np.arange(self.size), self.leq.sum(axis=0))))

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[x, y]`` iff y covers x."""
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        li = lt.astype(np.int64)
        return _frozen(lt & ((li @ li) == 0))

    def hasse_edges(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.covers)]

    def is_upset(self, mask: int) -> bool:
        return all(self.up[x] & ~mask == 0 for x in bits(mask))

    def principal_upset(self, x: int) -> int:
        return self.up[x]

    def upsets(self) -> list[int]:
        return upsets(self)


def _first_true(mask: np.ndarray, order: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Along the last axis, the first True position when scanning in ``order``."""
    reordered = mask[..., order]
    pos = reordered.argmax(axis=-1)
    found = np.take_along_axis(reordered, pos[..., None], axis=-1)[..., 0]
    return order[pos], found


def _last_true(mask: np.ndarray, order: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return _first_true(mask, order[::-1])


class Lattice:
    """A finite lattice with join/meet tables derived from its order."""

    def __init__(self, poset: Poset):
        n = poset.size
        if n == 0:
            raise LatticeError("a lattice needs at least one element")
        leq = poset.leq
        order = poset.linear_extension
        join = np.empty((n, n), dtype=np.int64)
        meet = np.empty((n, n), dtype=np.int64)
        labels = poset.labels
        # Row at a time keeps memory at O(n^2) for the larger carriers.
        for a in range(n):
            ub = leq[a][None, :] & leq  # ub[b, u]: u >= a and u >= b
            cand, found = _first_true(ub, order)
            if not found.all():
                b = int(np.flatnonzero(~found)[0])
                raise LatticeError(f"{labels[a]!r} and {labels[b]!r} have no common upper bound")
            least = (ub <= leq[cand]).all(axis=1)
            if not least.all():
                b = int(np.flatnonzero(~least)[0])
                raise LatticeError(f"{labels[a]!r} and {labels[b]!r} have no least upper bound")
            join[a] = cand
            lb = leq[:, a][None, :] & leq.T  # lb[b, l]: l <= a and l <= b
            cand, found = _last_true(lb, order)
            if not found.all():
                b = int(np.flatnonzero(~found)[0])
                raise LatticeError(f"{labels[a]!r} and {labels[b]!r} have no common lower bound")
            greatest = (lb <= leq.T[cand]).all(axis=1)
            if not greatest.all():
                b = int(np.flatnonzero(~greatest)[0])
                raise LatticeError(f"{labels[a]!r} and {labels[b]!r} have no greatest lower bound")
            meet[a] = cand
        self.poset = poset
        self.join = _frozen(join)
        self.meet = _frozen(meet)
        self.bottom = int(order[0])
        self.top = int(order[-1])
        if not (leq[self.bottom].all() and leq[:, self.top].all()):
            raise LatticeError("order has no bottom or no top")

    @classmethod
    def from_leq(cls, labels: Sequence[str], leq) -> Lattice:
        return cls(Poset(Universe(tuple(labels)), leq))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        return f"Lattice({list(self.labels)})"

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    def index(self, element: str | int) -> int:
        return self.poset.carrier.index(element)

    def join_all(self, elements: Iterable[int]) -> int:
        acc = self.bottom
        for x in elements:
            acc = int(self.join[acc, x])
        return acc

    def meet_all(self, elements: Iterable[int]) -> int:
        acc = self.top
        for x in elements:
            acc = int(self.meet[acc, x])
        return acc

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return tuple(join_irreducibles(self))

    @cached_property
    def heyting(self) -> np.ndarray:
        """Full table of relative pseudocomplements; raises if some pair has none."""
        return _frozen(heyting_table(self))

    def format_filter(self, mask: int) -> str:
        return format_set(self.labels[i] for i in bits(mask))


def join_irreducibles(lattice: Lattice) -> list[int]:
    """Elements that are not the join of the elements strictly below them.

    In a finite lattice this is exactly the set of elements with a unique
    lower cover; the bottom (empty join) is excluded automatically.
    """
    leq = lattice.leq
    out = []
    for j in range(lattice.size):
        below = np.flatnonzero(leq[:, j])
        below = below[below != j]
        if lattice.join_all(int(x) for x in below) != j:
            out.append(j)
    return out


def is_distributive(lattice: Lattice) -> bool:
    return distributivity_witness(lattice) is None


def distributivity_witness(lattice: Lattice) -> tuple[int, int, int] | None:
    """First (x, y, z) with x meet (y join z) != (x meet y) join (x meet z)."""
    join, meet = lattice.join, lattice.meet
    for x in range(lattice.size):
        lhs = meet[x][join]
        rhs = join[meet[x][:, None], meet[x][None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = map(int, np.argwhere(bad)[0])
            return x, y, z
    return None


def greatest_satisfying(lattice: Lattice, cand: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Greatest element of each candidate set along the last axis of ``cand``.

    Returns ``(index, ok)``; ``ok`` is false where the candidate set is
    empty or has no greatest element.
    """
    order = lattice.poset.linear_extension
    idx, found = _last_true(cand, order)
    below = lattice.leq[:, idx]  # below[u, ...]: u <= idx[...]
    below = np.moveaxis(below, 0, -1)
    ok = found & (cand <= below).all(axis=-1)
    return idx, ok


def heyting_table(lattice: Lattice) -> np.ndarray:
    n = lattice.size
    leq, meet = lattice.leq, lattice.meet
    out = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        cand = leq[meet[a][None, :], np.arange(n)[:, None]]  # cand[b, x]: a meet x <= b
        idx, ok = greatest_satisfying(lattice, cand)
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise LatticeError(
                f"no relative pseudocomplement for {lattice.labels[a]!r} => {lattice.labels[b]!r}; not a Heyting algebra"
            )
        out[a] = idx
    return out


def relative_pseudocomplement(lattice: Lattice, a: int, b: int) -> int:
    """The greatest x with a meet x <= b."""
    cand = lattice.leq[lattice.meet[a], b]
    idx, ok = greatest_satisfying(lattice, cand)
    if not ok:
        raise LatticeError(
            f"no greatest x with {lattice.labels[a]!r} meet x <= {lattice.labels[b]!r}; not a Heyting algebra"
        )
    return int(idx)


def upsets(poset: Poset) -> list[int]:
    """All upsets of ``poset`` as bit-vectors in ascending numeric order."""
    n = poset.size
    require_within_cap("upset enumeration", n)
    up, down = poset.up, poset.down
    # Visit elements from the top down: including x needs everything above x
    # (already decided), excluding x forces everything below x out.
    order = [int(x) for x in poset.linear_extension[::-1]]
    out: list[int] = []

    def walk(k: int, chosen: int, banned: int) -> None:
        if k == n:
            out.append(chosen)
            return
        x = order[k]
        bit = 1 << x
        if banned & bit:
            walk(k + 1, chosen, banned)
            return
        if up[x] & ~bit & ~chosen == 0:
            walk(k + 1, chosen | bit, banned)
        walk(k + 1, chosen, banned | down[x])

    walk(0, 0, 0)
    out.sort()
    return out


def filters_generated(lattice: Lattice, elements: Iterable[int]) -> int:
    """Principal filter of the meet of ``elements`` as a bit-vector over the carrier."""
    return lattice.poset.up[lattice.meet_all(elements)]


def prime_filters(lattice: Lattice) -> list[int]:
    """Prime filters of a finite distributive lattice, ascending.

    These are exactly the principal filters of the join-irreducibles.
    """
    w = distributivity_witness(lattice)
    if w is not None:
        labels = lattice.labels
        raise LatticeError(
            "prime filters requested for a non-distributive lattice; "
            f"witness x={labels[w[0]]!r}, y={labels[w[1]]!r}, z={labels[w[2]]!r}"
        )
    return sorted(lattice.poset.up[j] for j in lattice.join_irreducibles)
