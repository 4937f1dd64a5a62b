"""Finite universes, bit-vector subsets and binary relations.

Subsets of a universe are plain Python ints used as bit-vectors: bit ``i``
is set iff the element with index ``i`` belongs to the subset.  A relation
is stored as one such row per element, ``rows[x] == R(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InputError
from .report import Report


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def format_set(labels: Iterable[str]) -> str:
    return "{" + ",".join(labels) + "}"


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise InputError(f"duplicate element labels: {dupes}")

    @classmethod
    def of_size(cls, n: int, start: int = 1) -> Universe:
        return cls(tuple(str(i) for i in range(start, start + n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, element: str | int) -> int:
        if isinstance(element, int) and not isinstance(element, bool):
            if 0 <= element < len(self.labels):
                return element
            raise InputError(f"element index {element} out of range for universe of size {len(self.labels)}")
        try:
            return self._index[str(element)]
        except KeyError:
            raise InputError(f"unknown element {element!r}; universe is {list(self.labels)}") from None

    def subset(self, elements: Iterable[str | int]) -> int:
        mask = 0
        for e in elements:
            mask |= 1 << self.index(e)
        return mask

    def members(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def format(self, mask: int) -> str:
        return format_set(self.members(mask))

    def check_subset(self, mask: int) -> int:
        if mask < 0 or mask > self.full:
            raise InputError(f"subset {mask:#x} does not fit a universe of size {self.size}")
        return mask


@dataclass(frozen=True)
class Relation:
    """A binary relation as a dense bit-matrix, ``rows[x]`` being R(x)."""

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.universe.size:
            raise InputError(f"relation has {len(rows)} rows but the universe has {self.universe.size} elements")
        full = self.universe.full
        for x, row in enumerate(rows):
            if row & ~full:
                raise InputError(f"row {x} of the relation has bits outside the universe")

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[Sequence[str | int]]) -> Relation:
        rows = [0] * universe.size
        for pair in pairs:
            if len(pair) != 2:
                raise InputError(f"relation pair must have two entries, got {list(pair)!r}")
            x, y = pair
            rows[universe.index(x)] |= 1 << universe.index(y)
        return cls(universe, tuple(rows))

    @classmethod
    def identity(cls, universe: Universe) -> Relation:
        return cls(universe, tuple(1 << i for i in range(universe.size)))

    @classmethod
    def total(cls, universe: Universe) -> Relation:
        return cls(universe, (universe.full,) * universe.size)

    @property
    def size(self) -> int:
        return self.universe.size

    def holds(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in bits(row)]

    def label_pairs(self) -> list[list[str]]:
        labels = self.universe.labels
        return [[labels[x], labels[y]] for x, y in self.pairs()]

    def successors(self, x: str | int) -> int:
        return self.rows[self.universe.index(x)]

    def predecessors(self, y: str | int) -> int:
        y = self.universe.index(y)
        return sum(1 << x for x, row in enumerate(self.rows) if row >> y & 1)

    def converse(self) -> Relation:
        return Relation(self.universe, tuple(self.predecessors(y) for y in range(self.size)))

    # -- predicates ----------------------------------------------------

    def reflexivity_witness(self) -> int | None:
        for x, row in enumerate(self.rows):
            if not row >> x & 1:
                return x
        return None

    def transitivity_witness(self) -> tuple[int, int, int] | None:
        """First (x, y, z) with x R y, y R z and not x R z."""
        for x, row in enumerate(self.rows):
            for y in bits(row):
                missing = self.rows[y] & ~row
                if missing:
                    return x, y, next(bits(missing))
        return None

    def symmetry_witness(self) -> tuple[int, int] | None:
        for x, y in self.pairs():
            if not self.holds(y, x):
                return x, y
        return None

    def antisymmetry_witness(self) -> tuple[int, int] | None:
        for x, y in self.pairs():
            if x != y and self.holds(y, x):
                return x, y
        return None

    def is_reflexive(self) -> bool:
        return self.reflexivity_witness() is None

    def is_transitive(self) -> bool:
        return self.transitivity_witness() is None

    def is_quasiorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_quasiorder() and self.symmetry_witness() is None

    def is_partial_order(self) -> bool:
        return self.is_quasiorder() and self.antisymmetry_witness() is None

    def quasiorder_closure(self) -> Relation:
        """Smallest reflexive and transitive relation containing this one."""
        rows = [row | 1 << x for x, row in enumerate(self.rows)]
        # Warshall on bit rows: if x reaches k, x reaches all of R(k).
        for k in range(self.size):
            rk = rows[k]
            for x in range(self.size):
                if rows[x] >> k & 1:
                    rows[x] |= rk
        return Relation(self.universe, tuple(rows))

    def check(self) -> Report:
        """Quasiorder check with witnesses for the first violation of each property."""
        labels = self.universe.labels
        report = Report("relation")
        report.check("reflexive")
        x = self.reflexivity_witness()
        if x is not None:
            report.fail("reflexive", "x R x", x=labels[x])
        report.check("transitive")
        t = self.transitivity_witness()
        if t is not None:
            report.fail("transitive", "x R y and y R z imply x R z", x=labels[t[0]], y=labels[t[1]], z=labels[t[2]])
        return report

    def describe(self) -> dict[str, bool]:
        return {
            "reflexive": self.is_reflexive(),
            "transitive": self.is_transitive(),
            "quasiorder": self.is_quasiorder(),
            "equivalence": self.is_equivalence(),
            "partial_order": self.is_partial_order(),
        }


def successors(relation: Relation, x: str | int) -> int:
    return relation.successors(x)


def is_quasiorder(relation: Relation) -> bool:
    return relation.is_quasiorder()


def is_equivalence(relation: Relation) -> bool:
    return relation.is_equivalence()


def is_partial_order(relation: Relation) -> bool:
    return relation.is_partial_order()


def quasiorder_closure(relation: Relation) -> Relation:
    return relation.quasiorder_closure()
