"""Alexandrov topologies and their correspondence with quasiorders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .limits import require_within_cap
from .relation import Relation, Universe, bits


@dataclass(frozen=True)
class AlexandrovTopology:
    """Opens (ascending bit-vectors) together with the least neighbourhoods N(x)."""

    universe: Universe
    opens: tuple[int, ...]
    min_nbhd: tuple[int, ...]

    @classmethod
    def from_opens(cls, universe: Universe, opens: Iterable[int]) -> AlexandrovTopology:
        """Validate a family of opens and derive N(x).

        On a finite set, closure under binary unions and intersections is
        closure under arbitrary ones.
        """
        family = sorted(set(universe.check_subset(int(o)) for o in opens))
        members = set(family)
        full = universe.full
        if 0 not in members:
            raise InputError("the empty set must be open")
        if full not in members:
            raise InputError("the whole universe must be open")
        for i, a in enumerate(family):
            for b in family[i + 1:]:
                if a | b not in members:
                    raise InputError(f"opens not closed under union: {universe.format(a)} and {universe.format(b)}")
                if a & b not in members:
                    raise InputError(
                        f"opens not closed under intersection: {universe.format(a)} and {universe.format(b)}"
                    )
        nbhd = []
        for x in range(universe.size):
            acc = full
            for o in family:
                if o >> x & 1:
                    acc &= o
            nbhd.append(acc)
        return cls(universe, tuple(family), tuple(nbhd))

    @classmethod
    def from_quasiorder(cls, relation: Relation) -> AlexandrovTopology:
        """T_R: the R-closed subsets; N(x) = R(x)."""
        if not relation.is_quasiorder():
            raise InputError("the topology of a relation is only defined for quasiorders")
        require_within_cap("open-set enumeration", relation.size)
        # R-closed sets are exactly the unions of successor sets.
        opens = {0}
        for row in set(relation.rows):
            opens |= {o | row for o in opens}
        return cls(relation.universe, tuple(sorted(opens)), relation.rows)

    def to_quasiorder(self) -> Relation:
        """R_T: x R y iff y is in N(x)."""
        return Relation(self.universe, self.min_nbhd)

    def is_open(self, mask: int) -> bool:
        # Open iff it is the union of the least neighbourhoods of its points.
        return all(self.min_nbhd[x] & ~mask == 0 for x in bits(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.universe.full & ~mask)

    def interior(self, mask: int) -> int:
        return sum(1 << x for x, nb in enumerate(self.min_nbhd) if nb & ~mask == 0)

    def closure(self, mask: int) -> int:
        return sum(1 << x for x, nb in enumerate(self.min_nbhd) if nb & mask)

    def is_t0(self) -> bool:
        return len(set(self.min_nbhd)) == len(self.min_nbhd)

    def t0_witness(self) -> tuple[int, int] | None:
        seen: dict[int, int] = {}
        for x, nb in enumerate(self.min_nbhd):
            if nb in seen:
                return seen[nb], x
            seen[nb] = x
        return None

    def heyting_implication(self, b: int, c: int) -> int:
        """B => C = interior(-B | C) for open B and C."""
        for name, mask in (("B", b), ("C", c)):
            if not self.is_open(mask):
                raise InputError(f"{name} = {self.universe.format(mask)} is not open")
        return self.interior((self.universe.full & ~b) | c)


def from_quasiorder(relation: Relation) -> AlexandrovTopology:
    return AlexandrovTopology.from_quasiorder(relation)


def to_quasiorder(topology: AlexandrovTopology) -> Relation:
    return topology.to_quasiorder()
