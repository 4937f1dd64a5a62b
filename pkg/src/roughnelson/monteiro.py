"""Monteiro spaces (X, <=, g) and the Nelson algebra on their upsets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CheckFailed, ConsistencyError, InputError
from .nelson import NelsonAlgebra
from .order import Lattice, Poset, upsets
from .relation import Universe
from .report import Report

J2_MODES = ("involutive", "printed")


@dataclass(frozen=True, eq=False)
class MonteiroSpace:
    poset: Poset
    g: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(v) for v in self.g)
        object.__setattr__(self, "g", g)
        n = self.poset.size
        if len(g) != n:
            raise InputError(f"map g has {len(g)} entries for {n} points")
        if any(v < 0 or v >= n for v in g):
            raise InputError("map g sends a point outside the space")

    @classmethod
    def from_labels(cls, labels: Sequence[str], leq, g: Sequence[str]) -> MonteiroSpace:
        poset = Poset(Universe(tuple(labels)), leq)
        return cls(poset, tuple(poset.carrier.index(v) for v in g))

    def __eq__(self, other):
        if not isinstance(other, MonteiroSpace):
            return NotImplemented
        return self.poset == other.poset and self.g == other.g

    def __hash__(self):
        return hash((self.poset, self.g))

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels


def check_monteiro(space: MonteiroSpace, j2: str = "involutive") -> Report:
    """Exhaustive check of (J1)-(J4).

    ``j2="involutive"`` reads (J2) as g(g(x)) = x; ``"printed"`` as
    g(g(x)) = g(x).
    """
    if j2 not in J2_MODES:
        raise InputError(f"unknown (J2) reading {j2!r}; expected one of {J2_MODES}")
    leq = space.poset.leq
    g = np.array(space.g, dtype=np.int64)
    n = space.size
    lab = space.labels
    idx = np.arange(n)
    report = Report("monteiro-space")

    report.check("J1")
    bad = leq & ~leq[g[None, :], g[:, None]]  # x <= y but not g(y) <= g(x)
    if bad.any():
        x, y = map(int, np.argwhere(bad)[0])
        report.fail("J1", "x <= y implies g(y) <= g(x)", x=lab[x], y=lab[y])

    report.check("J2")
    if j2 == "involutive":
        bad = g[g] != idx
        formula = "g(g(x)) = x"
    else:
        bad = g[g] != g
        formula = "g(g(x)) = g(x)"
    if bad.any():
        x = int(np.flatnonzero(bad)[0])
        report.fail("J2", formula, x=lab[x], gx=lab[g[x]], ggx=lab[g[g[x]]])

    report.check("J3")
    bad = ~(leq[idx, g] | leq[g, idx])
    if bad.any():
        x = int(np.flatnonzero(bad)[0])
        report.fail("J3", "x <= g(x) or g(x) <= x", x=lab[x], gx=lab[g[x]])

    report.check("J4")
    below_g = leq[:, g]  # [x, y]: x <= g(y)
    both = below_g & below_g.T & np.diag(below_g)[:, None] & np.diag(below_g)[None, :]
    for x, y in np.argwhere(both):
        z_ok = leq[x] & leq[y] & leq[:, g[x]] & leq[:, g[y]]
        if not z_ok.any():
            report.fail("J4", "x, y <= g(x), g(y) implies some z with x, y <= z <= g(x), g(y)",
                        x=lab[x], y=lab[y])
            break
    return report


def monteiro_nelson_algebra(space: MonteiroSpace, j2: str = "involutive") -> NelsonAlgebra:
    """Nelson algebra on the upsets: union, intersection, ~A = {x | g(x) not in A},
    A -> B = A => (~A | B) with => the upset relative pseudocomplement."""
    report = check_monteiro(space, j2)
    if not report.ok:
        raise CheckFailed(report)
    poset = space.poset
    n = space.size
    family = upsets(poset)
    u = np.array(family, dtype=np.int64)
    m = len(family)
    full = np.int64((1 << n) - 1)
    labels = tuple(poset.carrier.format(a) for a in family)

    leq = (u[:, None] & ~u[None, :]) == 0
    lattice = Lattice(Poset(Universe(labels), leq))

    def lookup(masks: np.ndarray, what: str) -> np.ndarray:
        pos = np.clip(np.searchsorted(u, masks), 0, m - 1)
        found = u[pos] == masks
        if not found.all():
            bad = int(np.asarray(masks)[tuple(np.argwhere(~found)[0])])
            raise ConsistencyError(f"{what} produced {poset.carrier.format(bad)}, which is not an upset")
        return pos

    neg_masks = np.zeros(m, dtype=np.int64)
    for x, gx in enumerate(space.g):
        neg_masks |= (((u >> gx) & 1) == 0).astype(np.int64) << x
    neg = lookup(neg_masks, "strong negation")

    # x in A -> B iff every y >= x in A lies in ~A or B.
    outside = u[:, None] & ~(neg_masks[:, None] | u[None, :]) & full
    impl_masks = np.zeros((m, m), dtype=np.int64)
    for x, up in enumerate(poset.up):
        impl_masks |= ((outside & np.int64(up)) == 0).astype(np.int64) << x
    impl = lookup(impl_masks, "implication")
    return NelsonAlgebra(lattice, neg, impl, name="upset-algebra")


def upset_implication(poset: Poset, b: int, c: int) -> int:
    """B => C = {x | x <= y and y in B imply y in C}."""
    return sum(1 << x for x, up in enumerate(poset.up) if up & b & ~c == 0)


def upset_negation(space: MonteiroSpace, a: int) -> int:
    return sum(1 << x for x, gx in enumerate(space.g) if not a >> gx & 1)
