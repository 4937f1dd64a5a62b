"""Representation of finite Nelson algebras.

Two routes are implemented.  The prime-filter route builds the Monteiro
space of prime filters and embeds the algebra into its upset algebra.  The
join-irreducible route orders the join-irreducibles dually, equips them
with g(j) = meet{x | x not <= ~j}, and realises the algebra both as an
upset algebra and as the rough set algebra of an induced quasiorder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from .errors import CapExceededError, CheckFailed, RoughNelsonError
from .monteiro import MonteiroSpace, check_monteiro, monteiro_nelson_algebra, upset_implication
from .nelson import (
    NelsonAlgebra,
    check_axioms,
    check_embedding,
    check_isomorphism,
)
from .order import Poset, prime_filters, upsets
from .relation import Relation, Universe, bits
from .report import Report
from .roughset import RoughPair, RoughSetSystem, build_rs, rs_nelson_algebra, upper_approx


@dataclass
class AlgebraMap:
    """A map between two Nelson algebras together with the report checking it."""

    source: NelsonAlgebra
    target: NelsonAlgebra
    mapping: tuple[int, ...]
    report: Report
    notes: list[dict[str, Any]] = field(default_factory=list)

    def image(self, x: int) -> str:
        return self.target.labels[self.mapping[x]]

    def table(self) -> dict[str, str]:
        return {self.source.labels[x]: self.image(x) for x in range(self.source.size)}


def _require_nelson(algebra: NelsonAlgebra) -> None:
    report = check_axioms(algebra)
    if not report.ok:
        raise CheckFailed(report)


def _upset_positions(family: list[int]) -> dict[int, int]:
    return {mask: i for i, mask in enumerate(family)}


# -- prime filters ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PrimeFilterSpace:
    """Prime filters of ``base`` ordered by inclusion, with g(P) = {x | ~x not in P}."""

    base: NelsonAlgebra
    filters: tuple[int, ...]
    space: MonteiroSpace

    @property
    def g_table(self) -> tuple[int, ...]:
        return self.space.g

    def h(self, x: int) -> int:
        """Bit-vector over ``filters`` of the prime filters containing x."""
        return sum(1 << i for i, p in enumerate(self.filters) if p >> x & 1)


def filter_label(algebra: NelsonAlgebra, mask: int) -> str:
    """'↑j' for a principal filter, the element list otherwise."""
    members = list(bits(mask))
    up = algebra.lattice.poset.up
    for j in members:
        if up[j] == mask:
            return "↑" + algebra.labels[j]
    return "{" + ",".join(algebra.labels[i] for i in members) + "}"


def prime_filter_space(algebra: NelsonAlgebra) -> PrimeFilterSpace:
    _require_nelson(algebra)
    filters = prime_filters(algebra.lattice)
    position = {p: i for i, p in enumerate(filters)}
    report = Report("prime-filter-space")
    report.check("g-prime")
    g = []
    for p in filters:
        gp = sum(1 << x for x in range(algebra.size) if not p >> int(algebra.neg[x]) & 1)
        if gp not in position:
            report.fail("g-prime", "g(P) = {x | ~x not in P} is a prime filter", P=filter_label(algebra, p))
            raise CheckFailed(report)
        g.append(position[gp])
    leq = np.array([[a & ~b == 0 for b in filters] for a in filters], dtype=bool).reshape(len(filters), len(filters))
    carrier = Universe(tuple(filter_label(algebra, p) for p in filters))
    return PrimeFilterSpace(algebra, tuple(filters), MonteiroSpace(Poset(carrier, leq), tuple(g)))


def embedding(algebra: NelsonAlgebra, space: PrimeFilterSpace | None = None) -> AlgebraMap:
    """h(x) = {P | x in P}, checked as an injective Nelson homomorphism."""
    space = space or prime_filter_space(algebra)
    target = monteiro_nelson_algebra(space.space)
    position = _upset_positions(upsets(space.space.poset))
    mapping = tuple(position[space.h(x)] for x in range(algebra.size))
    report = check_embedding(mapping, algebra, target, "embedding-h")
    return AlgebraMap(algebra, target, mapping, report)


def check_vakarelov_criterion(algebra: NelsonAlgebra, space: PrimeFilterSpace | None = None) -> Report:
    """a -> b in P iff every prime Q above P with a in Q and a in g(Q) contains b."""
    space = space or prime_filter_space(algebra)
    filters = space.filters
    g = space.g_table
    n = algebra.size
    f = len(filters)
    member = np.array([[p >> x & 1 for x in range(n)] for p in filters], dtype=bool).reshape(f, n)
    above = np.array([[a & ~b == 0 for b in filters] for a in filters], dtype=bool).reshape(f, f)
    report = Report("vakarelov-criterion")
    report.check("vakarelov")
    for a in range(n):
        # Q "activates" a when a lies in both Q and g(Q).
        active = member[:, a] & member[np.array(g, dtype=np.int64), a] if f else np.zeros(0, dtype=bool)
        for b in range(n):
            spoiled = active & ~member[:, b]
            rhs = ~(above & spoiled[None, :]).any(axis=1)
            lhs = member[:, int(algebra.impl[a, b])]
            bad = lhs != rhs
            if bad.any():
                p = int(np.flatnonzero(bad)[0])
                report.fail(
                    "vakarelov",
                    "a -> b in P iff for all prime Q >= P, a in Q and a in g(Q) imply b in Q",
                    a=algebra.labels[a], b=algebra.labels[b], P=space.space.labels[p],
                )
                return report
    return report


# -- join-irreducible frame -------------------------------------------------


@dataclass(frozen=True, eq=False)
class JoinIrreducibleFrame:
    """Join-irreducibles J of ``base`` with the dual order, g and the induced quasiorder.

    ``g`` and ``rho`` hold carrier indices of ``base``; ``space`` is the
    Monteiro space (J, dual order, g) with points indexed by position in J.
    """

    base: NelsonAlgebra
    J: tuple[int, ...]
    g: dict[int, int]
    rho: dict[int, int]
    space: MonteiroSpace
    induced: Relation

    @property
    def tri_leq(self) -> np.ndarray:
        """``tri_leq[i, k]`` iff J[i] is dually below J[k], i.e. J[k] <= J[i] in the base."""
        return self.space.poset.leq

    @cached_property
    def position(self) -> dict[int, int]:
        return {j: i for i, j in enumerate(self.J)}

    def nbhd(self, j: int) -> int:
        """N(j): the dual-order upset of j, as a bit-vector over positions in J."""
        return self.space.poset.up[self.position[j]]

    def phi_set(self, x: int) -> int:
        """{j in J | j <= x} as a bit-vector over positions in J."""
        leq = self.base.leq
        return sum(1 << i for i, j in enumerate(self.J) if leq[j, x])


def join_irreducible_frame(algebra: NelsonAlgebra) -> JoinIrreducibleFrame:
    _require_nelson(algebra)
    A = algebra
    leq, neg = A.leq, A.neg
    J = tuple(A.lattice.join_irreducibles)
    position = {j: i for i, j in enumerate(J)}
    report = Report("join-irreducible-frame")
    report.check("g-in-J")
    g: dict[int, int] = {}
    for j in J:
        gj = A.lattice.meet_all(int(x) for x in np.flatnonzero(~leq[:, neg[j]]))
        if gj not in position:
            report.fail("g-in-J", "g(j) = meet{x | x not <= ~j} is join-irreducible", j=A.labels[j], gj=A.labels[gj])
            raise CheckFailed(report)
        g[j] = gj
    rho = {j: (j if leq[j, g[j]] else g[j]) for j in J}
    carrier = Universe(tuple(A.labels[j] for j in J))
    tri = leq[np.ix_(J, J)].T if J else np.zeros((0, 0), dtype=bool)
    space = MonteiroSpace(Poset(carrier, tri), tuple(position[g[j]] for j in J))
    induced_rows = tuple(
        sum(1 << k for k, y in enumerate(J) if leq[rho[x], rho[y]]) for x in J
    )
    return JoinIrreducibleFrame(A, J, g, rho, space, Relation(carrier, induced_rows))


def check_frame(frame: JoinIrreducibleFrame, j2: str = "involutive") -> Report:
    """Structural facts about the frame: Monteiro axioms, the g/~ identity,
    the neighbourhood order, and that the induced relation is a quasiorder."""
    A = frame.base
    leq, neg = A.leq, A.neg
    lab = A.labels
    report = Report("join-irreducible-frame")
    report.merge(check_monteiro(frame.space, j2), "monteiro")

    report.check("g-identity")
    done = False
    for j in frame.J:
        for x in range(A.size):
            if (not leq[frame.g[j], x]) != bool(leq[j, neg[x]]):
                report.fail("g-identity", "g(j) not <= x iff j <= ~x", j=lab[j], x=lab[x])
                done = True
                break
        if done:
            break

    report.check("nbhd-order")
    for x in frame.J:
        for y in frame.J:
            nx, ny = frame.nbhd(x), frame.nbhd(y)
            if bool(leq[x, y]) != (nx & ~ny == 0):
                report.fail("nbhd-order", "x <= y iff N(x) <= N(y)", x=lab[x], y=lab[y])
                break
        else:
            continue
        break

    report.check("rho")
    for j in frame.J:
        gj = frame.g[j]
        if not (leq[j, gj] or leq[gj, j]):
            report.fail("rho", "j <= g(j) or g(j) <= j", j=lab[j])
            break

    report.check("induced-quasiorder")
    w = frame.induced.check()
    report.merge(w, "induced")
    return report


def upset_algebra_of_j(frame: JoinIrreducibleFrame) -> AlgebraMap:
    """Phi(x) = {j in J | j <= x} into the upset algebra of (J, dual order, g)."""
    A = frame.base
    target = monteiro_nelson_algebra(frame.space)
    family = upsets(frame.space.poset)
    position = _upset_positions(family)
    report = Report("Phi")
    report.check("Phi-upset")
    mapping = []
    for x in range(A.size):
        s = frame.phi_set(x)
        if s not in position:
            report.fail("Phi-upset", "Phi(x) is an upset of J", x=A.labels[x])
            return AlgebraMap(A, target, (), report)
        mapping.append(position[s])
    mapping = tuple(mapping)

    report.check("Phi-neg")
    for x in range(A.size):
        if mapping[int(A.neg[x])] != int(target.neg[mapping[x]]):
            report.fail("Phi-neg", "Phi(~x) = ~Phi(x)", x=A.labels[x])
            break
    report.check("Phi-heyting")
    rpc = A.lattice.heyting
    poset = frame.space.poset
    for x in range(A.size):
        for y in range(A.size):
            lhs = family[mapping[int(rpc[x, y])]]
            rhs = upset_implication(poset, family[mapping[x]], family[mapping[y]])
            if lhs != rhs:
                report.fail("Phi-heyting", "Phi(x => y) = Phi(x) => Phi(y)", x=A.labels[x], y=A.labels[y])
                break
        else:
            continue
        break
    report.merge(check_isomorphism(mapping, A, target), "iso")
    return AlgebraMap(A, target, mapping, report)


def phi_on_join_irreducible(frame: JoinIrreducibleFrame, j: int, branch: str = "strict") -> RoughPair:
    """(empty, {j} upper) when j is below g(j), else (R(j), R(j) upper).

    ``branch="strict"`` takes the first case only for j strictly below g(j);
    ``"printed"`` also takes it when j = g(j).
    """
    leq = frame.base.leq
    R = frame.induced
    k = frame.position[j]
    gj = frame.g[j]
    first = leq[j, gj] and (gj != j or branch == "printed")
    if first:
        return RoughPair(0, upper_approx(R, 1 << k))
    rj = R.rows[k]
    return RoughPair(rj, upper_approx(R, rj))


def rough_set_representation(frame: JoinIrreducibleFrame, branch: str = "strict") -> AlgebraMap:
    """The isomorphism phi from the base algebra onto RS of the induced quasiorder."""
    A = frame.base
    system = build_rs(frame.induced)
    target = rs_nelson_algebra(system)
    rs_j = set(target.lattice.join_irreducibles)
    report = Report("phi")
    notes: list[dict[str, Any]] = []
    on_j: dict[int, int] = {}
    report.check("phi-in-RS")
    report.check("phi-in-J(RS)")
    for j in frame.J:
        pair = phi_on_join_irreducible(frame, j, branch)
        label = pair.format(system.universe)
        if frame.g[j] == j:
            alt = phi_on_join_irreducible(frame, j, "printed" if branch == "strict" else "strict")
            notes.append({
                "j": A.labels[j],
                "fixed_point": True,
                "used": label,
                "other_branch": alt.format(system.universe),
                "other_branch_in_RS": system.contains(alt.lower, alt.upper),
            })
        if not system.contains(pair.lower, pair.upper):
            report.fail("phi-in-RS", "phi(j) lies in RS", j=A.labels[j], phi=label)
            continue
        idx = system.index[pair]
        if idx not in rs_j:
            report.fail("phi-in-J(RS)", "phi(j) is join-irreducible in RS", j=A.labels[j], phi=label)
        on_j[j] = idx
    if not report.ok:
        return AlgebraMap(A, target, (), report, notes)
    leq = A.leq
    mapping = tuple(target.lattice.join_all(on_j[j] for j in frame.J if leq[j, x]) for x in range(A.size))
    report.merge(check_isomorphism(mapping, A, target), "iso")
    return AlgebraMap(A, target, mapping, report, notes)


def compose(first: AlgebraMap, second: AlgebraMap) -> tuple[int, ...]:
    return tuple(second.mapping[y] for y in first.mapping)


# -- the full cycle ---------------------------------------------------------


def _entry_algebra(entry, report: Report, j2: str) -> NelsonAlgebra | None:
    if isinstance(entry, NelsonAlgebra):
        return entry
    if isinstance(entry, Relation):
        w = entry.check()
        report.merge(w, "quasiorder")
        if not w.ok:
            return None
        return rs_nelson_algebra(build_rs(entry))
    if isinstance(entry, MonteiroSpace):
        w = check_monteiro(entry, j2)
        report.merge(w, "monteiro")
        if not w.ok:
            return None
        return monteiro_nelson_algebra(entry, j2)
    raise TypeError(f"cannot start a representation cycle from {type(entry).__name__}")


def _check_space_correspondence(source: MonteiroSpace, target: MonteiroSpace, mapping: list[int],
                                report: Report, name: str) -> None:
    """``mapping`` must be an order isomorphism commuting with g."""
    report.check(name)
    if sorted(mapping) != list(range(target.size)) or source.size != target.size:
        report.fail(name, "point map is a bijection", source_size=source.size, target_size=target.size)
        return
    sl, tl = source.poset.leq, target.poset.leq
    m = np.array(mapping, dtype=np.int64)
    if not np.array_equal(sl, tl[np.ix_(m, m)]):
        x, y = map(int, np.argwhere(sl != tl[np.ix_(m, m)])[0])
        report.fail(name, "x <= y iff m(x) <= m(y)", x=source.labels[x], y=source.labels[y])
        return
    for x in range(source.size):
        if mapping[source.g[x]] != target.g[mapping[x]]:
            report.fail(name, "m(g(x)) = g(m(x))", x=source.labels[x])
            return


def equivalence_suite(entry, j2: str = "involutive") -> Report:
    """Drive every construction from one entry point and check each junction.

    ``entry`` may be a quasiorder (Relation), a NelsonAlgebra or a
    MonteiroSpace.  Junctions: the entry algebra A satisfies the axioms;
    Phi: A = U(J); phi: A = RS(induced quasiorder); the upset algebra's
    own frame reproduces (J, dual order, g); h embeds A into the prime
    filter algebra; the Vakarelov criterion; phi' o h embeds A into an RS
    algebra.
    """
    report = Report("representation-cycle")
    try:
        A = _entry_algebra(entry, report, j2)
        if A is None:
            return report
        report.info["entry"] = type(entry).__name__
        report.info["algebra_size"] = A.size
        if isinstance(entry, MonteiroSpace):
            report.info["space_size"] = entry.size
        axioms = check_axioms(A)
        report.merge(axioms, "axioms")
        if not axioms.ok:
            return report

        frame = join_irreducible_frame(A)
        report.info["join_irreducibles"] = len(frame.J)
        report.merge(check_frame(frame, j2), "frame")

        upset_map = upset_algebra_of_j(frame)
        report.merge(upset_map.report, "Phi")

        rs_map = rough_set_representation(frame)
        report.merge(rs_map.report, "phi")
        report.info["rs_universe"] = frame.induced.size
        if rs_map.notes:
            report.info["phi_fixed_points"] = rs_map.notes

        # The upset algebra's own frame is (J, dual order, g) again via j -> N(j).
        B = upset_map.target
        frame_b = join_irreducible_frame(B)
        family = upsets(frame.space.poset)
        pos_b = {j: i for i, j in enumerate(frame_b.J)}
        index_b = {mask: i for i, mask in enumerate(family)}
        point_map = [pos_b[index_b[frame.space.poset.up[i]]] for i in range(len(frame.J))]
        _check_space_correspondence(frame.space, frame_b.space, point_map, report, "monteiro-roundtrip")

        if isinstance(entry, MonteiroSpace):
            # x -> up(x) identifies the entry space with the frame of its upset algebra.
            index_a = {mask: i for i, mask in enumerate(upsets(entry.poset))}
            pos_a = {j: i for i, j in enumerate(frame.J)}
            point_map = [pos_a[index_a[entry.poset.up[x]]] for x in range(entry.size)]
            _check_space_correspondence(entry, frame.space, point_map, report, "entry-space")

        if isinstance(entry, Relation):
            # The entry relation and the induced one give isomorphic RS algebras (through A).
            report.info["entry_universe"] = entry.size

        pfs = prime_filter_space(A)
        report.info["prime_filters"] = len(pfs.filters)
        report.merge(check_monteiro(pfs.space, j2), "prime-filter-space")
        h = embedding(A, pfs)
        report.merge(h.report, "h")
        report.merge(check_vakarelov_criterion(A, pfs), "vakarelov")

        C = h.target
        frame_c = join_irreducible_frame(C)
        phi_c = rough_set_representation(frame_c)
        report.merge(phi_c.report, "phi-prime")
        if phi_c.report.ok:
            composite = compose(h, phi_c)
            report.merge(check_embedding(composite, A, phi_c.target, "phi-prime-after-h"), "phi-prime-after-h")
    except CheckFailed as exc:
        report.merge(exc.report, "construction")
    except CapExceededError:
        raise
    except RoughNelsonError as exc:
        report.fail("construction", "every stage can be built", error=str(exc))
    return report

