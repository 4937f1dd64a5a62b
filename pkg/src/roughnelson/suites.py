"""Property suites over generated corpora.

Each suite returns a Report whose findings carry enough of the input
(relation pairs, space tables) to reproduce a failure.  Reports contain
no timings, so two runs with the same seed serialise identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import catalog
from .corpus import all_quasiorders, monteiro_corpus, quasiorder_corpus
from .errors import CapExceededError, CheckFailed, RoughNelsonError
from .monteiro import MonteiroSpace, check_monteiro, monteiro_nelson_algebra, upset_negation
from .nelson import NelsonAlgebra, check_axioms, check_derived_identities, check_embedding, is_semi_simple
from .order import upsets
from .relation import Relation
from .report import Report
from .representation import (
    check_frame,
    check_vakarelov_criterion,
    compose,
    embedding,
    join_irreducible_frame,
    prime_filter_space,
    rough_set_representation,
    upset_algebra_of_j,
)
from .roughset import RoughSetSystem, build_rs, lower_approx, rs_nelson_algebra, upper_approx
from .topology import AlexandrovTopology


def _rel(relation: Relation) -> list[list[str]]:
    return relation.label_pairs()


def _space(space: MonteiroSpace) -> dict:
    return {
        "elements": list(space.labels),
        "leq": space.poset.leq.astype(int).tolist(),
        "g": [space.labels[v] for v in space.g],
    }


@dataclass
class Corpus:
    """Quasiorders: every one on 1..exhaustive_max points, then random ones."""

    exhaustive_max: int = 4
    random_count: int = 200
    random_sizes: tuple[int, int] = (5, 7)
    seed: int = 0
    _cache: dict = field(default_factory=dict, repr=False)

    @cached_property
    def relations(self) -> list[Relation]:
        return quasiorder_corpus(self.exhaustive_max, self.random_count, self.random_sizes, self.seed)

    def system(self, i: int) -> RoughSetSystem:
        key = ("rs", i)
        if key not in self._cache:
            self._cache[key] = build_rs(self.relations[i])
        return self._cache[key]

    def algebra(self, i: int) -> NelsonAlgebra:
        key = ("alg", i)
        if key not in self._cache:
            self._cache[key] = rs_nelson_algebra(self.system(i))
        return self._cache[key]

    def describe(self) -> dict:
        return {
            "exhaustive_max": self.exhaustive_max,
            "random_count": self.random_count,
            "random_sizes": list(self.random_sizes),
            "seed": self.seed,
            "relations": len(self.relations),
        }


def _guard(report: Report, name: str, witness: dict, fn: Callable[[], None]) -> None:
    """Run one corpus item; construction errors become findings."""
    try:
        fn()
    except CapExceededError:
        raise
    except CheckFailed as exc:
        report.merge(exc.report, name)
    except RoughNelsonError as exc:
        report.fail(name, "construction succeeds", error=str(exc), **witness)


def axioms_suite(corpus: Corpus) -> Report:
    report = Report("axioms")
    report.info["corpus"] = corpus.describe()
    for name in ("bounds", "distributive", "N1", "N2", "N3", "N4", "N5"):
        report.check(name)
    for i, rel in enumerate(corpus.relations):
        def run():
            r = check_axioms(corpus.algebra(i))
            for f in r.findings:
                report.fail(f.name, f.formula, relation=_rel(rel), **f.witness)
        _guard(report, "axioms", {"relation": _rel(rel)}, run)
    return report


def duality_suite(corpus: Corpus) -> Report:
    report = Report("duality")
    report.info["corpus"] = corpus.describe()
    for name in ("to-from", "from-to", "T0-iff-partial-order"):
        report.check(name)
    for rel in corpus.relations:
        top = AlexandrovTopology.from_quasiorder(rel)
        if top.to_quasiorder() != rel:
            report.fail("to-from", "R_(T_R) = R", relation=_rel(rel))
        # Rebuild the topology from its opens alone, then go around.
        bare = AlexandrovTopology.from_opens(rel.universe, top.opens)
        if AlexandrovTopology.from_quasiorder(bare.to_quasiorder()) != bare:
            report.fail("from-to", "T_(R_T) = T", relation=_rel(rel))
        if top.is_t0() != rel.is_partial_order():
            report.fail("T0-iff-partial-order", "T_R is T0 iff R is a partial order", relation=_rel(rel))
    return report


def approximation_suite(max_size: int = 5) -> Report:
    """Lower/upper approximation against interior/closure, every quasiorder and subset."""
    report = Report("approximation")
    report.info["max_size"] = max_size
    report.check("lower=interior")
    report.check("upper=closure")
    count = 0
    for n in range(1, max_size + 1):
        for rel in all_quasiorders(n):
            count += 1
            top = AlexandrovTopology.from_quasiorder(rel)
            for x in range(1 << n):
                if lower_approx(rel, x) != top.interior(x):
                    report.fail("lower=interior", "X lower = I(X)", relation=_rel(rel), X=rel.universe.members(x))
                if upper_approx(rel, x) != top.closure(x):
                    report.fail("upper=closure", "X upper = C(X)", relation=_rel(rel), X=rel.universe.members(x))
    report.info["relations"] = count
    return report


def _subfamily_tables(system: RoughSetSystem, algebra: NelsonAlgebra, k: int) -> dict[str, np.ndarray]:
    """Coordinatewise and lattice meets/joins of all 2^k subfamilies, by doubling."""
    full = np.int64(system.universe.full)
    lo, up = system.lowers, system.uppers
    size = 1 << k
    t = {
        "lo_meet": np.empty(size, np.int64), "up_meet": np.empty(size, np.int64),
        "lo_join": np.empty(size, np.int64), "up_join": np.empty(size, np.int64),
        "meet": np.empty(size, np.int64), "join": np.empty(size, np.int64),
    }
    t["lo_meet"][0] = t["up_meet"][0] = full
    t["lo_join"][0] = t["up_join"][0] = 0
    t["meet"][0], t["join"][0] = algebra.top, algebra.bottom
    for i in range(k):
        a, b = 1 << i, 2 << i
        t["lo_meet"][a:b] = t["lo_meet"][:a] & lo[i]
        t["up_meet"][a:b] = t["up_meet"][:a] & up[i]
        t["lo_join"][a:b] = t["lo_join"][:a] | lo[i]
        t["up_join"][a:b] = t["up_join"][:a] | up[i]
        t["meet"][a:b] = algebra.meet[t["meet"][:a], i]
        t["join"][a:b] = algebra.join[t["join"][:a], i]
    return t


def _sampled_tables(system: RoughSetSystem, algebra: NelsonAlgebra, picks: np.ndarray) -> dict[str, np.ndarray]:
    full = np.int64(system.universe.full)
    lo, up = system.lowers, system.uppers
    t = {
        "lo_meet": np.bitwise_and.reduce(np.where(picks, lo[None, :], full), axis=1),
        "up_meet": np.bitwise_and.reduce(np.where(picks, up[None, :], full), axis=1),
        "lo_join": np.bitwise_or.reduce(np.where(picks, lo[None, :], 0), axis=1),
        "up_join": np.bitwise_or.reduce(np.where(picks, up[None, :], 0), axis=1),
    }
    meet = np.full(len(picks), algebra.top, np.int64)
    join = np.full(len(picks), algebra.bottom, np.int64)
    for i in range(picks.shape[1]):
        meet = np.where(picks[:, i], algebra.meet[meet, i], meet)
        join = np.where(picks[:, i], algebra.join[join, i], join)
    t["meet"], t["join"] = meet, join
    return t


def sublattice_suite(corpus: Corpus, exhaustive_limit: int = 12, samples: int = 1000) -> Report:
    """Arbitrary meets and joins in RS are coordinatewise intersections and unions."""
    report = Report("sublattice")
    report.info["corpus"] = corpus.describe()
    report.info["exhaustive_limit"] = exhaustive_limit
    report.info["samples"] = samples
    for name in ("meet-in-RS", "join-in-RS", "meet-formula", "join-formula"):
        report.check(name)
    rng = np.random.default_rng(corpus.seed)
    exhaustive = sampled = 0
    for i, rel in enumerate(corpus.relations):
        system, algebra = corpus.system(i), corpus.algebra(i)
        k = system.size
        if k <= exhaustive_limit:
            t = _subfamily_tables(system, algebra, k)
            exhaustive += 1
        else:
            picks = rng.random((samples, k)) < rng.uniform(0.05, 0.95, size=(samples, 1))
            t = _sampled_tables(system, algebra, picks)
            sampled += 1
        n = system.universe.size
        keys = (system.lowers << n) | system.uppers
        for op in ("meet", "join"):
            lo_c, up_c = t[f"lo_{op}"], t[f"up_{op}"]
            inside = np.isin((lo_c << n) | up_c, keys)
            if not inside.all():
                report.fail(f"{op}-in-RS", f"coordinatewise {op} of a subfamily lies in RS", relation=_rel(rel))
                continue
            match = (system.lowers[t[op]] == lo_c) & (system.uppers[t[op]] == up_c)
            if not match.all():
                report.fail(f"{op}-formula", f"lattice {op} equals the coordinatewise formula", relation=_rel(rel))
    report.info["exhaustive_systems"] = exhaustive
    report.info["sampled_systems"] = sampled
    return report


def representation_suite(corpus: Corpus) -> Report:
    """Phi: A = U(J) and phi: A = RS(induced quasiorder), with phi(j) in J(RS)."""
    report = Report("representation")
    report.info["corpus"] = corpus.describe()
    fixed_points = 0
    for i, rel in enumerate(corpus.relations):
        def run():
            nonlocal fixed_points
            frame = join_irreducible_frame(corpus.algebra(i))
            for name, r in (
                ("frame", check_frame(frame)),
                ("Phi", upset_algebra_of_j(frame).report),
                ("phi", (rs := rough_set_representation(frame)).report),
            ):
                report.check(name)
                for f in r.findings:
                    report.fail(f"{name}/{f.name}", f.formula, relation=_rel(rel), **f.witness)
            fixed_points += len(rs.notes)
        _guard(report, "representation", {"relation": _rel(rel)}, run)
    report.info["fixed_point_join_irreducibles"] = fixed_points
    return report


def embedding_suite(corpus: Corpus) -> Report:
    """h injective homomorphism, the Vakarelov criterion, and phi' o h into an RS algebra."""
    report = Report("embedding")
    report.info["corpus"] = corpus.describe()
    for i, rel in enumerate(corpus.relations):
        def run():
            A = corpus.algebra(i)
            pfs = prime_filter_space(A)
            h = embedding(A, pfs)
            frame_c = join_irreducible_frame(h.target)
            phi_c = rough_set_representation(frame_c)
            checks = [
                ("prime-filter-space", check_monteiro(pfs.space)),
                ("h", h.report),
                ("vakarelov", check_vakarelov_criterion(A, pfs)),
                ("phi-prime", phi_c.report),
            ]
            if phi_c.report.ok:
                checks.append(("phi-prime-after-h", check_embedding(compose(h, phi_c), A, phi_c.target)))
            for name, r in checks:
                report.check(name)
                for f in r.findings:
                    report.fail(f"{name}/{f.name}", f.formula, relation=_rel(rel), **f.witness)
        _guard(report, "embedding", {"relation": _rel(rel)}, run)
    return report


def monteiro_suite(count: int = 200, max_points: int = 5, seed: int = 0) -> Report:
    """Generated Monteiro spaces give Nelson algebras; ~ keeps upsets upsets."""
    report = Report("monteiro")
    spaces = monteiro_corpus(count, max_points, seed)
    report.info.update({"count": len(spaces), "max_points": max_points, "seed": seed})
    for name in ("generated", "J1-J4", "axioms", "derived", "neg-upset", "neg-involution"):
        report.check(name)
    if len(spaces) < count:
        report.fail("generated", f"at least {count} spaces", generated=len(spaces))
    for space in spaces:
        def run():
            r = check_monteiro(space)
            for f in r.findings:
                report.fail(f"J1-J4/{f.name}", f.formula, space=_space(space), **f.witness)
            A = monteiro_nelson_algebra(space)
            for name, r in (("axioms", check_axioms(A)), ("derived", check_derived_identities(A))):
                for f in r.findings:
                    report.fail(f"{name}/{f.name}", f.formula, space=_space(space), **f.witness)
            family = upsets(space.poset)
            members = set(family)
            for a in family:
                na = upset_negation(space, a)
                if na not in members:
                    report.fail("neg-upset", "~A is an upset", space=_space(space), A=space.poset.carrier.members(a))
                    break
                if upset_negation(space, na) != a:
                    report.fail("neg-involution", "~~A = A", space=_space(space), A=space.poset.carrier.members(a))
                    break
        _guard(report, "monteiro", {"space": _space(space)}, run)
    return report


def regression_suite() -> Report:
    """Known values for the worked examples E1, E3 and the prime-filter space of E1."""
    report = Report("regressions")

    def expect(name: str, formula: str, got, want) -> None:
        report.check(name)
        if got != want:
            report.fail(name, formula, got=got, expected=want)

    s1 = build_rs(catalog.e1())
    a1 = rs_nelson_algebra(s1)
    expect("E1-chain", "RS(E1) is the 4-chain", list(s1.labels),
           ["({},{})", "({},{1})", "({2},{1,2})", "({1,2},{1,2})"])
    expect("E1-is-chain", "RS(E1) is totally ordered", bool((a1.leq | a1.leq.T).all()), True)
    x = a1.index("({},{1})")
    expect("E1-neg", "~({},{1}) = ({2},{1,2})", a1.labels[a1.neg[x]], "({2},{1,2})")

    s3 = build_rs(catalog.e3())
    a3 = rs_nelson_algebra(s3)
    expect("E3-chain", "RS(E3) is the 3-chain", list(s3.labels), ["({},{})", "({},{1,2})", "({1,2},{1,2})"])
    expect("E3-semisimple", "a | -a = 1 in RS(E3)", is_semi_simple(a3), True)

    pfs = prime_filter_space(a1)
    lab = pfs.space.labels
    g = {lab[i]: lab[v] for i, v in enumerate(pfs.g_table)}
    up_p, up_q, up_1 = "↑({},{1})", "↑({2},{1,2})", "↑({1,2},{1,2})"
    expect("E1-prime-filters", "prime filters of RS(E1)", sorted(lab), sorted([up_p, up_q, up_1]))
    expect("E1-g", "g fixes up(q) and swaps up(p) with up(1)", g, {up_1: up_p, up_q: up_q, up_p: up_1})
    expect("E1-J2-involutive", "involutive (J2) holds on the prime-filter space", check_monteiro(pfs.space).ok, True)
    expect("E1-J2-printed", "printed (J2) fails on the prime-filter space",
           check_monteiro(pfs.space, "printed").failed("J2"), True)
    return report


SUITES = {
    "axioms": lambda corpus, seed: axioms_suite(corpus),
    "duality": lambda corpus, seed: duality_suite(corpus),
    "approximation": lambda corpus, seed: approximation_suite(),
    "sublattice": lambda corpus, seed: sublattice_suite(corpus),
    "representation": lambda corpus, seed: representation_suite(corpus),
    "embedding": lambda corpus, seed: embedding_suite(corpus),
    "monteiro": lambda corpus, seed: monteiro_suite(seed=seed),
    "regressions": lambda corpus, seed: regression_suite(),
}


def run_suite(name: str, seed: int = 0, corpus: Corpus | None = None) -> Report:
    corpus = corpus or Corpus(seed=seed)
    return SUITES[name](corpus, seed)

