"""Finite Nelson algebras.

A Nelson algebra is a bounded distributive lattice with a strong negation
``neg`` and an implication ``impl``, both stored as index tables over the
lattice carrier.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InputError
from .order import Lattice, _frozen, distributivity_witness, greatest_satisfying
from .report import Report


class NelsonAlgebra:
    def __init__(self, lattice: Lattice, neg, impl, name: str = "nelson-algebra"):
        n = lattice.size
        neg = np.array(neg, dtype=np.int64)
        impl = np.array(impl, dtype=np.int64)
        if neg.shape != (n,):
            raise InputError(f"negation table has shape {neg.shape}, expected {(n,)}")
        if impl.shape != (n, n):
            raise InputError(f"implication table has shape {impl.shape}, expected {(n, n)}")
        for table, what in ((neg, "negation"), (impl, "implication")):
            if table.size and (table.min() < 0 or table.max() >= n):
                raise InputError(f"{what} table refers to elements outside the carrier")
        self.lattice = lattice
        self.neg = _frozen(neg)
        self.impl = _frozen(impl)
        self.name = name

    @classmethod
    def from_tables(cls, labels: Sequence[str], leq, neg: Sequence[str], impl: Sequence[Sequence[str]], name="nelson-algebra"):
        """Build from labelled tables; join and meet are derived from ``leq``."""
        lattice = Lattice.from_leq(labels, leq)
        index = lattice.index
        if len(neg) != lattice.size or len(impl) != lattice.size or any(len(r) != lattice.size for r in impl):
            raise InputError("negation/implication tables do not match the number of elements")
        return cls(lattice, [index(x) for x in neg], [[index(x) for x in row] for row in impl], name)

    def __repr__(self):
        return f"NelsonAlgebra({self.name!r}, {self.size} elements)"

    def __eq__(self, other):
        if not isinstance(other, NelsonAlgebra):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and np.array_equal(self.neg, other.neg)
            and np.array_equal(self.impl, other.impl)
        )

    def __hash__(self):
        return hash((self.lattice, self.neg.tobytes(), self.impl.tobytes()))

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.lattice.labels

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def index(self, element: str | int) -> int:
        return self.lattice.index(element)

    def weak_negation(self, a: int) -> int:
        return int(self.impl[a, self.bottom])


def weak_negation(algebra: NelsonAlgebra, a: int) -> int:
    """a -> 0."""
    return algebra.weak_negation(a)


def semi_simple_witness(algebra: NelsonAlgebra) -> int | None:
    weak = algebra.impl[:, algebra.bottom]
    bad = algebra.join[np.arange(algebra.size), weak] != algebra.top
    return int(np.flatnonzero(bad)[0]) if bad.any() else None


def is_semi_simple(algebra: NelsonAlgebra) -> bool:
    """Whether a join (a -> 0) is the top for every a."""
    return semi_simple_witness(algebra) is None


def implication_from_n4(lattice: Lattice, neg) -> tuple[np.ndarray, np.ndarray]:
    """For each (a, b) the greatest c with a meet c <= ~a join b.

    Returns the table and a mask of the pairs where such a greatest element
    exists (everywhere, for a genuine Nelson algebra).
    """
    n = lattice.size
    neg = np.asarray(neg)
    leq, join, meet = lattice.leq, lattice.join, lattice.meet
    table = np.empty((n, n), dtype=np.int64)
    ok = np.empty((n, n), dtype=bool)
    for a in range(n):
        bound = join[neg[a]]  # bound[b] = ~a join b
        cand = leq[meet[a][None, :], bound[:, None]]  # cand[b, c]
        table[a], ok[a] = greatest_satisfying(lattice, cand)
    return table, ok


def check_axioms(algebra: NelsonAlgebra) -> Report:
    """Exhaustive check of bounds, distributivity and (N1)-(N5).

    Each violated property is reported once, with its first counterexample.
    """
    A = algebra
    n = A.size
    lab = A.labels
    leq, join, meet, neg, impl = A.leq, A.join, A.meet, A.neg, A.impl
    idx = np.arange(n)
    report = Report(A.name)

    report.check("bounds")
    if not (leq[A.bottom].all() and leq[:, A.top].all()):
        report.fail("bounds", "0 <= x <= 1")

    report.check("distributive")
    w = distributivity_witness(A.lattice)
    if w is not None:
        report.fail("distributive", "x & (y | z) = (x & y) | (x & z)", x=lab[w[0]], y=lab[w[1]], z=lab[w[2]])

    report.check("N1")
    bad = neg[neg] != idx
    if bad.any():
        a = int(np.flatnonzero(bad)[0])
        report.fail("N1", "~~a = a", a=lab[a])

    report.check("N2")
    bad = leq != leq[np.ix_(neg, neg)].T
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        report.fail("N2", "a <= b iff ~b <= ~a", a=lab[a], b=lab[b])

    report.check("N3")
    lhs = meet[idx, neg]
    rhs = join[idx, neg]
    bad = ~leq[lhs[:, None], rhs[None, :]]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        report.fail("N3", "a & ~a <= b | ~b", a=lab[a], b=lab[b])

    report.check("N4")
    for a in range(n):
        bound = join[neg[a]]
        lhs = leq[meet[a][None, :], bound[:, None]]  # [b, c]: a & c <= ~a | b
        rhs = leq[idx[None, :], impl[a][:, None]]  # [b, c]: c <= a -> b
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            report.fail("N4", "a & c <= ~a | b iff c <= a -> b", a=lab[a], b=lab[b], c=lab[c])
            break

    report.check("N5")
    for a in range(n):
        lhs = impl[meet[a]]  # [b, c] = (a & b) -> c
        rhs = impl[a][impl]  # [b, c] = a -> (b -> c)
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            report.fail("N5", "(a & b) -> c = a -> (b -> c)", a=lab[a], b=lab[b], c=lab[c])
            break
    return report


def check_derived_identities(algebra: NelsonAlgebra) -> Report:
    """De Morgan laws and ~0 = 1, ~1 = 0: consequences of (N1), (N2) on a bounded lattice."""
    A = algebra
    lab = A.labels
    neg, join, meet = A.neg, A.join, A.meet
    report = Report(A.name)
    report.check("neg-bounds")
    if neg[A.bottom] != A.top or neg[A.top] != A.bottom:
        report.fail("neg-bounds", "~0 = 1 and ~1 = 0")
    report.check("de-morgan-join")
    bad = neg[join] != meet[np.ix_(neg, neg)]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        report.fail("de-morgan-join", "~(a | b) = ~a & ~b", a=lab[a], b=lab[b])
    report.check("de-morgan-meet")
    bad = neg[meet] != join[np.ix_(neg, neg)]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        report.fail("de-morgan-meet", "~(a & b) = ~a | ~b", a=lab[a], b=lab[b])
    report.check("impl-n4-table")
    table, ok = implication_from_n4(A.lattice, neg)
    bad = ~ok | (table != A.impl)
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        report.fail("impl-n4-table", "a -> b = max{c | a & c <= ~a | b}", a=lab[a], b=lab[b])
    return report


def check_homomorphism(mapping: Sequence[int], source: NelsonAlgebra, target: NelsonAlgebra,
                       subject: str = "homomorphism") -> Report:
    """Preservation of 0, 1, join, meet, ~ and -> by ``mapping`` (source index -> target index)."""
    f = np.asarray(mapping, dtype=np.int64)
    report = Report(subject)
    report.check("total")
    if f.shape != (source.size,) or (f.size and (f.min() < 0 or f.max() >= target.size)):
        report.fail("total", "f maps every element into the target", size=int(f.size))
        return report
    sl, tl = source.labels, target.labels

    report.check("zero")
    if f[source.bottom] != target.bottom:
        report.fail("zero", "f(0) = 0", image=tl[f[source.bottom]])
    report.check("one")
    if f[source.top] != target.top:
        report.fail("one", "f(1) = 1", image=tl[f[source.top]])
    for name, formula, s_table, t_table in (
        ("join", "f(a | b) = f(a) | f(b)", source.join, target.join),
        ("meet", "f(a & b) = f(a) & f(b)", source.meet, target.meet),
        ("impl", "f(a -> b) = f(a) -> f(b)", source.impl, target.impl),
    ):
        report.check(name)
        bad = f[s_table] != t_table[f[:, None], f[None, :]]
        if bad.any():
            a, b = map(int, np.argwhere(bad)[0])
            report.fail(name, formula, a=sl[a], b=sl[b])
    report.check("neg")
    bad = f[source.neg] != target.neg[f]
    if bad.any():
        a = int(np.flatnonzero(bad)[0])
        report.fail("neg", "f(~a) = ~f(a)", a=sl[a])
    return report


def injectivity_witness(mapping: Sequence[int]) -> tuple[int, int] | None:
    seen: dict[int, int] = {}
    for x, y in enumerate(mapping):
        if int(y) in seen:
            return seen[int(y)], x
        seen[int(y)] = x
    return None


def check_embedding(mapping, source, target, subject="embedding") -> Report:
    report = check_homomorphism(mapping, source, target, subject)
    report.check("injective")
    w = injectivity_witness(mapping)
    if w is not None:
        report.fail("injective", "f(a) = f(b) implies a = b", a=source.labels[w[0]], b=source.labels[w[1]])
    return report


def check_isomorphism(mapping, source, target, subject="isomorphism") -> Report:
    report = check_embedding(mapping, source, target, subject)
    report.check("surjective")
    if source.size != target.size:
        report.fail("surjective", "f is onto", source_size=source.size, target_size=target.size)
    return report


def extend_from_join_irreducibles(source: NelsonAlgebra, target: NelsonAlgebra, on_j: dict[int, int]) -> list[int]:
    """Extend a map on join-irreducibles to the whole carrier by joins."""
    leq = source.leq
    out = []
    for x in range(source.size):
        out.append(target.lattice.join_all(img for j, img in on_j.items() if leq[j, x]))
    return out


def find_isomorphism(source: NelsonAlgebra, target: NelsonAlgebra) -> list[int] | None:
    """Search for a Nelson isomorphism among maps fixed by their values on join-irreducibles."""
    if source.size != target.size:
        return None
    js = list(source.lattice.join_irreducibles)
    jt = list(target.lattice.join_irreducibles)
    if len(js) != len(jt):
        return None
    sl, tl = source.leq, target.leq
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def consistent(j: int, img: int) -> bool:
        return all(sl[j, k] == tl[img, v] and sl[k, j] == tl[v, img] for k, v in assignment.items())

    def search(i: int) -> list[int] | None:
        if i == len(js):
            f = extend_from_join_irreducibles(source, target, assignment)
            return f if check_isomorphism(f, source, target).ok else None
        j = js[i]
        for img in jt:
            if img not in used and consistent(j, img):
                assignment[j] = img
                used.add(img)
                found = search(i + 1)
                if found is not None:
                    return found
                del assignment[j]
                used.discard(img)
        return None

    return search(0)
