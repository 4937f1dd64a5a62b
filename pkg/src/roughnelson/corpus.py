"""Deterministic generators of quasiorders, posets and Monteiro spaces."""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

import numpy as np

from .monteiro import MonteiroSpace, check_monteiro
from .order import Poset
from .relation import Relation, Universe, bits


def _is_upclosed(rows: list[int], mask: int) -> bool:
    return all(rows[x] & ~mask == 0 for x in bits(mask))


def _is_downclosed(rows: list[int], mask: int) -> bool:
    return all(not (rows[x] & mask) or (mask >> x & 1) for x in range(len(rows)))


def _extend(rows: list[int]) -> Iterator[list[int]]:
    """All quasiorders on one more point restricting to ``rows``.

    The new point k gets successors S (up-closed) and predecessors P
    (down-closed); transitivity through k needs S inside R(p) for p in P.
    """
    k = len(rows)
    subsets = range(1 << k)
    ups = [s for s in subsets if _is_upclosed(rows, s)]
    downs = [p for p in subsets if _is_downclosed(rows, p)]
    for s in ups:
        for p in downs:
            if all(s & ~rows[q] == 0 for q in bits(p)):
                new = [row | (1 << k if p >> x & 1 else 0) for x, row in enumerate(rows)]
                new.append(s | 1 << k)
                yield new


def all_quasiorders(n: int) -> Iterator[Relation]:
    """Every quasiorder on the labels 1..n, in a fixed order."""
    universe = Universe.of_size(n)
    level: list[list[int]] = [[]]
    for _ in range(n):
        level = [new for rows in level for new in _extend(rows)]
    for rows in level:
        yield Relation(universe, tuple(rows))


def random_quasiorder(n: int, rng: random.Random, density: float | None = None) -> Relation:
    """Closure of a random relation; low densities keep the result from collapsing to U x U."""
    if density is None:
        density = rng.uniform(0.05, 0.35)
    universe = Universe.of_size(n)
    rows = []
    for x in range(n):
        rows.append(sum(1 << y for y in range(n) if y != x and rng.random() < density))
    return Relation(universe, tuple(rows)).quasiorder_closure()


def random_quasiorders(count: int, sizes: tuple[int, int], seed: int) -> list[Relation]:
    rng = random.Random(seed)
    return [random_quasiorder(rng.randint(*sizes), rng) for _ in range(count)]


def quasiorder_corpus(exhaustive_max: int = 4, random_count: int = 200,
                      random_sizes: tuple[int, int] = (5, 7), seed: int = 0) -> list[Relation]:
    """All quasiorders on 1..exhaustive_max points, then seeded random ones."""
    out: list[Relation] = []
    for n in range(1, exhaustive_max + 1):
        out.extend(all_quasiorders(n))
    out.extend(random_quasiorders(random_count, random_sizes, seed))
    return out


def random_poset(n: int, rng: random.Random) -> Poset:
    """Closure of random edges along a random permutation, so the result is antisymmetric."""
    perm = list(range(n))
    rng.shuffle(perm)
    density = rng.uniform(0.2, 0.7)
    rows = [0] * n
    for i in range(n):
        for k in range(i + 1, n):
            if rng.random() < density:
                rows[perm[i]] |= 1 << perm[k]
    rel = Relation(Universe.of_size(n), tuple(rows)).quasiorder_closure()
    return Poset.from_relation(rel)


def involutions(n: int) -> Iterator[tuple[int, ...]]:
    """All involutive permutations of range(n), in lexicographic order."""
    def walk(g: list[int | None]) -> Iterator[tuple[int, ...]]:
        try:
            i = g.index(None)
        except ValueError:
            yield tuple(g)  # type: ignore[arg-type]
            return
        g[i] = i
        yield from walk(g)
        for k in range(i + 1, n):
            if g[k] is None:
                g[i], g[k] = k, i
                yield from walk(g)
                g[k] = None
        g[i] = None

    yield from walk([None] * n)


def monteiro_spaces_on(poset: Poset, j2: str = "involutive") -> list[MonteiroSpace]:
    """Every map g on ``poset`` passing the (J1)-(J4) check.

    Under the involutive reading only involutions can pass, so only those
    are tried; the printed reading searches all maps.
    """
    n = poset.size
    candidates = involutions(n) if j2 == "involutive" else product(range(n), repeat=n)
    out = []
    for g in candidates:
        space = MonteiroSpace(poset, tuple(g))
        if check_monteiro(space, j2).ok:
            out.append(space)
    return out


def monteiro_corpus(count: int = 200, max_points: int = 5, seed: int = 0,
                    max_attempts: int = 100_000) -> list[MonteiroSpace]:
    """``count`` distinct Monteiro spaces on random posets of 1..max_points points."""
    rng = random.Random(seed)
    seen: set[tuple[bytes, tuple[int, ...]]] = set()
    out: list[MonteiroSpace] = []
    for _ in range(max_attempts):
        if len(out) >= count:
            break
        poset = random_poset(rng.randint(1, max_points), rng)
        spaces = monteiro_spaces_on(poset)
        rng.shuffle(spaces)
        for space in spaces:
            key = (np.packbits(space.poset.leq).tobytes() + bytes([space.size]), space.g)
            if key not in seen:
                seen.add(key)
                out.append(space)
                break
    return out
