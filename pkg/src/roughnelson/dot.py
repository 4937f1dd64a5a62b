"""Graphviz DOT text for orders, relations and rough set systems.

Only covering edges are drawn, bottom to top.  Output depends only on the
structure, so repeated runs give identical bytes.
"""

from __future__ import annotations

from .monteiro import MonteiroSpace
from .nelson import NelsonAlgebra
from .order import Lattice, Poset
from .relation import Relation, Universe, format_set
from .roughset import RoughSetSystem
from .topology import AlexandrovTopology


def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _graph(name: str, labels, edges, extra=()) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, label in enumerate(labels):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for x, y in edges:
        lines.append(f"  n{x} -> n{y};")
    lines.extend(extra)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _poset_dot(poset: Poset, name: str, extra=()) -> str:
    return _graph(name, poset.labels, poset.hasse_edges(), extra)


def _relation_dot(relation: Relation, name: str) -> str:
    """Quasiorders are drawn as the Hasse diagram of their classes; anything else edge by edge."""
    u = relation.universe
    if not relation.is_quasiorder():
        loops = [f"  n{x} -> n{x};" for x, y in relation.pairs() if x == y]
        edges = [(x, y) for x, y in relation.pairs() if x != y]
        return _graph(name, u.labels, edges, loops)
    classes: list[int] = []
    owner: dict[int, int] = {}
    for x in range(u.size):
        if x in owner:
            continue
        cls = relation.rows[x] & relation.predecessors(x)
        owner.update((y, len(classes)) for y in range(u.size) if cls >> y & 1)
        classes.append(cls)
    labels = [u.members(c)[0] if c & (c - 1) == 0 else format_set(u.members(c)) for c in classes]
    reps = [(c & -c).bit_length() - 1 for c in classes]
    leq = [[relation.holds(a, b) for b in reps] for a in reps]
    return _poset_dot(Poset(Universe(tuple(labels)), leq), name)


def emit_dot(structure, name: str | None = None) -> str:
    """DOT text for a Poset, Lattice, Relation, rough set system, algebra, topology or Monteiro space."""
    if isinstance(structure, RoughSetSystem):
        return _poset_dot(structure.poset, name or "rough-sets")
    if isinstance(structure, NelsonAlgebra):
        return _poset_dot(structure.lattice.poset, name or structure.name or "algebra")
    if isinstance(structure, Lattice):
        return _poset_dot(structure.poset, name or "lattice")
    if isinstance(structure, MonteiroSpace):
        g_edges = [f"  n{x} -> n{y} [style=dashed, constraint=false];"
                   for x, y in enumerate(structure.g) if x <= y]
        return _poset_dot(structure.poset, name or "monteiro-space", g_edges)
    if isinstance(structure, Poset):
        return _poset_dot(structure, name or "poset")
    if isinstance(structure, AlexandrovTopology):
        return _relation_dot(structure.to_quasiorder(), name or "specialization")
    if isinstance(structure, Relation):
        return _relation_dot(structure, name or "relation")
    raise TypeError(f"no DOT rendering for {type(structure).__name__}")
