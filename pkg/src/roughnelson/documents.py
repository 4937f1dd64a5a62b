"""JSON document envelopes: ``{"kind": ..., "version": "1", "payload": {...}}``.

Derived data (join/meet tables, rough set pairs) is recomputed on load and
validated against anything the document states.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InputError
from .monteiro import MonteiroSpace
from .nelson import NelsonAlgebra
from .relation import Relation, Universe
from .roughset import RoughSetSystem, build_rs
from .topology import AlexandrovTopology

VERSION = "1"
KINDS = ("relation", "topology", "nelson-algebra", "monteiro-space", "rough-set-system")


def _envelope(kind: str, payload: dict) -> dict:
    return {"kind": kind, "version": VERSION, "payload": payload}


def _bool_matrix(rows) -> list[list[bool]]:
    return [[bool(v) for v in row] for row in rows]


def dump(structure) -> dict:
    """Document envelope for any supported structure."""
    if isinstance(structure, Relation):
        return _envelope("relation", {
            "universe": list(structure.universe.labels),
            "pairs": structure.label_pairs(),
            "close": False,
        })
    if isinstance(structure, AlexandrovTopology):
        u = structure.universe
        return _envelope("topology", {
            "universe": list(u.labels),
            "opens": [u.members(o) for o in structure.opens],
        })
    if isinstance(structure, NelsonAlgebra):
        lab = structure.labels
        return _envelope("nelson-algebra", {
            "elements": list(lab),
            "leq": _bool_matrix(structure.leq.tolist()),
            "neg": [lab[v] for v in structure.neg.tolist()],
            "impl": [[lab[v] for v in row] for row in structure.impl.tolist()],
        })
    if isinstance(structure, MonteiroSpace):
        lab = structure.labels
        return _envelope("monteiro-space", {
            "elements": list(lab),
            "leq": _bool_matrix(structure.poset.leq.tolist()),
            "g": [lab[v] for v in structure.g],
        })
    if isinstance(structure, RoughSetSystem):
        u = structure.universe
        return _envelope("rough-set-system", {
            "universe": list(u.labels),
            "relation": structure.relation.label_pairs(),
            "pairs": [
                {"lower": u.members(p.lower), "upper": u.members(p.upper), "witness": u.members(w)}
                for p, w in zip(structure.pairs, structure.witnesses)
            ],
        })
    raise TypeError(f"cannot serialise {type(structure).__name__}")


def _field(payload: dict, name: str, kind: str) -> Any:
    try:
        return payload[name]
    except (KeyError, TypeError):
        raise InputError(f"{kind} payload is missing {name!r}") from None


def _labels(values, what: str) -> tuple[str, ...]:
    if not isinstance(values, list) or not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in values):
        raise InputError(f"{what} must be a list of labels")
    return tuple(str(v) for v in values)


def _matrix(values, n: int, what: str) -> list[list[bool]]:
    if not isinstance(values, list) or len(values) != n or any(not isinstance(r, list) or len(r) != n for r in values):
        raise InputError(f"{what} must be a {n}x{n} matrix")
    for row in values:
        for v in row:
            if not isinstance(v, (bool, int)) or v not in (0, 1):
                raise InputError(f"{what} entries must be booleans")
    return [[bool(v) for v in row] for row in values]


def load(document: dict):
    """Structure described by a document envelope (or a CLI output wrapping one)."""
    if not isinstance(document, dict):
        raise InputError("document must be a JSON object")
    if "kind" not in document and isinstance(document.get("document"), dict):
        document = document["document"]
    kind = document.get("kind")
    if kind not in KINDS:
        raise InputError(f"unknown document kind {kind!r}; expected one of {list(KINDS)}")
    if document.get("version") != VERSION:
        raise InputError(f"unsupported document version {document.get('version')!r}; expected {VERSION!r}")
    payload = document.get("payload")
    if not isinstance(payload, dict):
        raise InputError("document payload must be an object")

    if kind == "relation":
        universe = Universe(_labels(_field(payload, "universe", kind), "universe"))
        pairs = _field(payload, "pairs", kind)
        if not isinstance(pairs, list):
            raise InputError("relation pairs must be a list of [from, to] pairs")
        rel = Relation.from_pairs(universe, pairs)
        close = payload.get("close", False)
        if not isinstance(close, bool):
            raise InputError("'close' must be a boolean")
        return rel.quasiorder_closure() if close else rel

    if kind == "topology":
        universe = Universe(_labels(_field(payload, "universe", kind), "universe"))
        opens = _field(payload, "opens", kind)
        if not isinstance(opens, list):
            raise InputError("opens must be a list of label lists")
        return AlexandrovTopology.from_opens(universe, [universe.subset(_labels(o, "open set")) for o in opens])

    if kind == "nelson-algebra":
        labels = _labels(_field(payload, "elements", kind), "elements")
        leq = _matrix(_field(payload, "leq", kind), len(labels), "leq")
        neg = _labels(_field(payload, "neg", kind), "neg")
        impl = _field(payload, "impl", kind)
        if not isinstance(impl, list):
            raise InputError("impl must be a matrix of labels")
        return NelsonAlgebra.from_tables(labels, leq, neg, [_labels(r, "impl row") for r in impl])

    if kind == "monteiro-space":
        labels = _labels(_field(payload, "elements", kind), "elements")
        leq = _matrix(_field(payload, "leq", kind), len(labels), "leq")
        return MonteiroSpace.from_labels(labels, leq, _labels(_field(payload, "g", kind), "g"))

    # rough-set-system: rebuilt from the relation, stated pairs must agree.
    universe = Universe(_labels(_field(payload, "universe", kind), "universe"))
    rel = Relation.from_pairs(universe, _field(payload, "relation", kind))
    system = build_rs(rel)
    stated = payload.get("pairs")
    if stated is not None and stated != dump(system)["payload"]["pairs"]:
        raise InputError("stated rough set pairs do not match the pairs of the relation")
    return system


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read(path: str | Path | None) -> dict:
    import sys

    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path or 'stdin'} is not valid JSON: {exc}") from None


def save(structure, path: str | Path) -> None:
    Path(path).write_text(dumps(dump(structure)), encoding="utf-8")
