"""Command-line front end.

Every command prints one JSON object: the command name, ``ok``, the
findings and checked properties of its report, and where relevant a
``document`` envelope (loadable by any later command) and a ``result``.

Exit codes: 0 all checks pass, 1 a checked property fails, 2 input or
usage error, 3 the universe cap was exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import documents
from .dot import emit_dot
from .errors import CapExceededError, CheckFailed, InputError, RoughNelsonError
from .limits import DEFAULT_MAX_UNIVERSE, ENV_VAR, HARD_MAX_UNIVERSE, current_cap, universe_cap
from .monteiro import J2_MODES, MonteiroSpace, check_monteiro, monteiro_nelson_algebra
from .nelson import NelsonAlgebra, check_axioms, check_derived_identities, semi_simple_witness
from .relation import Relation
from .report import Report
from .representation import (
    check_frame,
    check_vakarelov_criterion,
    embedding,
    equivalence_suite,
    join_irreducible_frame,
    prime_filter_space,
    rough_set_representation,
    upset_algebra_of_j,
)
from .roughset import RoughSetSystem, build_rs, rough_equality_class, rough_equality_classes, rs_nelson_algebra
from .topology import AlexandrovTopology

log = logging.getLogger("roughnelson")

EXIT_OK, EXIT_FINDINGS, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class Outcome:
    """What a command produced: a report plus optional document, result and DOT source."""

    def __init__(self, report: Report, document=None, result=None, dot=None):
        self.report = report
        self.document = document
        self.result = result
        self.dot = dot

    def to_json(self, command: str) -> dict:
        out = {"command": command, **self.report.to_json()}
        if self.result is not None:
            out["result"] = self.result
        if self.document is not None:
            out["document"] = documents.dump(self.document)
        return out


# -- input coercion ----------------------------------------------------------


def _load(args) -> object:
    return documents.load(documents.read(args.input))


def _expect(obj, kinds: tuple[type, ...], command: str):
    if not isinstance(obj, kinds):
        names = ", ".join(k.__name__ for k in kinds)
        raise InputError(f"{command} expects {names}, got {type(obj).__name__}")
    return obj


def _quasiorder(obj, report: Report) -> Relation | None:
    """The quasiorder behind a relation, topology or rough set system, or None with findings."""
    if isinstance(obj, RoughSetSystem):
        return obj.relation
    if isinstance(obj, AlexandrovTopology):
        return obj.to_quasiorder()
    check = obj.check()
    report.merge(check, "quasiorder")
    return obj if check.ok else None


def _algebra(obj, args, report: Report) -> NelsonAlgebra | None:
    """A Nelson algebra from any algebra-producing input kind."""
    if isinstance(obj, NelsonAlgebra):
        return obj
    if isinstance(obj, MonteiroSpace):
        check = check_monteiro(obj, args.j2)
        report.merge(check, "monteiro")
        return monteiro_nelson_algebra(obj, args.j2) if check.ok else None
    if isinstance(obj, RoughSetSystem):
        return rs_nelson_algebra(obj)
    rel = _quasiorder(obj, report)
    return rs_nelson_algebra(build_rs(rel)) if rel is not None else None


def _nelson_or_stop(algebra: NelsonAlgebra | None, report: Report) -> NelsonAlgebra | None:
    if algebra is None:
        return None
    axioms = check_axioms(algebra)
    report.merge(axioms, "axioms")
    return algebra if axioms.ok else None


def _parse_subset(relation: Relation, text: str) -> int:
    labels = [t.strip() for t in text.split(",") if t.strip()]
    return relation.universe.subset(labels)


# -- commands ------------------------------------------------------------------


def cmd_relation_check(args) -> Outcome:
    rel = _expect(_load(args), (Relation,), "relation check")
    return Outcome(rel.check(), result=rel.describe(), dot=rel)


def cmd_relation_close(args) -> Outcome:
    rel = _expect(_load(args), (Relation,), "relation close")
    closed = rel.quasiorder_closure()
    report = Report("quasiorder-closure")
    report.info["added_pairs"] = len(closed.pairs()) - len(rel.pairs())
    return Outcome(report, document=closed, dot=closed)


def cmd_topology_from_relation(args) -> Outcome:
    rel = _expect(_load(args), (Relation,), "topology from-relation")
    report = Report("topology")
    q = _quasiorder(rel, report)
    if q is None:
        return Outcome(report)
    top = AlexandrovTopology.from_quasiorder(q)
    report.info["opens"] = len(top.opens)
    report.info["t0"] = top.is_t0()
    return Outcome(report, document=top, dot=top)


def cmd_topology_to_relation(args) -> Outcome:
    top = _expect(_load(args), (AlexandrovTopology,), "topology to-relation")
    rel = top.to_quasiorder()
    return Outcome(Report("specialization-order"), document=rel, dot=rel)


def cmd_topology_roundtrip(args) -> Outcome:
    obj = _expect(_load(args), (Relation, AlexandrovTopology), "topology roundtrip")
    report = Report("topology-roundtrip")
    if isinstance(obj, AlexandrovTopology):
        top = obj
        rel = top.to_quasiorder()
    else:
        rel = _quasiorder(obj, report)
        if rel is None:
            return Outcome(report)
        top = AlexandrovTopology.from_quasiorder(rel)
    u = rel.universe
    report.check("relation-roundtrip")
    back = AlexandrovTopology.from_quasiorder(rel).to_quasiorder()
    if back != rel:
        x, y = next(p for p in set(back.pairs()) ^ set(rel.pairs()))
        report.fail("relation-roundtrip", "toQuasiorder(fromQuasiorder(R)) = R", x=u.labels[x], y=u.labels[y])
    report.check("topology-roundtrip")
    again = AlexandrovTopology.from_quasiorder(top.to_quasiorder())
    if set(again.opens) != set(top.opens):
        diff = sorted(set(again.opens) ^ set(top.opens))[0]
        report.fail("topology-roundtrip", "fromQuasiorder(toQuasiorder(T)) = T", open_set=u.format(diff))
    report.check("t0-iff-partial-order")
    if top.is_t0() != rel.is_partial_order():
        report.fail("t0-iff-partial-order", "T0 iff R antisymmetric", t0=top.is_t0(), partial_order=rel.is_partial_order())
    return Outcome(report, document=top, dot=rel)


def cmd_rs_build(args) -> Outcome:
    obj = _expect(_load(args), (Relation, AlexandrovTopology, RoughSetSystem), "rs build")
    report = Report("rough-set-system")
    rel = _quasiorder(obj, report)
    if rel is None:
        return Outcome(report)
    system = build_rs(rel)
    report.info["pairs"] = system.size
    return Outcome(report, document=system, result={"pairs": list(system.labels)}, dot=system)


def cmd_rs_nelson_check(args) -> Outcome:
    obj = _expect(_load(args), (Relation, AlexandrovTopology, RoughSetSystem), "rs nelson-check")
    report = Report("rough-set-algebra")
    rel = _quasiorder(obj, report)
    if rel is None:
        return Outcome(report)
    algebra = rs_nelson_algebra(build_rs(rel))
    report.merge(check_axioms(algebra), "axioms")
    report.merge(check_derived_identities(algebra), "derived")
    report.info["size"] = algebra.size
    return Outcome(report, document=algebra, dot=algebra)


def cmd_rs_classes(args) -> Outcome:
    obj = _expect(_load(args), (Relation, AlexandrovTopology, RoughSetSystem), "rs classes")
    report = Report("rough-equality")
    rel = _quasiorder(obj, report)
    if rel is None:
        return Outcome(report)
    u = rel.universe
    if args.subset is not None:
        x = _parse_subset(rel, args.subset)
        members = rough_equality_class(rel, x)
        return Outcome(report, result={"subset": u.members(x), "class": [u.members(m) for m in members]})
    system = build_rs(rel)
    classes = rough_equality_classes(system)
    result = [{"pair": label, "members": [u.members(m) for m in cls]} for label, cls in zip(system.labels, classes)]
    return Outcome(report, result=result)


def cmd_nelson_check(args) -> Outcome:
    report = Report("nelson-algebra")
    algebra = _algebra(_load(args), args, report)
    if algebra is None:
        return Outcome(report)
    report.merge(check_axioms(algebra), "axioms")
    report.merge(check_derived_identities(algebra), "derived")
    report.info["size"] = algebra.size
    return Outcome(report, dot=algebra)


def cmd_nelson_semisimple(args) -> Outcome:
    report = Report("semi-simple")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    lab = algebra.labels
    report.check("semi-simple")
    w = semi_simple_witness(algebra)
    if w is not None:
        report.fail("semi-simple", "a | (a -> 0) = 1", a=lab[w], weak_negation=lab[algebra.weak_negation(w)])
    result = {
        "semi_simple": w is None,
        "weak_negation": {lab[a]: lab[algebra.weak_negation(a)] for a in range(algebra.size)},
    }
    return Outcome(report, result=result)


def cmd_monteiro_check(args) -> Outcome:
    space = _expect(_load(args), (MonteiroSpace,), "monteiro check")
    return Outcome(check_monteiro(space, args.j2), dot=space)


def cmd_monteiro_algebra(args) -> Outcome:
    space = _expect(_load(args), (MonteiroSpace,), "monteiro algebra")
    report = Report("upset-algebra")
    check = check_monteiro(space, args.j2)
    report.merge(check, "monteiro")
    if not check.ok:
        return Outcome(report)
    algebra = monteiro_nelson_algebra(space, args.j2)
    report.merge(check_axioms(algebra), "axioms")
    report.info["size"] = algebra.size
    return Outcome(report, document=algebra, dot=algebra)


def cmd_represent_prime_filters(args) -> Outcome:
    report = Report("prime-filter-space")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    pf = prime_filter_space(algebra)
    report.merge(check_monteiro(pf.space, args.j2), "monteiro")
    lab = pf.space.labels
    result = {"filters": list(lab), "g": {lab[i]: lab[v] for i, v in enumerate(pf.g_table)}}
    return Outcome(report, document=pf.space, result=result, dot=pf.space)


def cmd_represent_embed(args) -> Outcome:
    report = Report("embedding")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    pf = prime_filter_space(algebra)
    h = embedding(algebra, pf)
    report.merge(h.report, "h")
    report.merge(check_vakarelov_criterion(algebra, pf), "vakarelov")
    return Outcome(report, document=h.target, result={"h": h.table()}, dot=h.target)


def cmd_represent_frame(args) -> Outcome:
    report = Report("join-irreducible-frame")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    frame = join_irreducible_frame(algebra)
    report.merge(check_frame(frame, args.j2))
    lab = algebra.labels
    result = {
        "J": [lab[j] for j in frame.J],
        "g": {lab[j]: lab[v] for j, v in frame.g.items()},
        "rho": {lab[j]: lab[v] for j, v in frame.rho.items()},
        "induced_quasiorder": documents.dump(frame.induced),
    }
    return Outcome(report, document=frame.space, result=result, dot=frame.space)


def cmd_represent_upset_algebra(args) -> Outcome:
    report = Report("Phi")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    m = upset_algebra_of_j(join_irreducible_frame(algebra))
    report.merge(m.report)
    return Outcome(report, document=m.target, result={"Phi": m.table()}, dot=m.target)


def cmd_represent_roughset(args) -> Outcome:
    report = Report("phi")
    algebra = _nelson_or_stop(_algebra(_load(args), args, report), report)
    if algebra is None:
        return Outcome(report)
    frame = join_irreducible_frame(algebra)
    m = rough_set_representation(frame, args.branch)
    report.merge(m.report)
    system = build_rs(frame.induced)
    result = {"phi": m.table() if m.mapping else {}, "fixed_points": m.notes}
    return Outcome(report, document=system, result=result, dot=system)


def cmd_represent_cycle(args) -> Outcome:
    obj = _expect(_load(args), (Relation, AlexandrovTopology, RoughSetSystem, NelsonAlgebra, MonteiroSpace),
                  "represent cycle")
    if isinstance(obj, RoughSetSystem):
        obj = obj.relation
    elif isinstance(obj, AlexandrovTopology):
        obj = obj.to_quasiorder()
    return Outcome(equivalence_suite(obj, args.j2))


def cmd_suite(args) -> Outcome:
    from .suites import SUITES, Corpus, run_suite

    names = list(SUITES) if args.name == "all" else [args.name]
    corpus = Corpus(seed=args.seed)
    report = Report("suites")
    summary = {}
    for name in names:
        r = run_suite(name, seed=args.seed, corpus=corpus)
        report.merge(r, name)
        summary[name] = {"ok": r.ok, "findings": len(r.findings), "info": r.info}
    return Outcome(report, result=summary)


COMMANDS = {
    "relation": {"check": cmd_relation_check, "close": cmd_relation_close},
    "topology": {
        "from-relation": cmd_topology_from_relation,
        "to-relation": cmd_topology_to_relation,
        "roundtrip": cmd_topology_roundtrip,
    },
    "rs": {"build": cmd_rs_build, "nelson-check": cmd_rs_nelson_check, "classes": cmd_rs_classes},
    "nelson": {"check": cmd_nelson_check, "semisimple": cmd_nelson_semisimple},
    "monteiro": {"check": cmd_monteiro_check, "algebra": cmd_monteiro_algebra},
    "represent": {
        "prime-filters": cmd_represent_prime_filters,
        "embed": cmd_represent_embed,
        "frame": cmd_represent_frame,
        "upset-algebra": cmd_represent_upset_algebra,
        "roughset": cmd_represent_roughset,
        "cycle": cmd_represent_cycle,
    },
}


# -- argument parsing ------------------------------------------------------------


def _common(parser: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        parser.add_argument("--input", "-i", metavar="FILE", default="-",
                            help="input document (JSON); '-' or omitted reads stdin")
    parser.add_argument("--output", "-o", metavar="FILE", help="write the JSON report here instead of stdout")
    parser.add_argument("--dot", metavar="FILE", help="also write a DOT Hasse diagram of the main structure")
    parser.add_argument("--j2", choices=J2_MODES, default="involutive",
                        help="reading of the Monteiro axiom (J2) (default: involutive)")
    parser.add_argument("--max-universe", type=int, metavar="N",
                        help=f"enumeration cap (default {DEFAULT_MAX_UNIVERSE} or ${ENV_VAR}; hard cap {HARD_MAX_UNIVERSE})")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughnelson",
        description="Rough sets of quasiorders, Nelson algebras, Alexandrov topologies and Monteiro spaces.",
    )
    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP")
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group, help=f"{group} commands")
        sub = gp.add_subparsers(dest="action", required=True, metavar="ACTION")
        for action, fn in commands.items():
            p = sub.add_parser(action, help=(fn.__doc__ or "").strip() or None)
            _common(p)
            p.set_defaults(func=fn)
            if fn is cmd_rs_classes:
                p.add_argument("--subset", metavar="A,B,...",
                               help="print only the rough equality class of this subset")
            if fn is cmd_represent_roughset:
                p.add_argument("--branch", choices=("strict", "printed"), default="strict",
                               help="case split for phi on g-fixed join-irreducibles (default: strict)")
    sp = groups.add_parser("suite", help="run an acceptance suite on the built-in corpus")
    from .suites import SUITES

    sp.add_argument("name", choices=[*SUITES, "all"])
    _common(sp, needs_input=False)
    sp.set_defaults(func=cmd_suite)
    return parser


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _run(args) -> int:
    command = args.group if args.group == "suite" else f"{args.group} {args.action}"
    outcome = args.func(args)
    _write(args.output, documents.dumps(outcome.to_json(command)))
    if args.dot:
        if outcome.dot is None:
            log.warning("%s has nothing to draw; %s not written", command, args.dot)
        else:
            _write(args.dot, emit_dot(outcome.dot))
    for f in outcome.report.findings:
        log.info("finding %s: %s %s", f.name, f.formula, f.witness)
    return EXIT_OK if outcome.report.ok else EXIT_FINDINGS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cap = current_cap() if args.max_universe is None else args.max_universe
        with universe_cap(cap):
            return _run(args)
    except CapExceededError as exc:
        print(f"roughnelson: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CheckFailed as exc:
        # A precondition failed deep inside a construction: report it like any other finding.
        _write(args.output, documents.dumps({"command": args.group, **exc.report.to_json()}))
        print(f"roughnelson: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    except InputError as exc:
        print(f"roughnelson: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RoughNelsonError as exc:
        print(f"roughnelson: internal error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS


if __name__ == "__main__":
    sys.exit(main())
