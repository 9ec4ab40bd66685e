"""Command-line interface.

Exit status: 0 on success, 1 when a check finds violations, 2 on bad input.
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import enumeration as en
from . import golden
from .constructions import coequalizer, pullback, subspace
from .core import ConditionGroup, SpaceMap
from .descent import Outcome, decide_effective_descent
from .document import Document, emit_map_decl, emit_space, parse_file
from .errors import InputError
from .maps import (
    descent_conditions,
    is_closed_map,
    is_open_map,
    regular_epi_conditions,
    surjection_ladder,
)
from .core import morphism_conditions

PROPERTIES = ("morphism", "regepi", "descent", "closed", "open", "effective", "ladder")
SUITE_NAMES = ("s5", "s73", "props", "thm43", "thm65")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class _Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def row(self, *cells: str) -> None:
        if self.fmt == "tsv":
            self.lines.append("\t".join(cells))
        else:
            key, *rest = cells
            self.lines.append(f"{key}: {' '.join(rest)}".rstrip())

    def text(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _tf(v: bool | None) -> str:
    return {True: "true", False: "false", None: "inconsistent"}[v]


# document lookup -----------------------------------------------------------


def _load(doc_path: str | None) -> list[Document]:
    if doc_path:
        return [parse_file(doc_path)]
    return [golden.load_document(name) for name in golden.BUNDLED]


def _find_map(docs: list[Document], name: str) -> tuple[Document, SpaceMap]:
    for doc in docs:
        if name in doc.maps:
            return doc, doc.maps[name]
    raise InputError(f"no map named {name!r}")


def _find_space(docs: list[Document], name: str):
    for doc in docs:
        if name in doc.spaces:
            return doc, doc.spaces[name]
    raise InputError(f"no space named {name!r}")


# check -----------------------------------------------------------------------


def _group_row(out: _Output, label: str, g: ConditionGroup) -> bool:
    detail = " ".join(f"{k}={_tf(v)}" for k, v in g.results.items())
    if out.fmt == "tsv":
        out.row(label, _tf(g.verdict), detail)
    else:
        out.row(label, _tf(g.verdict))
        out.text(f"  conditions: {detail}")
    return g.consistent


def cmd_check(args, out: _Output) -> int:
    _, f = _find_map(_load(args.doc), args.map)
    props = [args.property] if args.property else list(PROPERTIES)
    if out.fmt == "tsv":
        out.row("property", "verdict", "conditions")
    out.row("surjective", _tf(f.is_surjective()))
    consistent = _group_row(out, "morphism", morphism_conditions(f))
    continuous = f.is_continuous()
    for prop in props:
        if prop == "morphism":
            continue
        if not continuous:
            out.row(prop, "n/a", "not a morphism")
            continue
        if prop == "regepi":
            consistent &= _group_row(out, "regepi", regular_epi_conditions(f))
        elif prop == "descent":
            consistent &= _group_row(out, "descent", descent_conditions(f))
        elif prop == "closed":
            consistent &= _group_row(out, "closed", is_closed_map(f))
        elif prop == "open":
            consistent &= _group_row(out, "open", is_open_map(f))
        elif prop == "effective":
            r = decide_effective_descent(f, fast_path=not args.no_fast_path)
            verdict = {Outcome.EFFECTIVE: "true", Outcome.NOT_EFFECTIVE: "false"}.get(
                r.outcome, r.outcome.value
            )
            detail = f"route={r.route.replace(' ', '-')}"
            if r.route == "enumeration":
                detail += f" shapes={r.shapes} data={r.data} non-effective={r.non_effective} bound={r.bound}"
            if out.fmt == "tsv":
                out.row("effective", verdict, detail)
            else:
                out.row("effective", verdict)
                out.text(f"  {detail}")
        elif prop == "ladder":
            if not f.is_surjective():
                out.row("ladder", "n/a", "not surjective")
                continue
            lad = surjection_ladder(f)
            detail = " ".join(f"{k}={_tf(v) if v is not None else 'undecided'}"
                              for k, v in zip("abcd", lad.as_tuple()))
            if out.fmt == "tsv":
                out.row("ladder", _tf(lad.chain_holds), detail)
            else:
                out.row("ladder", detail)
                out.text(f"  chain d => c => b => a: {'holds' if lad.chain_holds else 'FAILS'}")
            consistent &= lad.chain_holds
    return EXIT_OK if consistent else EXIT_VIOLATION


# construct ---------------------------------------------------------------------


def cmd_construct(args, out: _Output) -> int:
    docs = _load(args.doc)
    parts: list[str] = []
    if args.kind == "pullback":
        if len(args.operands) != 2:
            raise InputError("pullback takes two map names")
        doc, p = _find_map(docs, args.operands[0])
        _, alpha = _find_map(docs, args.operands[1])
        r = pullback(p, alpha)
        name = args.name or "P"
        e_name = _declared(doc, docs, p.dom)
        a_name = _declared(doc, docs, alpha.dom)
        parts.append(emit_space(name, r.space))
        parts.append(emit_map_decl("pi1", r.proj1, name, e_name))
        parts.append(emit_map_decl("pi2", r.proj2, name, a_name))
        header = [emit_space(e_name, p.dom)]
        if a_name != e_name:
            header.append(emit_space(a_name, alpha.dom))
        parts = header + parts
    elif args.kind == "coequalizer":
        if len(args.operands) != 2:
            raise InputError("coequalizer takes two map names")
        doc, f = _find_map(docs, args.operands[0])
        _, g = _find_map(docs, args.operands[1])
        r = coequalizer(f, g)
        name = args.name or "Q"
        cod = _declared(doc, docs, f.cod)
        parts = [emit_space(cod, f.cod), emit_space(name, r.space), emit_map_decl("q", r.q, cod, name)]
    else:
        if len(args.operands) < 1:
            raise InputError("subspace takes a space name and point names")
        doc, space = _find_space(docs, args.operands[0])
        sub, incl = subspace(space, space.mask(args.operands[1:]))
        name = args.name or "S"
        parts = [
            emit_space(args.operands[0], space),
            emit_space(name, sub),
            emit_map_decl("incl", incl, name, args.operands[0]),
        ]
    out.text("".join(parts).rstrip("\n"))
    return EXIT_OK


def _declared(doc: Document, docs: list[Document], space) -> str:
    for d in [doc, *docs]:
        name = d.space_name(space)
        if name is not None:
            return name
    raise InputError("space is not declared in the document")


# verify-paper -------------------------------------------------------------------


def cmd_verify(args, out: _Output) -> int:
    suites = [args.suite] if args.suite else list(SUITE_NAMES)
    failures = 0
    for suite in suites:
        if suite in golden.SUITES:
            out.text(f"suite {suite}")
            for desc, ok in golden.SUITES[suite]():
                out.text(f"  {'PASS' if ok else 'FAIL'}  {desc}")
                failures += not ok
            continue
        reports = {
            "props": lambda: [
                en.verify_equivalences(args.n, args.workers),
                en.verify_identity_carrier(args.n),
                en.verify_preorder_descent(args.n),
            ],
            "thm43": lambda: [en.verify_descent_is_effective(args.n, args.workers, args.object_level)],
            "thm65": lambda: [en.verify_closed_open_effective(args.n, args.workers)],
        }[suite]()
        for r in reports:
            out.text(f"[{suite}] " + r.to_text())
            failures += len(r.violations)
    out.text(f"total failures: {failures}")
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


# mine / count-moore -------------------------------------------------------------


def cmd_mine(args, out: _Output) -> int:
    report = en.mine_ladder(args.n, args.workers, args.checkpoint)
    out.text(report.to_text(max_listed=args.list))
    bad = report.chain_failures or not report.open_b_to_c
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_count(args, out: _Output) -> int:
    count = en.count_moore(args.n, args.up_to_iso)
    if out.fmt == "tsv":
        out.row("n", "families")
        out.row(str(args.n), str(count))
    else:
        out.text(str(count))
    if args.check:
        oracle = en.moore_count_bruteforce(args.n)
        print(f"brute-force count: {oracle}", file=sys.stderr)
        if oracle != count:
            return EXIT_VIOLATION
    return EXIT_OK


# entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closure-descent", description="Finite closure spaces and descent morphisms."
    )
    parser.add_argument("--format", choices=("plain", "tsv"), default="plain")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a map")
    p.add_argument("map")
    p.add_argument("--doc", help="document file (default: the bundled examples)")
    p.add_argument("--property", choices=PROPERTIES)
    p.add_argument("--no-fast-path", action="store_true",
                   help="decide effectiveness by enumeration even for closed/open surjections")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build a pullback, coequalizer or subspace")
    p.add_argument("kind", choices=("pullback", "coequalizer", "subspace"))
    p.add_argument("operands", nargs="*", help="two maps, or a space followed by points")
    p.add_argument("--doc")
    p.add_argument("--name", help="name of the constructed space")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-paper", help="check the worked examples and the exhaustive suites")
    p.add_argument("--suite", choices=SUITE_NAMES)
    p.add_argument("--n", type=int, default=3, help="largest space size for exhaustive suites")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--object-level", action="store_true",
                   help="thm43: also rebuild every datum as an object and check it directly")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mine", help="search for counterexamples along the surjection ladder")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="file recording completed blocks")
    p.add_argument("--list", type=int, default=1, help="witnesses printed per implication")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("count-moore", help="count Moore families on n points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--check", action="store_true", help="compare with the brute-force count")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Output(args.format)
    try:
        status = args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
