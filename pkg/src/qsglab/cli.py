"""Command-line front end.

    qsglab analyze <file> [--json OUT]
    qsglab toeplitz {pentagon,intertwine,cokernel,wops} [--cutoff N]
    qsglab corpus list
    qsglab corpus emit <name|all> [DIR]

Exit codes: 0 success (absence of a Haar state or counit is a result, not an
error), 2 bad arguments or unreadable input, 3 table not associative,
4 an identity that must hold failed.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from qsglab import corpus, toeplitz
from qsglab.core import FiniteSemigroup, validate_semigroup
from qsglab.report import analyze, dumps, not_associative_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_ASSOCIATIVE = 3
EXIT_IDENTITY_FAILED = 4

DEFAULT_MAX_ORDER = 16

_CERTIFICATES = {
    "pentagon": (toeplitz.pentagon_certificate, 25, 0),
    "intertwine": (toeplitz.intertwining_certificate, 12, 0),
    "cokernel": (toeplitz.cokernel_certificate, 25, 1),
    "wops": (toeplitz.wops_certificate, 10, 0),
}


def max_order() -> int:
    raw = os.environ.get("QSGLAB_MAX_ORDER", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        return DEFAULT_MAX_ORDER


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsglab", description="Exact compact quantum semigroup toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full analysis on a semigroup Cayley table")
    p.add_argument("file", type=Path)
    p.add_argument("--json", dest="out", type=Path, help="write the report here instead of stdout")

    p = sub.add_parser("toeplitz", help="run a Toeplitz certificate")
    p.add_argument("certificate", choices=sorted(_CERTIFICATES))
    p.add_argument("--cutoff", type=int, default=None, help="largest basis index scanned")

    p = sub.add_parser("corpus", help="list or write the bundled fixtures")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    e = csub.add_parser("emit")
    e.add_argument("name")
    e.add_argument("dir", nargs="?", type=Path)
    return parser


def _write(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    try:
        doc = corpus.read_file(args.file)
    except corpus.SemigroupFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cap = max_order()
    if doc["order"] > cap:
        print(f"error: order {doc['order']} exceeds QSGLAB_MAX_ORDER={cap}", file=sys.stderr)
        return EXIT_USAGE
    rep = validate_semigroup(doc["table"])
    if not rep.associative:
        _write(dumps(not_associative_report(rep, doc["names"])), args.out)
        s, t, r = rep.violation
        print(f"error: not associative at ({s}*{t})*{r}", file=sys.stderr)
        return EXIT_NOT_ASSOCIATIVE
    report = analyze(FiniteSemigroup(doc["table"], doc["names"]))
    _write(dumps(report), args.out)
    return EXIT_IDENTITY_FAILED if report["required_failures"] else EXIT_OK


def cmd_toeplitz(args, parser) -> int:
    func, default, minimum = _CERTIFICATES[args.certificate]
    cutoff = default if args.cutoff is None else args.cutoff
    if cutoff < minimum:
        parser.error(f"--cutoff must be at least {minimum} for {args.certificate}")
    report = func(cutoff)
    sys.stdout.write(dumps(report))
    return EXIT_IDENTITY_FAILED if report["mismatches"] else EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.names():
            print(name)
        return EXIT_OK
    targets = corpus.names() if args.name == "all" else [args.name]
    if args.name == "all" and args.dir is None:
        print("error: 'emit all' needs a target directory", file=sys.stderr)
        return EXIT_USAGE
    for name in targets:
        try:
            text = corpus.emit(name, args.dir)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        if args.dir is None:
            sys.stdout.write(text)
        else:
            print(args.dir / f"{name}.json")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    if args.command == "toeplitz":
        return cmd_toeplitz(args, parser)
    return cmd_corpus(args)


if __name__ == "__main__":
    sys.exit(main())
