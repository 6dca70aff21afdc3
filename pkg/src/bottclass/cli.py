"""Command-line interface.

Exit codes: 0 success or isomorphic, 1 well-formed negative answer (distinct),
2 invalid input or a tower that is not Z-trivial, 3 ambiguous reconstruction.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from . import census, deck, forest, ring, tower
from .errors import ParseError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_AMBIGUOUS = 3


class _Fail(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(f"error: {path}: {exc.strerror}") from None


def _load(path: str, parser):
    text = _read(path)
    try:
        return parser(text)
    except ParseError as exc:
        raise _Fail(f"error: {path}: {exc}") from None
    except ValueError as exc:
        raise _Fail(f"error: {path}: {exc}") from None


def _z_trivial(path: str, fn, m):
    try:
        return fn(m)
    except tower.NotZTrivial as exc:
        raise _Fail(f"{path}: not Z-trivial: j={exc.j} {exc.reason}") from None


def cmd_chern(args, out: TextIO) -> int:
    m = _load(args.tower, tower.parse_matrix)
    out.write(ring.format_element(ring.total_chern(tower.presentation(m))) + "\n")
    return EXIT_OK


def cmd_diagram(args, out: TextIO) -> int:
    m = _load(args.tower, tower.parse_matrix)
    out.write(forest.format_diagram(_z_trivial(args.tower, tower.diagram, m)))
    return EXIT_OK


def cmd_iso(args, out: TextIO) -> int:
    m1 = _load(args.tower1, tower.parse_matrix)
    m2 = _load(args.tower2, tower.parse_matrix)
    d1 = _z_trivial(args.tower1, tower.diagram, m1)
    d2 = _z_trivial(args.tower2, tower.diagram, m2)
    same = forest.isomorphic(d1, d2)
    out.write("isomorphic\n" if same else "distinct\n")
    if args.chern:
        c1 = tower.chern_in_z_basis(m1)
        c2 = tower.chern_in_z_basis(m2)
        out.write(f"chern 1: {ring.format_element(c1, 'z')}\n")
        out.write(f"chern 2: {ring.format_element(c2, 'z')}\n")
        out.write("chern: equal\n" if c1 == c2 else "chern: different\n")
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_deck(args, out: TextIO) -> int:
    d = _load(args.forest, forest.parse_diagram)
    if d.n == 0:
        raise _Fail(f"error: {args.forest}: the empty forest has no deck")
    out.write(deck.format_deck(deck.make_deck(d)))
    return EXIT_OK


def cmd_reconstruct(args, out: TextIO) -> int:
    dk = _load(args.deck, deck.parse_deck)
    try:
        result = deck.reconstruct(dk, labelled=args.labelled)
    except deck.InvalidDeck as exc:
        raise _Fail(f"{args.deck}: invalid deck: {exc}") from None
    if isinstance(result, deck.Ambiguous):
        out.write(deck.format_ambiguous(result))
        return EXIT_AMBIGUOUS
    out.write(forest.format_diagram(result))
    return EXIT_OK


def cmd_enumerate(args, out: TextIO) -> int:
    if args.n < 1 or args.qmax < 1:
        raise _Fail("error: need n >= 1 and --qmax >= 1")
    out.write(census.format_census(census.enumerate_labelled(args.n, args.qmax), summary=args.count))
    return EXIT_OK


def cmd_tower(args, out: TextIO) -> int:
    d = _load(args.forest, forest.parse_diagram)
    if d.n == 0:
        raise _Fail(f"error: {args.forest}: a Bott tower needs at least one vertex")
    out.write(tower.format_matrix(tower.tower_of_diagram(d)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottclass",
        description="Cohomology, Chern classes and Bott diagrams of Z-trivial Bott towers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chern", help="total Chern class in the x-basis")
    p.add_argument("tower")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("diagram", help="Bott diagram of a Z-trivial tower")
    p.add_argument("tower")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("iso", help="decide whether two towers are biholomorphic")
    p.add_argument("tower1")
    p.add_argument("tower2")
    p.add_argument("--chern", action="store_true", help="also print both Chern classes in the z-basis")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("deck", help="cards of a forest, one per root")
    p.add_argument("forest")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("reconstruct", help="rebuild a forest from its deck")
    p.add_argument("deck")
    p.add_argument("--labelled", action="store_true", help="keep edge labels")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("enumerate", help="all Bott diagrams on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--qmax", type=int, default=1, help="largest edge label (default 1)")
    p.add_argument("--count", action="store_true", help="append a count=<k> summary line")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("tower", help="a Bott tower realizing a diagram")
    p.add_argument("forest")
    p.set_defaults(func=cmd_tower)
    return parser


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _Fail as exc:
        err.write(str(exc) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
