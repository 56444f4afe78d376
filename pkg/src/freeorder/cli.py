"""Command-line interface: ``freeorder {compare,sign,matrix,verify}``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .config import ConfigError, SessionConfig
from .freeproduct import BandCeilingExceeded, FreeProductGroup
from .matrices import matrix_row
from .ordered import ParseError
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML group definitions (default: built-in Z, Z2, ZZ, Z2Z, ZZZ)")
    common.add_argument("--band-ceiling", type=int, default=None,
                        help="largest band scanned before reporting a diagnostic")

    parser = _Parser(prog="freeorder", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compare", parents=[common], help="compare two words")
    p.add_argument("group")
    p.add_argument("left", help="word literal, e.g. 'A[1,0] * B[3] * A[-1,2]^-1'")
    p.add_argument("right", help="word literal ('' or 1 for the identity)")

    p = sub.add_parser("sign", parents=[common], help="compare a word with the identity")
    p.add_argument("group")
    p.add_argument("word")

    p = sub.add_parser("matrix", parents=[common], help="dump a truncation of the representation matrix")
    p.add_argument("group")
    p.add_argument("word")
    p.add_argument("--size", "--block", dest="size", type=int, default=3)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--block", type=int, default=4)
    return parser


def _free_product(args) -> FreeProductGroup:
    cfg = SessionConfig.load(args.config)
    group = cfg.group(args.group)
    if not isinstance(group, FreeProductGroup):
        raise ConfigError(f"group {args.group!r} is not a free product")
    if args.band_ceiling is not None:
        if args.band_ceiling < 1:
            raise ConfigError("--band-ceiling must be positive")
        group.band_ceiling = args.band_ceiling
    return group


def cmd_compare(args, out) -> int:
    group = _free_product(args)
    w1, w2 = group.parse_word(args.left), group.parse_word(args.right)
    report = group.decide(w1, w2)
    print(report.result.symbol(), file=out)
    print(f"{group.render_word(w1)} {report.result.symbol()} {group.render_word(w2)}", file=out)
    if report.locus is not None:
        print(f"decided at: {report.locus}", file=out)
    print(f"entries computed: {report.entries_computed}, cache hits: {report.cache_hits}", file=out)
    return EXIT_OK


def cmd_sign(args, out) -> int:
    group = _free_product(args)
    w = group.parse_word(args.word)
    report = group.decide(w, ())
    print({1: "+1", 0: "0", -1: "-1"}[int(report.result)], file=out)
    if report.locus is not None:
        print(f"decided at: {report.locus}", file=out)
    return EXIT_OK


def cmd_matrix(args, out) -> int:
    if args.size < 1:
        raise ConfigError("--size must be positive")
    group = _free_product(args)
    w = group.parse_word(args.word)
    m = group.represent(w)
    print(f"# {group.render_word(w)}  size={args.size}", file=out)
    for i in range(1, args.size + 1):
        row = matrix_row(m, i, args.size, group.algebra)
        for k, e in enumerate(row, start=i):
            print(f"({i},{k}): {e}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    print(f"verify suite={args.suite} seed={args.seed} samples={args.samples} block={args.block}", file=out)
    failed = False
    for name in names:
        rep = run_suite(name, args.seed, args.samples, args.block)
        print(rep.summary(), file=out)
        if rep.failures:
            failed = True
            print(f"  first counterexample: {rep.failures[0]}", file=out)
    print("overall " + ("FAIL" if failed else "PASS"), file=out)
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"compare": cmd_compare, "sign": cmd_sign, "matrix": cmd_matrix, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ConfigError, ParseError, OSError) as exc:
        print(f"freeorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BandCeilingExceeded as exc:
        print(f"freeorder: diagnostic: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
