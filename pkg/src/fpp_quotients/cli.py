"""Command-line entry point: ``fpp-verify CHECK [options]``."""

from __future__ import annotations

import argparse
import sys

from . import checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpp-verify",
        description="Re-run the exact computations behind the classification of "
                    "quotients of fake projective planes.",
    )
    parser.add_argument("check", choices=sorted(checks.CHECKS) + ["all"])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--m", type=int, help="coefficient of M for 'exclude' (1 or 2)")
    parser.add_argument("--emit-list", nargs="?", const="stage1_m{m}.json", metavar="PATH",
                        help="write the stage-1 list of 'exclude' as JSON "
                             "(default stage1_m{m}.json)")
    parser.add_argument("--n", type=int, help="n with F ~ nK_Y for 'fibres'")
    parser.add_argument("--order", type=int, help="group order for 'quotient-invariants'")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    opts = {"m": args.m, "n": args.n, "order": args.order, "emit_list": args.emit_list}
    reports = checks.run(args.check, opts)
    out = checks.to_json(reports) if args.format == "json" else checks.to_text(reports)
    print(out)
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
