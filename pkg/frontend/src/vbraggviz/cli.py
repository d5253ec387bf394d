"""Standalone rendering command.

Exit codes: 0 success, 2 schema/parse error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import RENDERERS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vbraggviz",
        description="Render modeling-toolkit CSV/JSON outputs into figures",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--kind", required=True, choices=sorted(RENDERERS))
    p.add_argument("--in", dest="in_path", required=True,
                   help="input CSV (with sidecar) or JSON report/manifest")
    p.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = render(args.kind, args.in_path, args.out)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 4
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
