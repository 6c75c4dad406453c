"""Command-line wrapper: render --figure <id> --in <csv...> --out <path>."""
from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, FORMATS, FigureJob, ValidationError, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a publication figure from vacuum-census CSVs.")
    parser.add_argument("--figure", choices=FIGURES, required=True)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV")
    parser.add_argument("--out", required=True)
    parser.add_argument("--format", choices=FORMATS, default="png")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        job = FigureJob(figure=args.figure, inputs=tuple(args.inputs),
                        output=args.out, format=args.format)
        path = render(job)
    except (ValidationError, OSError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
