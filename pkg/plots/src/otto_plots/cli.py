"""Render figure CSVs to images: one subcommand per figure plus render-all.

Exit codes: 0 success, 1 data/render failure (diagnostic on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .recipes import FIGURE_IDS, RecipeError, make_recipe
from .render import render


def _render_one(figure_id: str, csv_path: str, out_path: str) -> None:
    path = render(make_recipe(figure_id, csv_path, out_path))
    print(f"wrote {path}", file=sys.stderr)


def _cmd_figure(args) -> int:
    out = args.out or f"{args.figure_id}.png"
    _render_one(args.figure_id, args.csv, out)
    return 0


def _cmd_all(args) -> int:
    data_dir = Path(args.data_dir)
    out_dir = Path(args.out_dir)
    for figure_id in FIGURE_IDS:
        _render_one(
            figure_id,
            str(data_dir / f"{figure_id}.csv"),
            str(out_dir / f"{figure_id}.png"),
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otto-plots",
        description="Render curved-otto figure datasets (CSV) into images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for figure_id in FIGURE_IDS:
        p = sub.add_parser(figure_id, help=f"render {figure_id}")
        p.add_argument("--csv", required=True, help="input dataset CSV")
        p.add_argument("--out", default=None, help="output image (default <figure>.png)")
        p.set_defaults(handler=_cmd_figure, figure_id=figure_id)
    p = sub.add_parser("all", help="render every figure from a dataset directory")
    p.add_argument("--data-dir", required=True, help="directory holding fig*.csv")
    p.add_argument("--out-dir", required=True, help="directory for the images")
    p.set_defaults(handler=_cmd_all)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.handler(args)
    except RecipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
