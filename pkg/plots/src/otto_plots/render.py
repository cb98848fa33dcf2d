"""CSV loading, validation and figure rendering.

The input dialect is the one the dataset exporter freezes: comma separator,
header row, '\\n' line endings, 'NA' for not-applicable cells.  'NA' parses
to NaN, which matplotlib leaves as gaps, so partially-applicable columns
(efficiency outside engine mode) render without special casing.

Rendering is deterministic: a committed style file, the Agg backend, and no
embedded timestamps, so re-running on the same CSV reproduces the image
byte for byte.  All validation happens before a figure is opened; a bad
input never leaves a partial image behind.
"""

from __future__ import annotations

import csv
import math
from importlib import resources
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .recipes import FigureRecipe, RecipeError

_STYLE_PATH = resources.files("otto_plots") / "otto.mplstyle"


def load_table(path: Path | str) -> tuple[list[str], list[list]]:
    """Parse a dataset CSV into (columns, rows); 'NA' becomes NaN."""
    path = Path(path)
    if not path.exists():
        raise RecipeError(f"dataset {path} does not exist")
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise RecipeError(f"dataset {path} is empty") from None
        rows: list[list] = []
        for lineno, raw in enumerate(reader, 2):
            if len(raw) != len(header):
                raise RecipeError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(raw)}"
                )
            rows.append([_parse_cell(cell) for cell in raw])
    if not rows:
        raise RecipeError(f"dataset {path} has a header but no rows")
    return header, rows


def _parse_cell(cell: str):
    if cell == "NA":
        return math.nan
    try:
        return float(cell)
    except ValueError:
        return cell  # mode strings and other labels


def _column(header: list[str], rows: list[list], name: str) -> list:
    index = header.index(name)
    return [row[index] for row in rows]


def _numeric(values: list, name: str) -> np.ndarray:
    try:
        return np.asarray([float(v) for v in values])
    except (TypeError, ValueError):
        raise RecipeError(f"column {name!r} is not numeric") from None


def render(recipe: FigureRecipe) -> Path:
    """Render one recipe to its output path and return the path."""
    header, rows = load_table(recipe.csv_path)
    missing = [c for c in recipe.required_columns() if c not in header]
    if missing:
        raise RecipeError(
            f"dataset {recipe.csv_path} lacks columns {missing}; header is {header}"
        )

    with plt.style.context(str(_STYLE_PATH)):
        fig, ax = plt.subplots()
        try:
            if recipe.kind == "line":
                _draw_lines(ax, recipe, header, rows)
            else:
                _draw_heatmap(fig, ax, recipe, header, rows)
            ax.set_xlabel(recipe.x_label or recipe.x)
            ax.set_ylabel(recipe.y_label or ", ".join(recipe.values))
            ax.set_title(recipe.title)
            if recipe.log_x:
                ax.set_xscale("log")
            recipe.output_path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(recipe.output_path)
        finally:
            plt.close(fig)
    return recipe.output_path


def _draw_lines(ax, recipe: FigureRecipe, header, rows) -> None:
    x = _numeric(_column(header, rows, recipe.x), recipe.x)
    if recipe.group is not None:
        value = recipe.values[0]
        z = _numeric(_column(header, rows, value), value)
        groups = _numeric(_column(header, rows, recipe.group), recipe.group)
        for g in np.unique(groups):
            mask = groups == g
            order = np.argsort(x[mask], kind="stable")
            label = f"{recipe.group} = {g:g}"
            ax.plot(x[mask][order], z[mask][order], label=label)
        ax.legend()
    else:
        order = np.argsort(x, kind="stable")
        for value in recipe.values:
            z = _numeric(_column(header, rows, value), value)
            ax.plot(x[order], z[order], label=value)
        if len(recipe.values) > 1:
            ax.axhline(0.0, color="0.4", linewidth=0.8)
            ax.legend()


def _draw_heatmap(fig, ax, recipe: FigureRecipe, header, rows) -> None:
    x = _numeric(_column(header, rows, recipe.x), recipe.x)
    y = _numeric(_column(header, rows, recipe.y), recipe.y)
    z = _numeric(_column(header, rows, recipe.values[0]), recipe.values[0])
    x_vals = np.unique(x)
    y_vals = np.unique(y)
    grid = np.full((len(y_vals), len(x_vals)), np.nan)
    x_index = {v: i for i, v in enumerate(x_vals)}
    y_index = {v: i for i, v in enumerate(y_vals)}
    for xi, yi, zi in zip(x, y, z):
        grid[y_index[yi], x_index[xi]] = zi
    mesh = ax.pcolormesh(x_vals, y_vals, np.ma.masked_invalid(grid), shading="nearest")
    fig.colorbar(mesh, ax=ax, label=recipe.values[0])
