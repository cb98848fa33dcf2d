"""Per-figure rendering recipes.

Each recipe names the CSV columns a figure consumes, so a dataset missing a
column fails loudly before any drawing happens.  Line figures either group
one value column by a curve-family column, or draw several value columns as
labeled series; heatmap figures pivot a value column over two axis columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional


class RecipeError(ValueError):
    """Bad recipe/CSV combination: missing columns, empty or malformed data."""


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    csv_path: Path
    output_path: Path
    kind: str  # "line" | "heatmap"
    x: str
    values: tuple[str, ...]
    y: Optional[str] = None  # heatmap row column
    group: Optional[str] = None  # line curve-family column
    x_label: str = ""
    y_label: str = ""
    title: str = ""
    log_x: bool = False

    def required_columns(self) -> tuple[str, ...]:
        columns = [self.x, *self.values]
        if self.y is not None:
            columns.append(self.y)
        if self.group is not None:
            columns.append(self.group)
        return tuple(columns)


_TEMPLATES: dict[str, dict] = {
    "fig2": dict(
        kind="line",
        x="lambda_hot",
        values=("gap_ratio",),
        group="level_n",
        x_label="curvature",
        y_label="gap ratio (E_{n+1} - E_n) / E_0",
        title="Dimensionless level gaps vs curvature",
    ),
    "fig4": dict(
        kind="heatmap",
        x="lambda_hot",
        y="level_n",
        values=("energy_gap_shift",),
        x_label="hot-side curvature",
        y_label="level n",
        title="Adiabatic level shift E_n(hot) - E_n(cold)",
    ),
    "fig5": dict(
        kind="heatmap",
        x="lambda_hot",
        y="level_n",
        values=("population_shift",),
        x_label="hot-side curvature",
        y_label="level n",
        title="Hot-isochore population shift",
    ),
    "fig6": dict(
        kind="line",
        x="lambda_hot",
        values=("work",),
        group="lambda_cold",
        x_label="hot-side curvature",
        y_label="extracted work",
        title="Extracted work vs hot-side curvature",
    ),
    "fig7": dict(
        kind="heatmap",
        x="lambda_hot",
        y="lambda_cold",
        values=("work",),
        x_label="hot-side curvature",
        y_label="cold-side curvature",
        title="Extracted work over both curvatures",
    ),
    "fig8": dict(
        kind="line",
        x="t_hot",
        values=("work",),
        group="lambda_hot",
        x_label="hot bath temperature",
        y_label="extracted work",
        title="Extracted work vs hot bath temperature",
    ),
    "fig9": dict(
        kind="line",
        x="lambda_hot",
        values=("efficiency",),
        group="lambda_cold",
        x_label="hot-side curvature",
        y_label="efficiency",
        title="Engine efficiency vs hot-side curvature",
    ),
    "fig10": dict(
        kind="heatmap",
        x="lambda_hot",
        y="lambda_cold",
        values=("efficiency",),
        x_label="hot-side curvature",
        y_label="cold-side curvature",
        title="Engine efficiency over both curvatures",
    ),
    "fig11": dict(
        kind="line",
        x="lambda_hot",
        values=("q_hot", "q_cold_out"),
        x_label="hot-side curvature",
        y_label="heat exchanged",
        title="Bath heats vs hot-side curvature",
    ),
}

FIGURE_IDS = tuple(_TEMPLATES)


def make_recipe(figure_id: str, csv_path: Path | str, output_path: Path | str) -> FigureRecipe:
    try:
        template = _TEMPLATES[figure_id]
    except KeyError:
        raise RecipeError(
            f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}"
        ) from None
    return FigureRecipe(
        figure_id=figure_id,
        csv_path=Path(csv_path),
        output_path=Path(output_path),
        **template,
    )
