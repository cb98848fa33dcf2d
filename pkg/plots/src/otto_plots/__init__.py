"""Figure rendering for curved-otto CSV datasets."""

from .recipes import FIGURE_IDS, FigureRecipe, RecipeError, make_recipe
from .render import load_table, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_IDS",
    "FigureRecipe",
    "RecipeError",
    "load_table",
    "make_recipe",
    "render",
]
