"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the physical or mathematical domain."""


class TruncationError(ArithmeticError):
    """A certified series truncation could not reach the requested tolerance.

    Attributes
    ----------
    achieved_rel_bound : float
        Best relative tail bound reached before the level cap was hit.
    n_levels : int
        Number of levels summed when the cap was hit.
    """

    def __init__(self, message: str, achieved_rel_bound: float, n_levels: int):
        super().__init__(message)
        self.achieved_rel_bound = achieved_rel_bound
        self.n_levels = n_levels


class BracketError(ValueError):
    """A root bracket does not contain a sign change."""
