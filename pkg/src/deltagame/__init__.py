"""Constrained synchronous values of the three-input, two-output Delta game."""

from .game import Correlation, Game, ThetaPoint, delta_game, value
from .lp import beta0_closed, f_t
from .vect import beta_range_closed, f_vect

__version__ = "0.1.0"

__all__ = [
    "Correlation",
    "Game",
    "ThetaPoint",
    "delta_game",
    "value",
    "beta0_closed",
    "f_t",
    "beta_range_closed",
    "f_vect",
]
