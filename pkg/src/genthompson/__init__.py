"""Exact computation in the generalized Thompson groups F_n and their automorphisms."""

from .errors import ParseError, ThompsonError
from .nadic import NAdic, Residue, phi, phi_frac
from .plmap import PeriodicPLMap, PLMap, compose, generator, inverse, translation
from .words import Word, from_plmap, parse, seminormal, to_plmap

__all__ = [
    "NAdic", "Residue", "phi", "phi_frac",
    "PLMap", "PeriodicPLMap", "compose", "generator", "inverse", "translation",
    "Word", "parse", "seminormal", "to_plmap", "from_plmap",
    "ThompsonError", "ParseError",
]
__version__ = "0.1.0"
