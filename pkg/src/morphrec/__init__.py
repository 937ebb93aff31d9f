"""Recognizability of morphisms of free monoids.

Graph-based deciders on the square of the flower automaton, an
independent transition-monoid criterion, decompositions through smaller
alphabets, and brute-force oracles for cross-checking.
"""

from .errors import DomainError, InvariantError, MonoidCapExceeded, MorphismSyntaxError, ResourceError
from .morphism import Morphism, apply, compose, parse_morphism
from .product import recognizable_for_aperiodic
from .witness import Witness, verify_witness

__all__ = [
    "DomainError",
    "InvariantError",
    "MonoidCapExceeded",
    "Morphism",
    "MorphismSyntaxError",
    "ResourceError",
    "Witness",
    "apply",
    "compose",
    "parse_morphism",
    "recognizable_for_aperiodic",
    "verify_witness",
]
