"""Rough set approximations, granule axioms, dialectical counting and rough naturals."""

from .universe import DomainError, ElementSet, Relation, Universe, UnknownElementError, closure

__all__ = ["DomainError", "ElementSet", "Relation", "Universe", "UnknownElementError", "closure"]
__version__ = "0.1.0"
