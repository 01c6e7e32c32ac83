"""Positive regions, dependency and consistency degrees, and inclusion measures.

Everything is exact: values are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .relapprox import lower_mask
from .universe import DomainError, ElementSet, Relation, Universe, class_masks, popcount

MeasureVector = tuple  # tuple of Fraction


def _same_universe(R: Relation, Q: Relation) -> None:
    if R.universe.elements != Q.universe.elements:
        raise DomainError("relations live on different universes")


def pos(universe: Universe, R: Relation, Q: Relation) -> ElementSet:
    """Union of the R-lower approximations of the Q-classes."""
    _same_universe(R, Q)
    r_classes = class_masks(R)
    m = 0
    for X in class_masks(Q):
        m |= lower_mask(r_classes, X)
    return ElementSet(universe, m)


def _size(universe: Universe) -> int:
    n = len(universe)
    if n == 0:
        raise DomainError("degrees are undefined on an empty universe")
    return n


def delta(universe: Universe, R: Relation, Q: Relation) -> Fraction:
    """Degree of dependence of Q on R."""
    return Fraction(len(pos(universe, R, Q)), _size(universe))


def gk(universe: Universe, R: Relation, Q: Relation) -> MeasureVector:
    """Per R-class share of the universe lying inside the R-positive region of Q."""
    n = _size(universe)
    p = pos(universe, R, Q).mask
    return tuple(Fraction(popcount(g), n) if g & ~p == 0 else Fraction(0)
                 for g in class_masks(R))


def cons(universe: Universe, R: Relation, Q: Relation, n: int = 1) -> Fraction:
    if n < 0:
        raise ValueError("the consistency constant must be nonnegative")
    a = delta(universe, R, Q)
    b = delta(universe, Q, R)
    return (a + b + n * a * b) / (n + 2)


def gcons(universe: Universe, R: Relation, Q: Relation, n: int = 1) -> MeasureVector:
    """Granular consistency: scaled k's, scaled l's, then all cross terms row-major."""
    if n < 0:
        raise ValueError("the consistency constant must be nonnegative")
    k = gk(universe, R, Q)
    l = gk(universe, Q, R)
    d = n + 2
    return tuple([ki / d for ki in k] + [lj / d for lj in l]
                 + [n * ki * lj / d for ki in k for lj in l])


# inclusion functions -------------------------------------------------------------------

def chi(G_i: ElementSet, X: ElementSet) -> int:
    return 1 if G_i <= X else 0


def incl(kind: str, X: ElementSet, Y: ElementSet) -> Fraction:
    S = len(X.universe)
    if kind == "k":
        return Fraction(len(X & Y), len(X)) if X else Fraction(1)
    if kind == "k1":
        return Fraction(len(Y), len(X | Y)) if (X | Y) else Fraction(1)
    if kind == "k2":
        if S == 0:
            raise DomainError("k2 is undefined on an empty universe")
        return Fraction(len(~X | Y), S)
    raise ValueError(f"unknown inclusion function {kind!r}")


def incl_star(kind: str, X: ElementSet, Y: ElementSet, G: Sequence[ElementSet]) -> MeasureVector:
    """Granule-indexed replacements of k, k1 and k2.

    Lower approximations are taken with respect to the granules ``G``.
    """
    r = len(G)
    if r == 0:
        raise DomainError("starred inclusion needs at least one granule")
    masks = [g.mask for g in G]
    xl = lower_mask(masks, X.mask)
    if kind == "k*":
        if not xl:
            return tuple(Fraction(1, r) for _ in G)
        d = popcount(xl)
        return tuple(Fraction(len(g) * chi(g, X & Y), d) for g in G)
    if kind == "k1*":
        if not xl:
            return tuple(Fraction(1, r) for _ in G)
        # X^l nonempty forces (X u Y)^l nonempty, so the denominator is safe
        d = popcount(lower_mask(masks, (X | Y).mask))
        return tuple(Fraction(len(g) * chi(g, Y), d) for g in G)
    if kind == "k2*":
        S = len(X.universe)
        if S == 0:
            raise DomainError("k2* is undefined on an empty universe")
        return tuple(Fraction(len(g) * chi(g, ~X | Y), S) for g in G)
    raise ValueError(f"unknown starred inclusion function {kind!r}")
