"""Fuzzy sets as finite descending chains of level sets, and their partitions.

A fuzzy set is given by level sets at finitely many rational points
0 = p_0 < ... < p_m = 1.  Between grid points the chain is read as a left
continuous step function, A_a = A_p for the least grid point p >= a, which
makes every level the intersection of the levels below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .universe import DomainError, ElementSet, Universe, union_all

Ratio = Fraction


def _ratio(a) -> Fraction:
    r = Fraction(a)
    if not 0 <= r <= 1:
        raise DomainError(f"level {r} lies outside [0, 1]")
    return r


@dataclass(frozen=True)
class FuzzySet:
    universe: Universe
    levels: tuple[tuple[Fraction, ElementSet], ...]

    def __post_init__(self):
        points = [p for p, _ in self.levels]
        if points != sorted(set(points)):
            raise DomainError("levels must be strictly increasing")
        if not points or points[0] != 0 or points[-1] != 1:
            raise DomainError("levels must include 0 and 1")
        if self.levels[0][1].mask != self.universe.full_mask:
            raise DomainError("the 0-level must be the whole universe")
        for (p, A), (q, B) in zip(self.levels, self.levels[1:]):
            if not B <= A:
                raise DomainError(f"level {q} is not contained in level {p}")

    @classmethod
    def of(cls, universe: Universe, levels: Mapping) -> "FuzzySet":
        """Build from {level: elements}; a missing 0-level defaults to the universe
        and a missing 1-level to the empty set."""
        table = {_ratio(p): (A if isinstance(A, ElementSet) else universe.set(A))
                 for p, A in levels.items()}
        table.setdefault(Fraction(0), universe.full())
        table.setdefault(Fraction(1), universe.empty())
        return cls(universe, tuple(sorted(table.items(), key=lambda kv: kv[0])))

    @classmethod
    def from_membership(cls, universe: Universe, mu: Mapping[str, Fraction],
                        points: Iterable = ()) -> "FuzzySet":
        grid = {Fraction(0), Fraction(1)} | {_ratio(v) for v in mu.values()} | {_ratio(p) for p in points}
        levels = {p: universe.set(x for x in universe if _ratio(mu.get(x, 0)) >= p) for p in grid}
        levels[Fraction(0)] = universe.full()
        return cls.of(universe, levels)

    @property
    def points(self) -> tuple[Fraction, ...]:
        return tuple(p for p, _ in self.levels)

    def level(self, a) -> ElementSet:
        a = _ratio(a)
        for p, A in self.levels:
            if p >= a:
                return A
        raise AssertionError("unreachable: the 1-level is always present")

    def membership(self, x: str) -> Fraction:
        self.universe.position(x)
        return max(p for p, A in self.levels if x in A)

    def core(self) -> ElementSet:
        return self.levels[-1][1]

    def support(self) -> ElementSet:
        return self.universe.set(x for x in self.universe if self.membership(x) > 0)

    def height(self) -> Fraction:
        if not len(self.universe):
            return Fraction(0)
        return max(self.membership(x) for x in self.universe)

    def upper_level(self, a) -> ElementSet:
        a = _ratio(a)
        return self.universe.set(x for x in self.universe if self.membership(x) >= a)

    def normalized(self) -> bool:
        return bool(self.core())

    def granules(self) -> list[ElementSet]:
        """The chain itself, used as a granulation."""
        return [A for _, A in self.levels]


def construction1(f: FuzzySet, points: Sequence | None = None) -> list[ElementSet]:
    """Successive differences of the chain sampled at ``points``, then the 1-level.

    Empty cells are dropped, so the result is always a partition.
    """
    grid = f.points if points is None else sorted({_ratio(p) for p in points})
    if not grid or grid[0] != 0 or grid[-1] != 1:
        raise DomainError("sample points must include 0 and 1")
    missing = [p for p in grid if p not in f.points]
    if missing:
        raise DomainError(f"sample points {', '.join(map(str, missing))} are not levels of the fuzzy set")
    chain = [f.level(p) for p in grid]
    cells = [A - B for A, B in zip(chain, chain[1:])] + [chain[-1]]
    return [c for c in cells if c]


def reverse_transform(cells: Sequence[ElementSet], points: Sequence) -> FuzzySet:
    """A fuzzy set whose ``construction1`` over ``points`` returns ``cells``.

    The last cell becomes the core; levels past the last cut stay equal to it.
    Needs at least as many points as cells.
    """
    grid = sorted({_ratio(p) for p in points})
    if not grid or grid[0] != 0 or grid[-1] != 1:
        raise DomainError("points must include 0 and 1")
    if not cells:
        raise DomainError("no cells given")
    universe = cells[0].universe
    _require_partition(universe, cells)
    if len(grid) < len(cells):
        raise DomainError(f"{len(cells)} cells need at least {len(cells)} points, got {len(grid)}")
    k = len(cells)
    levels = {}
    for i, p in enumerate(grid):
        levels[p] = union_all(universe, cells[min(i, k - 1):])
    return FuzzySet.of(universe, levels)


def _require_partition(universe: Universe, cells: Sequence[ElementSet]) -> None:
    seen = 0
    for c in cells:
        if c.universe is not universe and c.universe.elements != universe.elements:
            raise DomainError("cells live on different universes")
        if not c:
            raise DomainError("cells must be nonempty")
        if c.mask & seen:
            raise DomainError("cells overlap")
        seen |= c.mask
    if seen != universe.full_mask:
        raise DomainError("cells do not cover the universe")


def is_partition(universe: Universe, cells: Sequence[ElementSet]) -> bool:
    try:
        _require_partition(universe, cells)
    except DomainError:
        return False
    return True
