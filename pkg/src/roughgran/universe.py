"""Finite universes, element sets and binary relations.

Sets are stored as integer bitmasks aligned to the universe order, so
every set operation is a single machine-word operation for the desk-scale
universes this package targets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Ratio = Fraction

KINDS = ("reflexive", "symmetric", "transitive")


class DomainError(ValueError):
    """A precondition on the mathematical structure is not met."""


class UnknownElementError(DomainError, KeyError):
    def __init__(self, name: str):
        super().__init__(f"unknown element {name!r}")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class Universe:
    """An ordered finite set of named elements."""

    elements: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, elements: Iterable[str]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise DomainError(f"duplicate element {dup!r}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", {e: i for i, e in enumerate(elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElementError(name) from None

    def set(self, names: Iterable[str] = ()) -> "ElementSet":
        mask = 0
        for n in names:
            mask |= 1 << self.position(n)
        return ElementSet(self, mask)

    def from_mask(self, mask: int) -> "ElementSet":
        return ElementSet(self, mask & self.full_mask)

    def empty(self) -> "ElementSet":
        return ElementSet(self, 0)

    def full(self) -> "ElementSet":
        return ElementSet(self, self.full_mask)

    def singleton(self, name: str) -> "ElementSet":
        return ElementSet(self, 1 << self.position(name))

    def powerset(self) -> Iterator["ElementSet"]:
        for m in range(1 << len(self)):
            yield ElementSet(self, m)


def bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class ElementSet:
    """A subset of a fixed universe."""

    universe: Universe
    mask: int

    def _check(self, other: "ElementSet") -> None:
        if other.universe.elements != self.universe.elements:
            raise DomainError("set operation across different universes")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.universe, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.universe, self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.universe, self.mask & ~other.mask)

    def __invert__(self) -> "ElementSet":
        return ElementSet(self.universe, self.universe.full_mask & ~self.mask)

    complement = __invert__

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "ElementSet") -> bool:
        return other <= self

    def __gt__(self, other: "ElementSet") -> bool:
        return other < self

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        els = self.universe.elements
        return (els[i] for i in bits(self.mask))

    def __contains__(self, name: object) -> bool:
        i = self.universe.index.get(name)
        return i is not None and bool(self.mask >> i & 1)

    def isdisjoint(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def meets(self, other: "ElementSet") -> bool:
        return not self.isdisjoint(other)

    def names(self) -> list[str]:
        return list(self)

    def __str__(self) -> str:
        return "{" + ",".join(self) + "}"

    def __repr__(self) -> str:
        return f"ElementSet({self})"


def union_all(universe: Universe, sets: Iterable[ElementSet]) -> ElementSet:
    m = 0
    for s in sets:
        m |= s.mask
    return ElementSet(universe, m)


def intersect_all(universe: Universe, sets: Iterable[ElementSet]) -> ElementSet:
    """Intersection of ``sets``; the empty family intersects to the universe."""
    m = universe.full_mask
    for s in sets:
        m &= s.mask
    return ElementSet(universe, m)


@dataclass(frozen=True)
class Relation:
    """A binary relation stored row-wise: ``rows[i]`` is the mask of i-relateds.

    ``flags`` maps a property name to True/False when declared; absent
    properties are unchecked.
    """

    universe: Universe
    rows: tuple[int, ...]
    flags: tuple = ()

    def __post_init__(self):
        if len(self.rows) != len(self.universe):
            raise DomainError("relation matrix does not match universe size")
        for name, declared in self.flags:
            actual = self.has(name)
            if actual != declared:
                raise DomainError(f"declared {name}={declared} but matrix says {actual}")

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> "Relation":
        rows = [0] * len(universe)
        for a, b in pairs:
            rows[universe.position(a)] |= 1 << universe.position(b)
        return cls(universe, tuple(rows))

    @classmethod
    def identity(cls, universe: Universe) -> "Relation":
        return cls(universe, tuple(1 << i for i in range(len(universe))))

    @classmethod
    def full(cls, universe: Universe) -> "Relation":
        return cls(universe, (universe.full_mask,) * len(universe))

    @classmethod
    def empty(cls, universe: Universe) -> "Relation":
        return cls(universe, (0,) * len(universe))

    @classmethod
    def from_partition(cls, universe: Universe, blocks: Iterable[Iterable[str]]) -> "Relation":
        rows = [0] * len(universe)
        for block in blocks:
            m = universe.set(block).mask
            for i in bits(m):
                rows[i] = m
        return cls(universe, tuple(rows))

    def related(self, a: str, b: str) -> bool:
        u = self.universe
        return bool(self.rows[u.position(a)] >> u.position(b) & 1)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return self.related(*pair)

    def pairs(self) -> list[tuple[str, str]]:
        els = self.universe.elements
        return [(els[i], els[j]) for i, r in enumerate(self.rows) for j in bits(r)]

    def column(self, j: int) -> int:
        return sum(1 << i for i, r in enumerate(self.rows) if r >> j & 1)

    def transpose(self) -> "Relation":
        return Relation(self.universe, tuple(self.column(j) for j in range(len(self.rows))))

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.universe, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "Relation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.universe.elements == other.universe.elements and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.universe.elements, self.rows))

    # property checks -------------------------------------------------

    def violation(self, kind: str) -> tuple[str, ...] | None:
        """A witness tuple violating ``kind``, or None if the law holds."""
        els = self.universe.elements
        rows = self.rows
        n = len(rows)
        if kind == "reflexive":
            for i in range(n):
                if not rows[i] >> i & 1:
                    return (els[i],)
        elif kind == "symmetric":
            for i in range(n):
                for j in bits(rows[i]):
                    if not rows[j] >> i & 1:
                        return (els[i], els[j])
        elif kind == "transitive":
            for i in range(n):
                for j in bits(rows[i]):
                    extra = rows[j] & ~rows[i]
                    if extra:
                        k = next(bits(extra))
                        return (els[i], els[j], els[k])
        elif kind == "partially-reflexive":
            for i in range(n):
                if rows[i] and not rows[i] >> i & 1:
                    return (els[i],)
        elif kind == "antiserial":
            covered = 0
            for r in rows:
                covered |= r
            missing = self.universe.full_mask & ~covered
            if missing:
                return (els[next(bits(missing))],)
        else:
            raise ValueError(f"unknown relation property {kind!r}")
        return None

    def has(self, kind: str) -> bool:
        return self.violation(kind) is None

    def is_tolerance(self) -> bool:
        return self.has("reflexive") and self.has("symmetric")

    def is_equivalence(self) -> bool:
        return self.is_tolerance() and self.has("transitive")

    def is_partial_equivalence(self) -> bool:
        return self.has("symmetric") and self.has("transitive")


def closure(rel: Relation, kinds: Iterable[str]) -> Relation:
    """Least relation containing ``rel`` that has every property in ``kinds``."""
    kinds = set(kinds)
    unknown = kinds - set(KINDS)
    if unknown:
        raise ValueError(f"unknown closure kind(s): {sorted(unknown)}")
    rows = list(rel.rows)
    n = len(rows)
    if "reflexive" in kinds:
        rows = [r | 1 << i for i, r in enumerate(rows)]
    if "symmetric" in kinds:
        t = Relation(rel.universe, tuple(rows)).transpose().rows
        rows = [a | b for a, b in zip(rows, t)]
    if "transitive" in kinds:
        # Warshall on row masks; symmetry and reflexivity are preserved.
        for k in range(n):
            bit = 1 << k
            rk = rows[k]
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= rk
    flags = tuple((k, True) for k in KINDS if k in kinds)
    return Relation(rel.universe, tuple(rows), flags)


def neighbourhood(rel: Relation, x: str) -> ElementSet:
    """The set ``[x] = {y : (x, y) in rel}``."""
    return ElementSet(rel.universe, rel.rows[rel.universe.position(x)])


def theta0(rel: Relation) -> Relation:
    """The equivalence identifying elements with equal ``dom_T``.

    ``dom_T(z)`` is the intersection of all T-neighbourhoods containing z.
    """
    if not rel.is_tolerance():
        law = "reflexive" if not rel.has("reflexive") else "symmetric"
        raise DomainError(f"theta0 needs a tolerance; relation is not {law} "
                          f"(witness {rel.violation(law)})")
    u = rel.universe
    n = len(u)
    dom = []
    for z in range(n):
        m = u.full_mask
        for x in range(n):
            if rel.rows[x] >> z & 1:
                m &= rel.rows[x]
        dom.append(m)
    rows = tuple(sum(1 << y for y in range(n) if dom[y] == dom[x]) for x in range(n))
    return Relation(u, rows, (("reflexive", True), ("symmetric", True), ("transitive", True)))


def require_equivalence(rel: Relation) -> None:
    for law in KINDS:
        w = rel.violation(law)
        if w is not None:
            raise DomainError(f"relation is not an equivalence: {law} fails at {w}")


def partition_classes(rel: Relation) -> list[ElementSet]:
    """Equivalence classes, ordered by their least member."""
    require_equivalence(rel)
    seen = 0
    out = []
    for i, r in enumerate(rel.rows):
        if not seen >> i & 1:
            out.append(ElementSet(rel.universe, r))
            seen |= r
    return out


def class_masks(rel: Relation) -> list[int]:
    return [c.mask for c in partition_classes(rel)]


def format_ratio(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def sets_from_masks(universe: Universe, masks: Sequence[int]) -> list[ElementSet]:
    return [ElementSet(universe, m) for m in masks]
