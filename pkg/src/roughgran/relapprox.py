"""Relation-based approximation operators and tolerance granule families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .universe import (
    DomainError,
    ElementSet,
    Relation,
    Universe,
    bits,
    class_masks,
)

SPACE_KINDS = ("equivalence", "partial-equivalence", "reflexive", "tolerance", "multiple")
FAMILY_KINDS = ("T", "B", "A", "Asigma", "TI", "classes")


@dataclass(frozen=True)
class ApproxSpace:
    universe: Universe
    rel: Relation | None
    kind: str
    rels: tuple[Relation, ...] = ()

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "multiple":
            if not self.rels:
                raise DomainError("a multiple approximation space needs at least one relation")
            for r in self.rels:
                _require(r, "equivalence")
        else:
            _require(self.rel, self.kind)

    @classmethod
    def of(cls, rel: Relation, kind: str) -> "ApproxSpace":
        return cls(rel.universe, rel, kind)

    @classmethod
    def multiple(cls, rels: Sequence[Relation]) -> "ApproxSpace":
        return cls(rels[0].universe, None, "multiple", tuple(rels))


def _require(rel: Relation, kind: str) -> None:
    laws = {
        "equivalence": ("reflexive", "symmetric", "transitive"),
        "partial-equivalence": ("symmetric", "transitive"),
        "reflexive": ("reflexive",),
        "tolerance": ("reflexive", "symmetric"),
    }[kind]
    for law in laws:
        w = rel.violation(law)
        if w is not None:
            raise DomainError(f"relation is not {kind}: {law} fails at {w}")


def _expect(space: ApproxSpace, kind: str) -> None:
    if space.kind != kind:
        raise DomainError(f"operation needs a {kind} space, got {space.kind}")


def _dir(dir: str) -> bool:
    if dir not in ("lower", "upper"):
        raise ValueError(f"direction must be 'lower' or 'upper', not {dir!r}")
    return dir == "lower"


# mask-level kernels --------------------------------------------------------

def lower_mask(granules: Sequence[int], x: int) -> int:
    out = 0
    for g in granules:
        if g & ~x == 0:
            out |= g
    return out


def upper_mask(granules: Sequence[int], x: int) -> int:
    out = 0
    for g in granules:
        if g & x:
            out |= g
    return out


def l2_mask(full: int, granules: Sequence[int], x: int) -> int:
    """Union of intersections of granule complements lying inside ``x``.

    The least such intersection containing an element e is the intersection
    of the complements of the granules missing e; e belongs to the
    approximation exactly when that set fits inside ``x``.
    """
    out = 0
    for e in bits(full):
        m = full
        for g in granules:
            if not g >> e & 1:
                m &= full & ~g
        if m & ~x == 0:
            out |= 1 << e
    return out


def u1_mask(full: int, granules: Sequence[int], x: int) -> int:
    """Intersection of all unions of granules (S included) covering ``x``."""
    out = 0
    for e in bits(full):
        without = 0
        for g in granules:
            if not g >> e & 1:
                without |= g
        if x & ~without:
            out |= 1 << e
    return out


def u2_mask(full: int, granules: Sequence[int], x: int) -> int:
    """Intersection of the granule complements that contain ``x`` (S included)."""
    out = full
    for g in granules:
        if g & x == 0:
            out &= ~g
    return out & full


# classical and variants ----------------------------------------------------

def classical(space: ApproxSpace, X: ElementSet, dir: str) -> ElementSet:
    """Union of the classes inside (lower) or meeting (upper) ``X``."""
    _expect(space, "equivalence")
    classes = class_masks(space.rel)
    f = lower_mask if _dir(dir) else upper_mask
    return ElementSet(space.universe, f(classes, X.mask))


def pseudo_classes(rel: Relation) -> list[int]:
    seen = []
    for r in rel.rows:
        if r and r not in seen:
            seen.append(r)
    return seen


def esoteric(space: ApproxSpace, X: ElementSet, dir: str) -> ElementSet:
    """Classical-style approximation over pseudo-classes of a partial equivalence."""
    _expect(space, "partial-equivalence")
    f = lower_mask if _dir(dir) else upper_mask
    return ElementSet(space.universe, f(pseudo_classes(space.rel), X.mask))


def reflexive_approx(space: ApproxSpace, X: ElementSet, dir: str) -> ElementSet:
    """Approximations from the x-relateds of members of ``X`` only."""
    _expect(space, "reflexive")
    lower = _dir(dir)
    out = 0
    for i in bits(X.mask):
        r = space.rel.rows[i]
        if lower:
            if r & ~X.mask == 0:
                out |= r
        elif r & X.mask:
            out |= r
    return ElementSet(space.universe, out)


def multi_approx(space: ApproxSpace, X: ElementSet, kind: str) -> ElementSet:
    """Strong/weak lower/upper approximations over a tuple of equivalences."""
    _expect(space, "multiple")
    u = space.universe
    per_lower = [lower_mask(class_masks(r), X.mask) for r in space.rels]
    per_upper = [upper_mask(class_masks(r), X.mask) for r in space.rels]

    def meet(ms):
        out = u.full_mask
        for m in ms:
            out &= m
        return out

    def join(ms):
        out = 0
        for m in ms:
            out |= m
        return out

    table = {
        "ls": lambda: meet(per_lower),
        "us": lambda: join(per_upper),
        "lw": lambda: join(per_lower),
        "uw": lambda: meet(per_upper),
    }
    if kind not in table:
        raise ValueError(f"unknown multiple-space approximation {kind!r}")
    return ElementSet(u, table[kind]())


def tolerance_ops(space: ApproxSpace, X: ElementSet, kind: str) -> ElementSet:
    """Tolerance approximations: lT, uT, lstar, ustar and bitten_upper.

    lT/uT use the granules [x]; uT collects every [x] meeting X.
    """
    _expect(space, "tolerance")
    u = space.universe
    rows = space.rel.rows
    full = u.full_mask
    x = X.mask
    if kind == "lT":
        m = lower_mask(rows, x)
    elif kind == "uT":
        m = upper_mask(rows, x)
    elif kind == "lstar":
        m = 0
        for i, r in enumerate(rows):
            if any(rows[j] & ~x == 0 for j in bits(r)):
                m |= 1 << i
    elif kind == "ustar":
        m = 0
        for i, r in enumerate(rows):
            if all(rows[j] & x for j in bits(r)):
                m |= 1 << i
    elif kind == "bitten_upper":
        m = upper_mask(rows, x) & ~lower_mask(rows, full & ~x)
    else:
        raise ValueError(f"unknown tolerance approximation {kind!r}")
    return ElementSet(u, m)


# granule families ----------------------------------------------------------

@dataclass(frozen=True)
class GranuleFamily:
    kind: str
    members: tuple[ElementSet, ...]

    @property
    def universe(self) -> Universe:
        return self.members[0].universe

    @property
    def masks(self) -> list[int]:
        return [g.mask for g in self.members]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def _dedup_sorted(masks) -> list[int]:
    uniq = {m for m in masks if m}
    return sorted(uniq, key=lambda m: tuple(bits(m)))


def maximal_cliques(rows: Sequence[int]) -> list[int]:
    """Bron-Kerbosch with pivoting over adjacency masks (self loops ignored)."""
    n = len(rows)
    adj = [rows[i] & ~(1 << i) for i in range(n)]
    out = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(bits(pivot_pool), key=lambda v: bin(adj[v] & p).count("1"))
        for v in list(bits(p & ~adj[pivot])):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if n:
        expand(0, (1 << n) - 1, 0)
    return out


def intersection_closure(masks: Sequence[int]) -> list[int]:
    """Fixpoint of pairwise intersection; the empty set is discarded."""
    current = {m for m in masks if m}
    frontier = set(current)
    while frontier:
        new = set()
        for a in frontier:
            for b in current:
                c = a & b
                if c and c not in current:
                    new.add(c)
        current |= new
        frontier = new
    return list(current)


def granule_family(space: ApproxSpace, kind: str) -> GranuleFamily:
    u = space.universe
    if kind == "classes":
        if space.kind != "equivalence":
            raise DomainError("class granules need an equivalence space")
        masks = class_masks(space.rel)
        return GranuleFamily(kind, tuple(ElementSet(u, m) for m in masks))
    _expect(space, "tolerance")
    rows = space.rel.rows
    if kind == "T":
        masks = rows
    elif kind == "B":
        masks = maximal_cliques(rows)
    elif kind in ("A", "Asigma"):
        masks = intersection_closure(maximal_cliques(rows))
    elif kind == "TI":
        masks = intersection_closure(rows)
    else:
        raise ValueError(f"unknown granule family {kind!r}")
    return GranuleFamily(kind, tuple(ElementSet(u, m) for m in _dedup_sorted(masks)))


def generic_granule_approx(G: GranuleFamily | Sequence[ElementSet], X: ElementSet,
                           kind: str) -> ElementSet:
    """The five granule-driven approximation schemas lG, uG, l2G, u1G, u2G."""
    masks = [g.mask for g in G]
    u = X.universe
    full = u.full_mask
    x = X.mask
    if kind == "lG":
        m = lower_mask(masks, x)
    elif kind == "uG":
        m = upper_mask(masks, x)
    elif kind == "l2G":
        m = l2_mask(full, masks, x)
    elif kind == "u1G":
        m = u1_mask(full, masks, x)
    elif kind == "u2G":
        m = u2_mask(full, masks, x)
    else:
        raise ValueError(f"unknown granule approximation {kind!r}")
    return ElementSet(u, m)
