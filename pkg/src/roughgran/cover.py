"""Cover approximation systems and their operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .relapprox import l2_mask, lower_mask, u1_mask, u2_mask, upper_mask
from .universe import DomainError, ElementSet, Relation, Universe, bits


@dataclass(frozen=True)
class CoverSystem:
    """Named blocks K_1..K_n over a universe (K_0 = empty and K_{n+1} = S implicit)."""

    universe: Universe
    names: tuple[str, ...]
    masks: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise DomainError("block names must be unique")
        if len(self.names) != len(self.masks):
            raise DomainError("one name per block")
        full = self.universe.full_mask
        for n, m in zip(self.names, self.masks):
            if m & ~full:
                raise DomainError(f"block {n} leaves the universe")

    @classmethod
    def from_blocks(cls, universe: Universe, blocks: Iterable[tuple[str, Iterable[str]]]) -> "CoverSystem":
        names, masks = [], []
        for name, elems in blocks:
            names.append(name)
            masks.append(universe.set(elems).mask)
        return cls(universe, tuple(names), tuple(masks))

    @property
    def blocks(self) -> list[ElementSet]:
        return [ElementSet(self.universe, m) for m in self.masks]

    def block(self, name: str) -> ElementSet:
        return ElementSet(self.universe, self.masks[self.names.index(name)])

    def is_cover(self) -> bool:
        u = 0
        for m in self.masks:
            u |= m
        return u == self.universe.full_mask

    def containing(self, i: int) -> list[int]:
        return [k for k, m in enumerate(self.masks) if m >> i & 1]

    def _pos(self, x: str) -> int:
        i = self.universe.position(x)
        if not self.containing(i):
            raise DomainError(f"element {x!r} lies in no block")
        return i

    def without(self, drop: Iterable[str]) -> "CoverSystem":
        drop = set(drop)
        keep = [(n, m) for n, m in zip(self.names, self.masks) if n not in drop]
        return CoverSystem(self.universe, tuple(n for n, _ in keep), tuple(m for _, m in keep))


# element-level granules ------------------------------------------------------

def _nbd_mask(cs: CoverSystem, i: int) -> int:
    m = cs.universe.full_mask
    for k in cs.containing(i):
        m &= cs.masks[k]
    return m


def _fr_mask(cs: CoverSystem, i: int) -> int:
    m = 0
    for k in cs.containing(i):
        m |= cs.masks[k]
    return m


def _md(cs: CoverSystem, i: int) -> list[int]:
    own = cs.containing(i)
    out = []
    for a in own:
        ma = cs.masks[a]
        if not any(cs.masks[b] != ma and cs.masks[b] & ~ma == 0 for b in own):
            out.append(a)
    return out


def nbd(cs: CoverSystem, x: str) -> ElementSet:
    return ElementSet(cs.universe, _nbd_mask(cs, cs._pos(x)))


def friends(cs: CoverSystem, x: str) -> ElementSet:
    return ElementSet(cs.universe, _fr_mask(cs, cs._pos(x)))


def minimal_description(cs: CoverSystem, x: str) -> list[str]:
    """Blocks containing x with no strictly smaller block containing x."""
    return [cs.names[k] for k in _md(cs, cs._pos(x))]


def reducible_blocks(cs: CoverSystem) -> list[str]:
    """Blocks belonging to no element's minimal description.

    A block repeating an earlier block's members is redundant and counts as
    reducible; only the first copy can stand in a minimal description.
    """
    used = set()
    for i in range(len(cs.universe)):
        used.update(_md(cs, i))
    first = {}
    for k, m in enumerate(cs.masks):
        first.setdefault(m, k)
    return [n for k, n in enumerate(cs.names)
            if k not in used or first[cs.masks[k]] != k]


def covering_reduct(cs: CoverSystem, iterate: bool = False) -> CoverSystem:
    """Drop all reducible blocks at once; optionally repeat to a fixpoint."""
    if not cs.is_cover():
        raise DomainError("covering reduct needs a cover")
    out = cs.without(reducible_blocks(cs))
    while iterate:
        nxt = out.without(reducible_blocks(out))
        if nxt.names == out.names:
            break
        out = nxt
    return out


# AUAI operators --------------------------------------------------------------

AUAI_KINDS = ("l1", "l2", "u1", "u2")


def auai_mask(cs: CoverSystem, x: int, kind: str) -> int:
    full = cs.universe.full_mask
    if kind == "l1":
        # the virtual block K_{n+1} = S fits inside S only
        return full if x == full else lower_mask(cs.masks, x)
    if kind == "l2":
        return l2_mask(full, cs.masks, x)
    if kind == "u1":
        return u1_mask(full, cs.masks, x)
    if kind == "u2":
        # the complement of the virtual block K_{n+1} = S is empty, so u2 of {} is {}
        return u2_mask(full, cs.masks, x) if x else 0
    raise ValueError(f"unknown AUAI approximation {kind!r}")


def auai(cs: CoverSystem, X: ElementSet, kind: str) -> ElementSet:
    return ElementSet(cs.universe, auai_mask(cs, X.mask, kind))


def _union_closure(masks: Sequence[int], full: int) -> set[int]:
    """Every union of a subfamily of blocks, S included (empty union = empty set)."""
    have = {0, full}
    for m in masks:
        have |= {h | m for h in have}
    return have


def _intersection_closure(masks: Sequence[int], full: int) -> set[int]:
    have = {full, 0}
    for m in masks:
        have |= {h & m for h in have}
    return have


def _minimal(sets: Iterable[int]) -> list[int]:
    sets = sorted(set(sets), key=lambda m: (bin(m).count("1"), tuple(bits(m))))
    out = []
    for s in sets:
        if not any(t & ~s == 0 for t in out):
            out.append(s)
    return out


def _maximal(sets: Iterable[int]) -> list[int]:
    sets = sorted(set(sets), key=lambda m: (-bin(m).count("1"), tuple(bits(m))))
    out = []
    for s in sets:
        if not any(s & ~t == 0 for t in out):
            out.append(s)
    return out


def min_union_components(cs: CoverSystem, X: ElementSet) -> list[ElementSet]:
    """Inclusion-minimal unions of blocks that contain X."""
    full = cs.universe.full_mask
    covering = [u for u in _union_closure(cs.masks, full) if X.mask & ~u == 0]
    return [ElementSet(cs.universe, m) for m in _minimal(covering)]


def max_intersection_components(cs: CoverSystem, X: ElementSet) -> list[ElementSet]:
    """Inclusion-maximal intersections of block complements inside X."""
    full = cs.universe.full_mask
    comps = [full & ~m for m in cs.masks]
    inside = [c for c in _intersection_closure(comps, full) if c & ~X.mask == 0]
    return [ElementSet(cs.universe, m) for m in _maximal(inside)]


# the "+" family and neighbourhood operators ----------------------------------------

UPLUS_KINDS = ("u1+", "u2+", "u3+", "u4+", "u5+")


def _md_union(cs: CoverSystem, i: int) -> int:
    m = 0
    for k in _md(cs, i):
        m |= cs.masks[k]
    return m


def _require_cover(cs: CoverSystem):
    if not cs.is_cover():
        uncovered = [cs.universe.elements[i] for i in range(len(cs.universe)) if not cs.containing(i)]
        raise DomainError(f"element {uncovered[0]!r} lies in no block")


def uplus_mask(cs: CoverSystem, x: int, kind: str) -> int:
    l1 = lower_mask(cs.masks, x)
    if kind == "u2+":
        return upper_mask(cs.masks, x)
    if kind in ("u1+", "u3+", "u5+"):
        _require_cover(cs)
    if kind == "u1+":
        out = l1
        for i in bits(x):
            out |= _md_union(cs, i)
        return out
    if kind == "u3+":
        out = 0
        for i in bits(x):
            out |= _md_union(cs, i)
        return out
    if kind == "u4+":
        return l1 | upper_mask(cs.masks, x & ~l1)
    if kind == "u5+":
        out = l1
        for i in bits(x & ~l1):
            out |= _nbd_mask(cs, i)
        return out
    raise ValueError(f"unknown approximation {kind!r}")


def uplus(cs: CoverSystem, X: ElementSet, kind: str) -> ElementSet:
    return ElementSet(cs.universe, uplus_mask(cs, X.mask, kind))


def nbd_pair_mask(cs: CoverSystem, x: int, dir: str) -> int:
    _require_cover(cs)
    out = 0
    for i in range(len(cs.universe)):
        n = _nbd_mask(cs, i)
        if dir == "l6+":
            ok = n & ~x == 0
        elif dir == "u6+":
            ok = bool(n & x)
        else:
            raise ValueError(f"unknown neighbourhood approximation {dir!r}")
        if ok:
            out |= 1 << i
    return out


def nbd_pair(cs: CoverSystem, X: ElementSet, dir: str) -> ElementSet:
    return ElementSet(cs.universe, nbd_pair_mask(cs, X.mask, dir))


# pi(K) and the P/C operator family -------------------------------------------------

def pi_cover_masks(cs: CoverSystem) -> list[int]:
    groups: dict[tuple, int] = {}
    for i in range(len(cs.universe)):
        sig = tuple(cs.containing(i))
        groups[sig] = groups.get(sig, 0) | 1 << i
    return sorted(groups.values(), key=lambda m: tuple(bits(m)))


def pi_cover(cs: CoverSystem) -> list[ElementSet]:
    """The partition into blocks of equal block-membership signature."""
    return [ElementSet(cs.universe, m) for m in pi_cover_masks(cs)]


LP_LM_KINDS = tuple(f"{p}{i}" for p in ("lp", "up") for i in range(1, 5)) + \
    tuple(f"{p}{i}" for p in ("lm", "um") for i in range(1, 6))


def lp_lm_mask(cs: CoverSystem, x: int, kind: str) -> int:
    n = len(cs.universe)
    full = cs.universe.full_mask
    if kind in ("lp3", "lm1"):
        return lower_mask(cs.masks, x)
    if kind == "up1":
        return upper_mask(cs.masks, x)
    if kind == "um1":
        return u2_mask(full, cs.masks, x)
    if kind == "up3":
        out = 0
        for i in range(n):
            if all(cs.masks[k] & x for k in cs.containing(i)):
                out |= 1 << i
        return out
    _require_cover(cs)
    if kind in ("lp4", "up4"):
        parts = pi_cover_masks(cs)
        return (lower_mask if kind == "lp4" else upper_mask)(parts, x)
    if kind in ("lm2",):
        return nbd_pair_mask(cs, x, "l6+")
    if kind in ("um2", "um4"):
        return nbd_pair_mask(cs, x, "u6+")
    fr = [_fr_mask(cs, i) for i in range(n)]
    nb = [_nbd_mask(cs, i) for i in range(n)]
    out = 0
    for i in range(n):
        if kind == "lp1":
            ok = fr[i] & ~x == 0
        elif kind == "lp2":
            ok = any(fr[y] & ~x == 0 for y in range(n) if fr[y] >> i & 1)
        elif kind == "up2":
            ok = all(fr[y] & x for y in range(n) if fr[y] >> i & 1)
        elif kind == "lm3":
            ok = any(nb[u] & ~x == 0 for u in bits(nb[i]))
        elif kind == "um3":
            ok = all(nb[u] & x for u in bits(nb[i]))
        elif kind == "lm4":
            ok = all(nb[u] & ~x == 0 for u in range(n) if nb[u] >> i & 1)
        elif kind == "lm5":
            ok = all(x >> u & 1 for u in range(n) if nb[u] >> i & 1)
        elif kind == "um5":
            ok = any(nb[y] >> i & 1 for y in bits(x))
        else:
            raise ValueError(f"unknown approximation {kind!r}")
        if ok:
            out |= 1 << i
    return out


def lp_lm(cs: CoverSystem, X: ElementSet, kind: str) -> ElementSet:
    return ElementSet(cs.universe, lp_lm_mask(cs, X.mask, kind))


# relation <-> cover ------------------------------------------------------------------

def cover_from_relation(rel: Relation) -> CoverSystem:
    """Blocks are the distinct relateds-sets n(x); needs every element covered."""
    w = rel.violation("antiserial")
    if w is not None:
        raise DomainError(f"relation is not antiserial: {w[0]!r} is related from nothing")
    names, masks = [], []
    els = rel.universe.elements
    for i, r in enumerate(rel.rows):
        if r and r not in masks:
            names.append(f"n({els[i]})")
            masks.append(r)
    return CoverSystem(rel.universe, tuple(names), tuple(masks))


def relation_from_neighbourhoods(cs: CoverSystem) -> Relation:
    _require_cover(cs)
    return Relation(cs.universe, tuple(_nbd_mask(cs, i) for i in range(len(cs.universe))))


# the AUAI law suite -------------------------------------------------------------------

def auai_law_violations(cs: CoverSystem, X: ElementSet, Y: ElementSet) -> list[str]:
    """Names of the AUAI laws that fail for (cs, X, Y); empty when all hold.

    Items are numbered i..xv in the usual order of the AUAI law list.
    """
    full = cs.universe.full_mask
    x, y = X.mask, Y.mask

    def op(kind, m):
        return auai_mask(cs, m, kind)

    def sub(a, b):
        return a & ~b == 0

    fails = []
    K = cs.masks
    covers = cs.is_cover()
    inter = full
    for m in K:
        inter &= m
    disjoint = all(a & b == 0 for i, a in enumerate(K) for b in K[i + 1:])
    l1x, l2x, u1x, u2x = (op(k, x) for k in AUAI_KINDS)
    l1y, l2y, u1y, u2y = (op(k, y) for k in AUAI_KINDS)
    cx = full & ~x
    checks = {
        "i": sub(l1x, x) and sub(x, u1x) and sub(l2x, x) and sub(x, u2x)
        and op("l1", 0) == 0 and op("l2", 0) == 0,
        "ii": (not covers) or (op("u1", full) == full and op("u2", full) == full
                               and op("u2", 0) == 0 and op("l1", full) == full),
        "iii": inter != 0 or (op("u1", 0) == 0 and op("l2", full) == full),
        "iv": sub(op("l1", x & y), l1x & l1y) and op("l2", x & y) == l2x & l2y,
        "v": op("u1", x | y) == u1x | u1y and sub(u2x | u2y, op("u2", x | y)),
        "vi": (not sub(x, y)) or (sub(l1x, l1y) and sub(l2x, l2y)
                                  and sub(u1x, u1y) and sub(u2x, u2y)),
        "vii": (not disjoint) or (op("l1", x & y) == l1x & l1y
                                  and op("u2", x | y) == u2x | u2y),
        "viii": sub(l1x | l1y, op("l1", x | y)) and sub(l2x | l2y, op("l2", x | y)),
        "ix": sub(op("u1", x & y), u1x & u1y) and sub(op("u2", x & y), u2x & u2y),
        "x": op("l1", cx) == full & ~u2x and op("l2", cx) == full & ~u1x,
        "xi": op("u1", cx) == full & ~l2x and op("u2", cx) == full & ~l1x,
        "xii": op("l1", l1x) == l1x and op("l2", l2x) == l2x and op("u1", u1x) == u1x,
        "xiii": op("u2", u2x) == u2x and op("u1", l1x) == l1x and op("l2", u2x) == u2x,
        "xiv": sub(l2x, op("u2", l2x)) and sub(op("l1", u1x), u1x),
        "xv": all(op("u2", c.mask) == c.mask for c in max_intersection_components(cs, X))
        and all(op("l1", c.mask) == c.mask for c in min_union_components(cs, X)),
    }
    for name, ok in checks.items():
        if not ok:
            fails.append(name)
    return fails
