"""Permutation quotients of IPC counts and their partial composition.

Every permutation of the universe is a counting order; permutations that
produce the same IPC count are identified.  Two classes compose to a class
when every product of their members lands in that one class, and are
undefined otherwise.  Permutations are tuples ``x`` with ``x[i]`` the
position listed i-th; ``x * y`` applies x first, then y: ``(x*y)[i] = y[x[i]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .counting import Count, _count_order, count_preceq
from .universe import DomainError, Relation, Universe

MAX_N = 6
UNDEFINED = None

Perm = tuple


def compose(x: Perm, y: Perm) -> Perm:
    return tuple(y[i] for i in x)


@dataclass
class Cipca:
    universe: Universe
    rel: Relation
    counts: list[Count]                 # one per class
    members: list[list[Perm]]           # permutations of each class
    table: dict[tuple[int, int], int | None]
    # a pair of products in different classes for each undefined entry
    clashes: dict[tuple[int, int], tuple] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.universe)

    def class_of(self, x: Perm) -> int:
        key = tuple(_count_order(self.rel.rows, x, "IPC"))
        for i, c in enumerate(self.counts):
            if tuple(c) == key:
                return i
        raise DomainError(f"no class holds {x}")

    def op(self, a: int, b: int) -> int | None:
        return self.table[a, b]

    def density(self) -> float:
        k = len(self.counts)
        return sum(v is not None for v in self.table.values()) / (k * k) if k else 0.0

    def identity_class(self) -> int:
        return self.class_of(tuple(range(self.n)))


def build_cipca(universe: Universe, rel: Relation) -> Cipca:
    n = len(universe)
    if n > MAX_N:
        raise DomainError(f"permutation quotients are capped at {MAX_N} elements")
    if rel.universe.elements != universe.elements:
        raise DomainError("relation lives on a different universe")
    perms = list(itertools.permutations(range(n)))
    index: dict[tuple, int] = {}
    counts: list[Count] = []
    members: list[list[Perm]] = []
    cls_of: dict[Perm, int] = {}
    for x in perms:
        key = tuple(_count_order(rel.rows, x, "IPC"))
        if key not in index:
            index[key] = len(counts)
            counts.append(Count(key, "IPC"))
            members.append([])
        members[index[key]].append(x)
        cls_of[x] = index[key]
    k = len(counts)
    table: dict[tuple[int, int], int | None] = {}
    clashes = {}
    for a in range(k):
        for b in range(k):
            first = None
            for x in members[a]:
                for y in members[b]:
                    z = compose(x, y)
                    c = cls_of[z]
                    if first is None:
                        first = (c, x, y)
                    elif c != first[0]:
                        clashes[a, b] = (first[1], first[2], x, y)
                        break
                if (a, b) in clashes:
                    break
            table[a, b] = None if (a, b) in clashes else first[0]
    return Cipca(universe, rel, counts, members, table, clashes)


@dataclass
class Certificate:
    holds: bool
    classes: int
    defined: int
    products_checked: int
    problems: list[str]

    def describe(self) -> str:
        status = "well defined" if self.holds else "NOT well defined"
        out = [f"{status}: {self.classes} classes, {self.defined} defined entries, "
               f"{self.products_checked} products checked"]
        out += [f"  {p}" for p in self.problems]
        return "\n".join(out)


def certificate(cp: Cipca) -> Certificate:
    """Recheck the table independently of how it was built.

    Classes must partition the permutations by count; each defined entry must
    equal the class of every product of members; each undefined entry must
    have products in two distinct classes.
    """
    problems = []
    n = cp.n
    seen = set()
    for i, ms in enumerate(cp.members):
        if not ms:
            problems.append(f"class {i} is empty")
        for x in ms:
            if x in seen:
                problems.append(f"{x} lies in two classes")
            seen.add(x)
            if tuple(_count_order(cp.rel.rows, x, "IPC")) != tuple(cp.counts[i]):
                problems.append(f"{x} has a different count from its class")
    if len(seen) != len(list(itertools.permutations(range(n)))):
        problems.append("classes do not exhaust the permutations")
    cls_of = {x: i for i, ms in enumerate(cp.members) for x in ms}
    checked = 0
    k = len(cp.counts)
    for a in range(k):
        for b in range(k):
            found = set()
            for x in cp.members[a]:
                for y in cp.members[b]:
                    found.add(cls_of[compose(x, y)])
                    checked += 1
            entry = cp.table[a, b]
            if entry is None and len(found) == 1:
                problems.append(f"entry ({a},{b}) undefined although all products agree")
            if entry is not None and found != {entry}:
                problems.append(f"entry ({a},{b}) = {entry} but products land in {sorted(found)}")
    defined = sum(v is not None for v in cp.table.values())
    return Certificate(not problems, k, defined, checked, problems)


@dataclass
class SemilinearResult:
    holds: bool
    clause: str = ""
    witness: tuple = ()

    def describe(self) -> str:
        if self.holds:
            return "lower semi-linear"
        return f"fails {self.clause}: " + ", ".join(str(w) for w in self.witness)


def check_semilinear(items: Sequence[Hashable], leq: Callable = None) -> SemilinearResult:
    """Every principal down-set is a chain and every pair has a common lower bound."""
    if leq is None:
        leq = count_preceq
    elems = list(dict.fromkeys(items))
    below = {x: [y for y in elems if leq(y, x)] for x in elems}
    for x in elems:
        for y, z in itertools.combinations(below[x], 2):
            if not (leq(y, z) or leq(z, y)):
                return SemilinearResult(False, "down-set is not a chain", (_r(x), _r(y), _r(z)))
    for x, y in itertools.combinations(elems, 2):
        if not any(leq(z, y) for z in below[x]):
            return SemilinearResult(False, "no common lower bound", (_r(x), _r(y)))
    return SemilinearResult(True)


def _r(c):
    return c.render() if isinstance(c, Count) else c


def ipc_counts(universe: Universe, rel: Relation) -> list[Count]:
    """Distinct IPC counts over every order of the universe."""
    seen = {}
    for x in itertools.permutations(range(len(universe))):
        key = tuple(_count_order(rel.rows, x, "IPC"))
        seen.setdefault(key, Count(key, "IPC"))
    return list(seen.values())
