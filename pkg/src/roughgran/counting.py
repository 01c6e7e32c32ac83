"""Dialectical counting of sequences under an indiscernibility relation.

Four procedures are provided.  IPC and HPC give typed numerals r_j whose
type j rises each time the count restarts at 1; HPPC and IPPC give plain
numerals or the undefined mark ``*``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .universe import DomainError, ElementSet, Relation, Universe, bits, class_masks

SCHEMES = ("IPC", "HPC", "HPPC", "IPPC")


@dataclass(frozen=True)
class Token:
    """A typed numeral ``value_type``; ``value is None`` marks ``*``."""

    value: int | None
    type: int = 1

    @property
    def star(self) -> bool:
        return self.value is None

    def render(self, typed: bool = True) -> str:
        if self.value is None:
            return "*"
        return f"{self.value}_{self.type}" if typed else str(self.value)

    @classmethod
    def parse(cls, text: str) -> "Token":
        if text == "*":
            return cls(None)
        if "_" in text:
            v, t = text.split("_")
            return cls(int(v), int(t))
        return cls(int(text), 1)


STAR = Token(None)


@dataclass(frozen=True)
class Count:
    tokens: tuple[Token, ...]
    scheme: str = "IPC"

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def render(self, typed: bool | None = None) -> str:
        if typed is None:
            typed = self.scheme in ("IPC", "HPC")
        return " ".join(t.render(typed) for t in self.tokens)

    __str__ = render

    @classmethod
    def parse(cls, text: str, scheme: str = "IPC") -> "Count":
        return cls(tuple(Token.parse(t) for t in text.split()), scheme)

    def values(self) -> list[int | None]:
        return [t.value for t in self.tokens]


@dataclass(frozen=True)
class CountedSequence:
    universe: Universe
    order: tuple[int, ...]
    rel: Relation

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.universe))):
            raise DomainError("a counted sequence must list every element exactly once")

    @classmethod
    def of(cls, rel: Relation, names: Iterable[str]) -> "CountedSequence":
        u = rel.universe
        return cls(u, tuple(u.position(n) for n in names), rel)

    def names(self) -> list[str]:
        return [self.universe.elements[i] for i in self.order]

    def related(self, p: int, q: int) -> bool:
        """Whether the element at position ``p`` relates to the one at ``q``."""
        return bool(self.rel.rows[self.order[p]] >> self.order[q] & 1)


def _count_order(rows: Sequence[int], order: Sequence[int], scheme: str) -> list[Token]:
    out: list[Token] = []
    seen = 0
    top = 0
    for p, x in enumerate(order):
        if p == 0:
            tok = Token(1, 1)
        else:
            prev = order[p - 1]
            near = bool(rows[prev] >> x & 1)
            earlier = any(rows[order[q]] >> x & 1 for q in range(p))
            last = out[-1]
            if scheme == "IPC":
                tok = Token(1, last.type + 1) if near else Token(last.value + 1, last.type)
            elif scheme == "HPC":
                if near or earlier:
                    tok = Token(1, last.type + 1)
                else:
                    tok = Token(last.value + 1, last.type)
            elif scheme == "HPPC":
                tok = STAR if earlier else Token(top + 1)
            elif scheme == "IPPC":
                tok = STAR if near else Token(top + 1)
            else:
                raise ValueError(f"unknown counting scheme {scheme!r}")
        if tok.value is not None:
            top = max(top, tok.value)
        out.append(tok)
        seen |= 1 << x
    return out


def count(seq: CountedSequence, scheme: str) -> Count:
    scheme = scheme.upper()
    if scheme not in SCHEMES:
        raise ValueError(f"unknown counting scheme {scheme!r}")
    return Count(tuple(_count_order(seq.rel.rows, seq.order, scheme)), scheme)


def tau_eps(seq: CountedSequence, cnt: Count | None, position: int) -> tuple[int, int | None]:
    """(earliest related position, latest strictly earlier related position), 1-based."""
    n = len(seq.order)
    if not 1 <= position <= n:
        raise IndexError(f"position {position} outside 1..{n}")
    p = position - 1
    rel = [q for q in range(n) if seq.related(q, p) or q == p]
    tau = rel[0] + 1
    earlier = [q for q in rel if q < p]
    return tau, (earlier[-1] + 1 if earlier else None)


def star_free(tokens: Sequence[Token]) -> bool:
    return all(not t.star for t in tokens)


MAX_INDEX_SIZE = 9


def countability(universe: Universe, rel: Relation, scheme: str, mode: str = "exists"):
    """Whether some order yields a mark-free partial count, or the share of such orders."""
    scheme = scheme.upper()
    if scheme not in ("IPPC", "HPPC"):
        raise ValueError("countability is defined for the partial schemes IPPC and HPPC")
    n = len(universe)
    if mode not in ("exists", "index"):
        raise ValueError(f"unknown countability mode {mode!r}")
    if mode == "index" and n > MAX_INDEX_SIZE:
        raise DomainError(f"index mode enumerates n! orders; n={n} exceeds {MAX_INDEX_SIZE}")
    good = 0
    for order in itertools.permutations(range(n)):
        if star_free(_count_order(rel.rows, order, scheme)):
            if mode == "exists":
                return True
            good += 1
    if mode == "exists":
        return n == 0
    return Fraction(good, math.factorial(n))


# the order on counts -------------------------------------------------------------

def one_runs(cnt: Count | Sequence[Token]) -> list[int]:
    """Lengths of the maximal runs of value-1 tokens, left to right."""
    runs, cur = [], 0
    for t in cnt:
        if t.value == 1:
            cur += 1
        elif cur:
            runs.append(cur)
            cur = 0
    if cur:
        runs.append(cur)
    return runs


def runs_preceq(ra: Sequence[int], rb: Sequence[int]) -> bool:
    k = max(len(ra), len(rb))
    pa = list(ra) + [0] * (k - len(ra))
    pb = list(rb) + [0] * (k - len(rb))
    if any(a > b for a, b in zip(pa, pb)):
        return False
    return sum(r > 1 for r in rb) >= sum(r > 1 for r in ra)


def count_preceq(alpha: Count, beta: Count) -> bool:
    """alpha below beta: beta's 1-runs dominate pointwise and are at least as many long runs."""
    if len(alpha) != len(beta):
        raise DomainError("counts of different lengths are not comparable")
    return runs_preceq(one_runs(alpha), one_runs(beta))


def max_ipc_order(universe: Universe, rel: Relation) -> CountedSequence:
    """Each class listed contiguously; classes by least member, members in universe order."""
    order = []
    for m in class_masks(rel):
        order.extend(bits(m))
    return CountedSequence(universe, tuple(order), rel)


# recovery from counts ---------------------------------------------------------------

def granules_from_count(seq: CountedSequence, cnt: Count) -> list[ElementSet]:
    """Granules opened by the count's restart-free tokens.

    A position opens a granule when its token is not 1 (or it is the first
    position); every element joins the granule opened at its earliest
    related position.
    """
    n = len(seq.order)
    if len(cnt) != n or any(t.star for t in cnt):
        raise DomainError("recovery needs a full typed count of the sequence")
    openers = [p for p in range(n) if p == 0 or cnt[p].value != 1]
    groups = {p: 0 for p in openers}
    for q in range(n):
        tau = tau_eps(seq, cnt, q + 1)[0] - 1
        if tau not in groups:
            raise DomainError(f"position {q + 1} relates back to a non-opening position {tau + 1}")
        groups[tau] |= 1 << seq.order[q]
    for p in openers:
        if tau_eps(seq, cnt, p + 1)[0] - 1 != p:
            raise DomainError(f"opening position {p + 1} relates to an earlier element")
    return [ElementSet(seq.universe, groups[p]) for p in openers]


def definites_from_count(seq: CountedSequence, cnt: Count,
                         carrier: Iterable[ElementSet] | None = None) -> list[ElementSet]:
    """All unions of recovered granules, optionally restricted to a carrier."""
    grans = [g.mask for g in granules_from_count(seq, cnt)]
    unions = {0}
    for g in grans:
        unions |= {u | g for u in unions}
    if carrier is not None:
        present = {c.mask for c in carrier}
        unions &= present
    u = seq.universe
    return [ElementSet(u, m) for m in sorted(unions, key=lambda m: (bin(m).count("1"), tuple(bits(m))))]


def lower_from_granules(granules: Sequence[ElementSet], A: ElementSet) -> ElementSet:
    m = 0
    for g in granules:
        if g <= A:
            m |= g.mask
    return ElementSet(A.universe, m)


def upper_from_granules(granules: Sequence[ElementSet], A: ElementSet) -> ElementSet:
    m = 0
    for g in granules:
        if g.meets(A):
            m |= g.mask
    return ElementSet(A.universe, m)


def is_lower(granules: Sequence[ElementSet], A: ElementSet, B: ElementSet) -> bool:
    """Whether B is the lower approximation of A under the recovered granules."""
    return lower_from_granules(granules, A) == B


def is_upper(granules: Sequence[ElementSet], A: ElementSet, B: ElementSet) -> bool:
    return upper_from_granules(granules, A) == B


# granular words ----------------------------------------------------------------------

@dataclass(frozen=True)
class GranularCount:
    count: Count
    words: tuple[tuple[tuple[int, int], ...], ...]
    granule_names: tuple[str, ...]

    def render(self) -> str:
        parts = []
        for k, tok in enumerate(self.count):
            parts.append(tok.render())
            if k < len(self.words):
                w = self.words[k]
                letters = ",".join(f"({self.granule_names[a]},{self.granule_names[b]})" for a, b in w)
                parts.append("[" + letters + "]")
        return " ".join(parts)

    def empty_words(self) -> list[int]:
        """1-based positions p whose junction (p, p+1) has no guarantor."""
        return [k + 1 for k, w in enumerate(self.words) if not w]


def granular_hpc(seq: CountedSequence, granules: Sequence[ElementSet],
                 names: Sequence[str] | None = None) -> GranularCount:
    """HPC count with, between neighbours, the least word of guarantor granule pairs."""
    names = tuple(names) if names else tuple(f"G{i + 1}" for i in range(len(granules)))
    masks = [g.mask for g in granules]
    words = []
    for p in range(len(seq.order) - 1):
        a, b = seq.order[p], seq.order[p + 1]
        word = []
        for i, g1 in enumerate(masks):
            for j, g2 in enumerate(masks):
                if i == j:
                    continue
                if g1 >> a & 1 and g2 >> b & 1 and not g2 >> a & 1 and not g1 >> b & 1:
                    word.append((i, j))
        words.append(tuple(sorted(word)))
    return GranularCount(count(seq, "HPC"), tuple(words), names)


# rough quotient ------------------------------------------------------------------------

@dataclass(frozen=True)
class RoughQuotient:
    """Pairs (lower, upper) over all subsets, with the pairwise rough-algebra operations."""

    universe: Universe
    pairs: tuple[tuple[int, int], ...]

    def join(self, x, y):
        return (x[0] | y[0], x[1] | y[1])

    def meet(self, x, y):
        return (x[0] & y[0], x[1] & y[1])

    def neg(self, x):
        full = self.universe.full_mask
        return (full & ~x[1], full & ~x[0])

    def L(self, x):
        return (x[0], x[0])

    def render(self, x) -> str:
        u = self.universe
        return f"({ElementSet(u, x[0])}, {ElementSet(u, x[1])})"


def rough_quotient_from_granules(universe: Universe, granules: Sequence[ElementSet]) -> RoughQuotient:
    seen = set()
    for s in universe.powerset():
        seen.add((lower_from_granules(granules, s).mask, upper_from_granules(granules, s).mask))
    return RoughQuotient(universe, tuple(sorted(seen)))


def rough_quotient(universe: Universe, rel: Relation) -> RoughQuotient:
    granules = [ElementSet(universe, m) for m in class_masks(rel)]
    return rough_quotient_from_granules(universe, granules)


def rough_quotient_from_counts(universe: Universe, rel: Relation) -> RoughQuotient:
    """The same structure rebuilt only from the maximal IPC order and its count."""
    seq = max_ipc_order(universe, rel)
    return rough_quotient_from_granules(universe, granules_from_count(seq, count(seq, "IPC")))
