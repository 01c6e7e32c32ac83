"""Property suites for the rough-natural algebras.

Each law is checked exhaustively over every pattern up to a small length
and then on random instances up to a larger one.  Random instances for
laws with premises are built so that the premises hold (for example
``b = a ⊕ z`` for ``a ≤⊕ b``), otherwise such laws would be tested
vacuously.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .roughnat import (
    ONE, ZERO, RoughNatural, all_naturals, natural, odot, ominus, oplus, order,
    otimes, random_natural, reach_order, sub_order, survivors,
)

SUITES = ("RIPCNA", "RIPCA", "FORIPCA")


@dataclass
class ItemResult:
    name: str
    holds: bool
    checked: int = 0
    witness: tuple | None = None
    note: str = ""

    def describe(self) -> str:
        status = "pass" if self.holds else "FAIL"
        line = f"{status}  {self.name}  ({self.checked} instances)"
        if self.witness is not None:
            line += "  witness: " + ", ".join(_show(w) for w in self.witness)
        if self.note:
            line += f"  [{self.note}]"
        return line


def _show(w) -> str:
    if isinstance(w, RoughNatural):
        return f"<{w.render()}>"
    return str(w)


# cached arithmetic keeps the exhaustive loops cheap
_oplus = lru_cache(maxsize=1 << 16)(oplus)
_odot = lru_cache(maxsize=1 << 16)(odot)
_otimes = lru_cache(maxsize=1 << 16)(otimes)
_sub = lru_cache(maxsize=1 << 18)(sub_order)


@lru_cache(maxsize=1 << 16)
def _minus(x, y, variant="plain"):
    return ominus(x, y, variant)


def _leq_len(x, y):
    return x.nu <= y.nu


@dataclass
class Law:
    name: str
    arity: int
    test: Callable[..., bool]
    # optional constructor of premise-satisfying random instances
    build: Callable[[random.Random, int], tuple] | None = None
    # optional premise on pairs (positions 0,1 and 2,3) to prune exhaustive runs
    pair_premise: Callable | None = None
    note: str = ""

    def instances(self, universe: list) -> Iterator[tuple]:
        if self.pair_premise is not None and self.arity in (2, 4):
            pairs = [(a, b) for a in universe for b in universe if self.pair_premise(a, b)]
            if self.arity == 2:
                yield from pairs
            else:
                for (a, b), (c, e) in itertools.product(pairs, repeat=2):
                    yield (a, b, c, e)
        else:
            yield from itertools.product(universe, repeat=self.arity)


def run_law(law: Law, exhaustive_len: int = 5, samples: int = 10_000,
            max_len: int = 8, seed: int = 0) -> ItemResult:
    checked = 0
    for args in law.instances(all_naturals(exhaustive_len)):
        checked += 1
        if not law.test(*args):
            return ItemResult(law.name, False, checked, args, law.note)
    rng = random.Random(seed)
    for i in range(samples):
        if law.build is not None and i % 2 == 0:
            args = law.build(rng, max_len)
        else:
            args = tuple(random_natural(rng, max_len) for _ in range(law.arity))
        checked += 1
        if not law.test(*args):
            return ItemResult(law.name, False, checked, args, law.note)
    return ItemResult(law.name, True, checked, None, law.note)


# building blocks for premise-satisfying instances -----------------------------------

def _rand(rng, n):
    return random_natural(rng, n)


def _split(rng, n):
    """A pair a ≤⊕ b with b of length at most n."""
    a = random_natural(rng, max(1, n // 2))
    z = random_natural(rng, max(1, n - a.nu))
    b = _oplus(a, z) if rng.random() < 0.5 else _oplus(z, a)
    return a, b


def _remove_some(rng, y):
    """A random element obtained from y by legal removals."""
    from .roughnat import _remove_at
    x = y
    for _ in range(rng.randint(0, y.nu)):
        if x.nu == 0:
            break
        ks = [k for k in range(1, x.nu + 1) if _remove_at(x, k) is not None]
        x = _remove_at(x, rng.choice(ks))
    return x


def _multiple(rng, n):
    """A pair a ≤⊙ b with b of length at most n."""
    a = random_natural(rng, max(1, n // 2), p_zero=0)
    m = rng.randint(1, max(1, n // a.nu))
    return a, _odot(a, m)


# RIPCNA ---------------------------------------------------------------------------

def ripcna_laws() -> list[Law]:
    def zeta3(rng, n):
        return tuple(natural(rng.randint(0, n)) for _ in range(3))

    def sum_pair(rng, n):
        x, y = _rand(rng, n), _rand(rng, n)
        return x, y, _oplus(x, y)

    return [
        Law("1 sum associative", 3,
            lambda x, y, z: _oplus(_oplus(x, y), z) == _oplus(x, _oplus(y, z))),
        Law("2 zero is a two-sided unit", 1, lambda x: _oplus(x, ZERO) == x == _oplus(ZERO, x)),
        Law("3 doubling is copying twice", 1, lambda x: _oplus(x, x) == _odot(x, 2)),
        Law("4 left cancellation", 3,
            lambda x, y, z: _oplus(x, y) != _oplus(x, z) or y == z,
            build=lambda rng, n: (_rand(rng, n),) + (lambda y: (y, y))(_rand(rng, n))),
        Law("5 right cancellation", 3,
            lambda x, y, z: _oplus(x, z) != _oplus(y, z) or x == y,
            build=lambda rng, n: (lambda x: (x, x))(_rand(rng, n)) + (_rand(rng, n),)),
        Law("6 copy product associative", 3,
            lambda x, y, z: _odot(x, _odot(y, z)) == _odot(_odot(x, y), z)),
        Law("7 copy product cancellation (nonzero right factor)", 3,
            lambda x, y, z: y.nu == 0 or _odot(x, y) != _odot(z, y) or x == z,
            note="needs y nonzero: x.0 = 0 for every x"),
        Law("8 one is a right unit; x - x = 0", 1,
            lambda x: _odot(x, ONE) == x and _minus(x, x) == ZERO),
        Law("9 left distributivity", 3,
            lambda x, y, z: _odot(x, _oplus(y, z)) == _oplus(_odot(x, y), _odot(x, z))),
        Law("10 copy-idempotents are 0 and 1", 1,
            lambda x: _odot(x, x) != x or x in (ZERO, ONE)),
        Law("11 products respect equality", 3,
            lambda x, y, z: x != y or _odot(x, z) == _odot(y, z)),
        Law("12 subtraction undoes the sum", 3,
            lambda x, y, z: _oplus(x, y) != z or _minus(z, y) == x,
            build=sum_pair),
        Law("13 naturals commute", 2,
            lambda x, y: not (x.zeta and y.zeta)
            or (_oplus(x, y) == _oplus(y, x) and _odot(x, y) == _odot(y, x)),
            build=lambda rng, n: (natural(rng.randint(0, n)), natural(rng.randint(0, n)))),
        Law("14 right distributivity over naturals", 3,
            lambda x, y, z: not (x.zeta and y.zeta and z.zeta)
            or _odot(_oplus(x, y), z) == _oplus(_odot(x, z), _odot(y, z)),
            build=zeta3),
        Law("15 right distributivity with natural summands", 3,
            lambda x, y, z: not (x.zeta and y.zeta)
            or _odot(_oplus(x, y), z) == _oplus(_odot(x, z), _odot(y, z)),
            build=lambda rng, n: (natural(rng.randint(0, n)), natural(rng.randint(0, n)), _rand(rng, n))),
    ]


def zeta_fragment(limit: int = 50) -> list[ItemResult]:
    """Compare the natural-number fragment with machine integers."""
    out = []
    checked = 0
    bad = None
    for a in range(limit + 1):
        for b in range(limit + 1):
            x, y = natural(a), natural(b)
            checked += 1
            s, p = oplus(x, y), odot(x, y)
            d = ominus(x, y)
            want_d = natural(a - b) if a >= b else None
            if not (s.zeta and p.zeta and s == natural(a + b) and p == natural(a * b) and d == want_d):
                bad = (a, b)
                break
        if bad:
            break
    out.append(ItemResult("naturals agree with integer + x and - where defined", bad is None,
                          checked, bad))
    zero_div = next(((a, b) for a in range(1, limit + 1) for b in range(1, limit + 1)
                     if odot(natural(a), natural(b)) == ZERO), None)
    out.append(ItemResult("naturals have no zero divisors", zero_div is None,
                          limit * limit, zero_div))
    inverse = next((a for a in range(1, limit + 1)
                    if not any(oplus(natural(a), natural(b)) == ZERO for b in range(limit + 1))), None)
    out.append(ItemResult("every natural has an additive inverse", inverse is None,
                          limit, None if inverse is None else (inverse,),
                          "ring reading: only nonnegative counts exist"))
    return out


# RIPCA: the substitution product ------------------------------------------------------

def ripca_laws() -> list[Law]:
    return [
        Law("1 substitution product associative up to length", 3,
            lambda a, b, c: _leq_len(_otimes(_otimes(a, b), c), _otimes(a, _otimes(b, c)))),
        Law("1' substitution product associative exactly", 3,
            lambda a, b, c: _otimes(_otimes(a, b), c) == _otimes(a, _otimes(b, c)),
            note="stronger than the length inequality"),
        Law("2 associative when the middle factor is natural", 3,
            lambda a, b, c: not b.zeta or _otimes(_otimes(a, b), c) == _otimes(a, _otimes(b, c)),
            build=lambda rng, n: (_rand(rng, n), natural(rng.randint(0, n)), _rand(rng, n))),
        Law("3 products agree iff self-removal with both flanks discernible", 2,
            lambda a, b: a.nu == 0 or ((_otimes(a, b) == _odot(a, b)) == (_minus(b, b, "12") == ZERO))),
        Law("reduction to copies by survivor count", 2,
            lambda a, b: _otimes(a, b) == _odot(a, survivors(b))),
    ]


# FORIPCA: orders ---------------------------------------------------------------------

def _leq_oplus(a, b):
    return order(a, b, "≤⊕")


def _leq_odot(a, b):
    return order(a, b, "≤⊙")


def implication_laws() -> list[Law]:
    return [
        Law("1 copy-divisibility implies sum-divisibility", 2,
            lambda x, y: not _leq_odot(x, y) or _leq_oplus(x, y),
            build=_multiple, pair_premise=_leq_odot),
        Law("2 sum-divisibility implies removal order", 2,
            lambda x, y: not _leq_oplus(x, y) or _sub(x, y),
            build=_split, pair_premise=_leq_oplus),
        Law("3 naturals are length-comparable", 2,
            lambda x, y: not (x.zeta and y.zeta) or _leq_len(x, y) or _leq_len(y, x)),
        Law("4 natural order implies length order", 2,
            lambda x, y: not order(x, y, "≤p") or _leq_len(x, y)),
        Law("5 substitution and copy divisibility coincide", 2,
            lambda x, y: order(x, y, "≤⊗") == _leq_odot(x, y), build=_multiple),
    ]


def independence_search(max_len: int = 5) -> list[ItemResult]:
    """Both halves of the claim that sum-divisibility and reachability are independent."""
    elems = all_naturals(max_len)
    a = next(((x, y) for x in elems for y in elems
              if _leq_oplus(x, y) and not reach_order(x, y)), None)
    b = next(((x, y) for x in elems for y in elems
              if reach_order(x, y) and not _leq_oplus(x, y)), None)
    n = len(elems) ** 2
    return [
        ItemResult("6a some sum-divisible pair is not reachable", a is not None, n, a,
                   "fresh junctions make every sum-divisor removable"),
        ItemResult("6b some reachable pair is not sum-divisible", b is not None, n, b),
    ]


def compatibility_laws() -> list[Law]:
    def sub_pair(rng, n):
        y = _rand(rng, n)
        return _remove_some(rng, y), y

    def two(gen):
        return lambda rng, n: gen(rng, n) + gen(rng, n)

    def item4(a, b):
        if not (_leq_oplus(a, b) and _sub(a, b)):
            return True
        r = _minus(b, a, "1v2")
        return r is None or _sub(r, b)

    return [
        Law("1 length order respects sums and copy products", 4,
            lambda a, b, c, e: not (_leq_len(a, b) and _leq_len(c, e))
            or (_leq_len(_oplus(c, a), _oplus(e, b)) and _leq_len(_odot(a, c), _odot(b, e))),
            pair_premise=_leq_len),
        Law("2 sum-divisibility gives length order on sums", 4,
            lambda a, b, c, e: not (_leq_oplus(a, b) and _leq_oplus(c, e))
            or _leq_len(_oplus(a, c), _oplus(b, e)),
            build=two(_split), pair_premise=_leq_oplus),
        Law("3 sum-divisibility survives adding a common summand", 3,
            lambda a, b, c: not _leq_oplus(a, b)
            or _leq_oplus(_oplus(c, a), _oplus(c, b)) or _leq_oplus(_oplus(a, c), _oplus(b, c)),
            build=lambda rng, n: _split(rng, n) + (_rand(rng, n),)),
        Law("4 right subtraction of a removable divisor stays below", 2, item4,
            build=_split, note="vacuous where the subtraction is undefined"),
        Law("5 copy-divisibility is respected by copy products", 4,
            lambda a, b, c, e: not (_leq_odot(a, b) and _leq_odot(c, e))
            or (_leq_len(_odot(a, c), _odot(b, e)) and _sub(_odot(a, c), _odot(b, e))),
            build=two(_multiple), pair_premise=_leq_odot),
        Law("6 removal order respects sums and copy products", 4,
            lambda a, b, c, e: not (_sub(a, b) and _sub(c, e))
            or (_sub(_oplus(a, c), _oplus(b, e)) and _sub(_odot(a, c), _odot(b, e))),
            build=two(sub_pair), pair_premise=_sub),
    ]


def quasi_order_items(max_len: int = 4) -> list[ItemResult]:
    elems = all_naturals(max_len)
    out = []

    refl = all(x.nu <= x.nu for x in elems)
    trans = all(not (x.nu <= y.nu <= z.nu) or x.nu <= z.nu
                for x, y, z in itertools.product(elems, repeat=3))
    anti = next(((x, y) for x in elems for y in elems
                 if x != y and x.nu == y.nu), None)
    out.append(ItemResult("length order is a quasi order", refl and trans,
                          len(elems) ** 3))
    out.append(ItemResult("length order is not antisymmetric", anti is not None,
                          len(elems) ** 2, anti))
    nats = [natural(k) for k in range(51)]
    agree = all((x.nu <= y.nu) == (i <= j) for i, x in enumerate(nats) for j, y in enumerate(nats))
    out.append(ItemResult("length order on naturals is the usual order", agree, 51 * 51))

    small = all_naturals(min(max_len, 4))
    table = {(x, y): reach_order(x, y) for x in small for y in small}
    refl = all(table[x, x] for x in small)
    bad = next(((x, y, z) for x, y, z in itertools.product(small, repeat=3)
                if table[x, y] and table[y, z] and not table[x, z]), None)
    out.append(ItemResult("reachability is a quasi order", refl and bad is None,
                          len(small) ** 3, bad))
    nz = [natural(k) for k in range(1, max_len + 1)]
    miss = next(((x, y) for x in nz for y in nz if not reach_order(x, y)), None)
    out.append(ItemResult("nonzero naturals are mutually reachable", miss is None,
                          len(nz) ** 2, miss, "swaps and removals never lengthen a string"))
    return out


def negation_search(max_len: int = 4) -> ItemResult:
    """No unary map n has x ⊕ n(x) = 0 for every x: look for an x with no partner."""
    elems = all_naturals(max_len)
    lonely = next((x for x in elems if not any(oplus(x, y) == ZERO for y in elems)), None)
    return ItemResult("no additive negation exists", lonely is not None, len(elems) ** 2,
                      None if lonely is None else (lonely,))


def noncommutativity_witness(max_len: int = 3) -> ItemResult:
    elems = all_naturals(max_len)
    w = next(((x, y) for x in elems for y in elems if oplus(x, y) != oplus(y, x)), None)
    return ItemResult("sum is not commutative in general", w is not None, len(elems) ** 2, w)


# entry point ---------------------------------------------------------------------------

def algebra_suite(kind: str, samples: int = 10_000, exhaustive_len: int = 5,
                  max_len: int = 8, seed: int = 0) -> list[ItemResult]:
    kind = kind.upper()
    if kind not in SUITES:
        raise ValueError(f"unknown suite {kind!r}; choose from {', '.join(SUITES)}")

    def run(laws, prefix):
        out = []
        for i, law in enumerate(laws):
            r = run_law(law, exhaustive_len, samples, max_len, seed + i)
            r.name = f"{prefix} {r.name}"
            out.append(r)
        return out

    if kind == "RIPCNA":
        res = run(ripcna_laws(), "sum/copy")
        res += zeta_fragment()
        res.append(noncommutativity_witness())
        return res
    if kind == "RIPCA":
        return run(ripca_laws(), "substitution")
    res = run(implication_laws(), "implication")
    res += independence_search()
    res += run(compatibility_laws(), "compatibility")
    res += quasi_order_items()
    res.append(negation_search())
    return res


def format_report(results: list[ItemResult]) -> str:
    return "\n".join(r.describe() for r in results)
