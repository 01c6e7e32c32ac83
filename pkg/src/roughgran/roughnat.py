"""Low-level rough naturals: IPC counts of strings of (in)discernible objects.

A rough natural is stored canonically as its predecessor pattern: one bit
per junction, ``True`` (written ``I``) when a letter is indiscernible from
its predecessor and ``False`` (``D``) otherwise.  Its length is nu.

Operations that build new strings from copies (sum, products) put every
copy in a fresh namespace, so junctions between copies are discernible.
The canonical string of a pattern uses letters 0..nu-1 where letter k is
tolerant only to k-1 and k+1 (when the bit between them is I); this keeps
all flanking questions of the swap/removal/insertion maps answerable.
"""

from __future__ import annotations

import itertools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .counting import Count, Token
from .universe import DomainError, Relation, Universe

UNDEFINED = None


@dataclass(frozen=True, order=True)
class RoughNatural:
    nu: int
    bits: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.nu < 0 or len(self.bits) != max(self.nu - 1, 0):
            raise DomainError("pattern length must be nu - 1")

    @classmethod
    def from_bits(cls, bits: Iterable[bool]) -> "RoughNatural":
        bits = tuple(bool(b) for b in bits)
        return cls(len(bits) + 1, bits)

    @classmethod
    def parse(cls, text: str) -> "RoughNatural":
        """``0``, a positive integer (all-discernible), or a D/I pattern string."""
        text = text.strip()
        if text.isdigit():
            return natural(int(text))
        if text == "-" or text == "":
            return ONE
        if not re.fullmatch(r"[DI]+", text):
            raise ValueError(f"not a rough natural literal: {text!r}")
        return cls.from_bits(c == "I" for c in text)

    @property
    def zeta(self) -> bool:
        return not any(self.bits)

    @property
    def discernible_bits(self) -> int:
        return sum(1 for b in self.bits if not b)

    def pattern(self) -> str:
        if self.nu == 0:
            return "0"
        return "".join("I" if b else "D" for b in self.bits) or "-"

    def count(self) -> Count:
        toks = []
        for k in range(self.nu):
            if k == 0:
                toks.append(Token(1, 1))
            elif self.bits[k - 1]:
                toks.append(Token(1, toks[-1].type + 1))
            else:
                toks.append(Token(toks[-1].value + 1, toks[-1].type))
        return Count(tuple(toks), "IPC")

    @classmethod
    def from_count(cls, cnt: Count) -> "RoughNatural":
        toks = list(cnt)
        if not toks:
            return ZERO
        bits = []
        for prev, cur in zip(toks, toks[1:]):
            if cur.value == 1 and cur.type == prev.type + 1:
                bits.append(True)
            elif cur.value == prev.value + 1 and cur.type == prev.type:
                bits.append(False)
            else:
                raise DomainError(f"not an IPC count: {cnt.render()}")
        return cls.from_bits(bits)

    def render(self) -> str:
        return "0" if self.nu == 0 else self.count().render()

    def __str__(self) -> str:
        return self.render()


ZERO = RoughNatural(0)
ONE = RoughNatural(1)


def natural(k: int) -> RoughNatural:
    """The all-discernible rough natural of length k (an ordinary natural)."""
    if k < 0:
        raise ValueError("naturals are nonnegative")
    return ZERO if k == 0 else RoughNatural(k, (False,) * (k - 1))


def zeta(x: RoughNatural) -> bool:
    return x.zeta


def nu(x: RoughNatural) -> int:
    return x.nu


# strings ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ToleranceAlphabet:
    """Symbols with a reflexive symmetric tolerance."""

    symbols: tuple[str, ...]
    tol: Relation

    def __post_init__(self):
        if self.tol.universe.elements != self.symbols:
            raise DomainError("tolerance must be over the alphabet symbols")
        if not self.tol.is_tolerance():
            raise DomainError("alphabet relation must be reflexive and symmetric")

    @classmethod
    def of(cls, symbols: Sequence[str], pairs: Iterable[tuple[str, str]] = ()) -> "ToleranceAlphabet":
        u = Universe(symbols)
        rows = [1 << i for i in range(len(u))]
        for a, b in pairs:
            i, j = u.position(a), u.position(b)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(tuple(symbols), Relation(u, tuple(rows)))

    def similar(self, a: str, b: str) -> bool:
        return self.tol.related(a, b)


@dataclass(frozen=True)
class RoughString:
    """Letters tagged with a namespace; letters from different namespaces are discernible."""

    alphabet: ToleranceAlphabet
    letters: tuple[tuple[int, str], ...] = ()

    @classmethod
    def of(cls, alphabet: ToleranceAlphabet, symbols: Iterable[str], ns: int = 0) -> "RoughString":
        letters = tuple((ns, s) for s in symbols)
        for _, s in letters:
            alphabet.tol.universe.position(s)
        return cls(alphabet, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def similar(self, p: int, q: int) -> bool:
        (na, a), (nb, b) = self.letters[p], self.letters[q]
        return na == nb and self.alphabet.similar(a, b)

    def top_namespace(self) -> int:
        return max((n for n, _ in self.letters), default=-1)

    def renamed(self, shift: int) -> "RoughString":
        return RoughString(self.alphabet, tuple((n + shift, s) for n, s in self.letters))

    def with_letters(self, letters) -> "RoughString":
        return RoughString(self.alphabet, tuple(letters))


def count_of(s: RoughString) -> RoughNatural:
    if not s.letters:
        return ZERO
    return RoughNatural.from_bits(s.similar(k, k + 1) for k in range(len(s) - 1))


def canonical_string(x: RoughNatural) -> RoughString:
    syms = tuple(f"s{k + 1}" for k in range(x.nu))
    pairs = [(syms[k], syms[k + 1]) for k, b in enumerate(x.bits) if b]
    return RoughString.of(ToleranceAlphabet.of(syms, pairs), syms)


def concat(s: RoughString, t: RoughString, fresh: bool = True) -> RoughString:
    """Concatenate; with ``fresh`` the second string moves to new namespaces.

    Without ``fresh`` both strings must share the alphabet and the junction
    follows the alphabet tolerance.
    """
    if fresh:
        t = t.renamed(s.top_namespace() + 1 - min((n for n, _ in t.letters), default=0))
        if s.alphabet != t.alphabet:
            # letters of different alphabets never compare, so merge alphabets
            return _merge(s, t)
    elif s.alphabet != t.alphabet:
        raise DomainError("shared-namespace concatenation needs a common alphabet")
    return s.with_letters(s.letters + t.letters)


def _merge(s: RoughString, t: RoughString) -> RoughString:
    sa, ta = s.alphabet, t.alphabet
    syms = [f"a:{x}" for x in sa.symbols] + [f"b:{x}" for x in ta.symbols]
    pairs = [(f"a:{p}", f"a:{q}") for p, q in sa.tol.pairs()]
    pairs += [(f"b:{p}", f"b:{q}") for p, q in ta.tol.pairs()]
    alpha = ToleranceAlphabet.of(syms, pairs)
    letters = [(n, f"a:{x}") for n, x in s.letters] + [(n, f"b:{x}") for n, x in t.letters]
    return RoughString(alpha, tuple(letters))


# string maps: swap, removal, insertion ---------------------------------------------

def _check_k(k: int, lo: int, hi: int, what: str):
    if not lo <= k <= hi:
        raise IndexError(f"{what} position {k} outside {lo}..{hi}")


def iota_string(s: RoughString, k: int) -> RoughString:
    _check_k(k, 1, len(s) - 1, "swap")
    if s.similar(k - 1, k):
        return s
    L = list(s.letters)
    L[k - 1], L[k] = L[k], L[k - 1]
    return s.with_letters(L)


def rho_allowed(s: RoughString, k: int) -> bool:
    n = len(s)
    right = k == n or not s.similar(k - 1, k)
    left = k == 1 or not s.similar(k - 2, k - 1)
    return right or left


def rho_string(s: RoughString, k: int) -> RoughString:
    if len(s) == 0:
        raise DomainError("nothing to remove from the empty string")
    _check_k(k, 1, len(s), "removal")
    if not rho_allowed(s, k):
        return s
    L = list(s.letters)
    del L[k - 1]
    return s.with_letters(L)


def eta_string(s: RoughString, y: RoughString, k: int) -> RoughString:
    if not len(s) or not len(y):
        raise DomainError("insertion needs nonempty strings")
    _check_k(k, 1, len(s) - 1, "insertion")
    if not s.similar(k - 1, k):
        return s
    head = s.with_letters(s.letters[:k])
    tail = s.with_letters(s.letters[k:])
    merged = concat(concat(head, y), tail)
    return merged


def iota_k(x: RoughNatural | RoughString, k: int) -> RoughNatural:
    return count_of(iota_string(_as_string(x), k))


def rho_k(x: RoughNatural | RoughString, k: int) -> RoughNatural:
    return count_of(rho_string(_as_string(x), k))


def eta_k(x: RoughNatural | RoughString, y: RoughNatural | RoughString, k: int) -> RoughNatural:
    return count_of(eta_string(_as_string(x), _as_string(y), k))


def _as_string(x) -> RoughString:
    return canonical_string(x) if isinstance(x, RoughNatural) else x


# arithmetic on patterns ------------------------------------------------------------

def oplus(x: RoughNatural, y: RoughNatural) -> RoughNatural:
    if x.nu == 0:
        return y
    if y.nu == 0:
        return x
    return RoughNatural.from_bits(x.bits + (False,) + y.bits)


def odot(x: RoughNatural, y: RoughNatural | int) -> RoughNatural:
    m = y if isinstance(y, int) else y.nu
    out = ZERO
    for _ in range(m):
        out = oplus(out, x)
    return out


def mu(x: RoughNatural, y: RoughNatural) -> list[RoughNatural]:
    return [x] * y.nu


def rev(x: RoughNatural) -> RoughNatural:
    return x if x.nu == 0 else RoughNatural(x.nu, tuple(reversed(x.bits)))


def survivors(y: RoughNatural) -> int:
    """Places of y kept by the substitution rules: the first and every discernible one."""
    return 0 if y.nu == 0 else 1 + y.discernible_bits


def otimes(x: RoughNatural, y: RoughNatural) -> RoughNatural:
    return odot(x, survivors(y))


MINUS_VARIANTS = ("plain", "1v2", "12", "1", "2")


def ominus(x: RoughNatural, y: RoughNatural, variant: str = "plain") -> RoughNatural | None:
    """Remove y's string from the right end of x's; None when not licensed.

    The removed part must be preceded by a discernible junction (or be all
    of x).  Conditional variants also demand, for every removed letter,
    discernibility from its successor (1), predecessor (2), both (12) or
    either (1v2); a missing neighbour counts as discernible.
    """
    if variant not in MINUS_VARIANTS:
        raise ValueError(f"unknown subtraction variant {variant!r}")
    if y.nu == 0:
        return x
    if y.nu > x.nu:
        return UNDEFINED
    if x.nu == y.nu:
        if x != y:
            return UNDEFINED
        rest = ZERO
    else:
        cut = x.nu - y.nu  # letters kept
        if x.bits[cut - 1] or x.bits[cut:] != y.bits:
            return UNDEFINED
        rest = RoughNatural(cut, x.bits[:cut - 1])
    if variant != "plain":
        start = x.nu - y.nu
        for p in range(start, x.nu):
            pred_d = p == 0 or not x.bits[p - 1]
            succ_d = p == x.nu - 1 or not x.bits[p]
            ok = {"1": succ_d, "2": pred_d, "12": succ_d and pred_d,
                  "1v2": succ_d or pred_d}[variant]
            if not ok:
                return UNDEFINED
    return rest


# string-level operations (used to check representative independence) ----------------

def oplus_strings(s: RoughString, t: RoughString, fresh: bool = True) -> RoughString:
    return concat(s, t, fresh)


def odot_strings(s: RoughString, t: RoughString) -> RoughString:
    out = s.with_letters(())
    for _ in range(len(t)):
        out = concat(out, s) if out.letters else s.renamed(0)
    return out


def otimes_strings(s: RoughString, t: RoughString) -> RoughString:
    out = s.with_letters(())
    for k in range(len(t)):
        if k == 0 or not t.similar(k - 1, k):
            out = concat(out, s) if out.letters else s
    return out


def rev_string(s: RoughString) -> RoughString:
    return s.with_letters(tuple(reversed(s.letters)))


def random_representative(x: RoughNatural, rng: random.Random, extra: int = 3) -> RoughString:
    """A random string over a random tolerance alphabet whose count is x."""
    if x.nu == 0:
        return RoughString(ToleranceAlphabet.of(["z"]), ())
    size = x.nu + rng.randint(0, extra)
    syms = [f"c{k}" for k in range(size)]
    rng.shuffle(syms)
    chosen = syms[:x.nu]
    pairs = set()
    for k, b in enumerate(x.bits):
        if b:
            pairs.add((chosen[k], chosen[k + 1]))
    forbidden = {frozenset((chosen[k], chosen[k + 1])) for k, b in enumerate(x.bits) if not b}
    for a, b in itertools.combinations(syms, 2):
        if frozenset((a, b)) not in forbidden and rng.random() < 0.3:
            pairs.add((a, b))
    alpha = ToleranceAlphabet.of(sorted(syms), sorted(pairs))
    return RoughString.of(alpha, chosen)


# orders ---------------------------------------------------------------------------------

ORDER_KINDS = ("⊴", "≤p", "≤⊕", "≤⊙", "≤⊗", "⊑", "≼")
ORDER_ALIASES = {"len": "⊴", "p": "≤p", "oplus": "≤⊕", "odot": "≤⊙", "otimes": "≤⊗",
                 "sub": "⊑", "reach": "≼"}
MAX_REACH = 10


def leq_oplus(x: RoughNatural, y: RoughNatural) -> bool:
    if x == y or x.nu == 0:
        return True
    if x.nu >= y.nu:
        return False
    cut = x.nu
    prefix = y.bits[:cut - 1] == x.bits and not y.bits[cut - 1]
    tail = y.nu - x.nu
    suffix = y.bits[tail:] == x.bits and not y.bits[tail - 1]
    return prefix or suffix


def leq_odot(x: RoughNatural, y: RoughNatural) -> bool:
    """Some nonzero z has x ⊙ z = y."""
    if x.nu == 0:
        return y.nu == 0
    if y.nu % x.nu:
        return False
    m = y.nu // x.nu
    return m >= 1 and odot(x, m) == y


def leq_otimes(x: RoughNatural, y: RoughNatural) -> bool:
    """Some nonzero z has x ⊗ z = y; z ranges over every survivor count >= 1."""
    return leq_odot(x, y)


@lru_cache(maxsize=None)
def _removal_closure(x: RoughNatural) -> frozenset:
    """All patterns reachable from x by removals on its canonical string."""
    seen = {x}
    stack = [x]
    while stack:
        p = stack.pop()
        for k in range(1, p.nu + 1):
            q = _remove_at(p, k)
            if q is not None and q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def _remove_at(p: RoughNatural, k: int) -> RoughNatural | None:
    n = p.nu
    right = k == n or not p.bits[k - 1]
    left = k == 1 or not p.bits[k - 2]
    if not (right or left):
        return None
    if n == 1:
        return ZERO
    b = list(p.bits)
    if k == 1:
        del b[0]
    elif k == n:
        del b[-1]
    else:
        # the new neighbours were two apart in the canonical string
        b[k - 2:k] = [False]
    return RoughNatural.from_bits(b)


def removal_closure(x: RoughNatural) -> frozenset:
    """Every pattern reachable from x by removals (exhaustive; for checking)."""
    if x.nu > MAX_REACH:
        raise DomainError(f"reachability search is capped at length {MAX_REACH}")
    return _removal_closure(x)


def sub_order(x: RoughNatural, y: RoughNatural) -> bool:
    """x is obtainable from y by removals.

    On the canonical string a letter is stuck only while both of its original
    neighbours are present and tolerant to it, so a maximal run of removed
    letters can be cleared unless it is enclosed by kept letters with every
    junction in between indiscernible.  A left-to-right sweep over kept
    positions then decides reachability exactly.
    """
    if x.nu == 0:
        return True
    if x.nu > y.nu:
        return False
    n, bits = y.nu, y.bits
    next_d = [n] * n  # first discernible junction at or after each position
    for t in range(n - 2, -1, -1):
        next_d[t] = t if not bits[t] else next_d[t + 1]
    live = set(range(n))  # possible positions of the latest kept letter
    for want in x.bits:
        nxt = set()
        if want:
            nxt = {p + 1 for p in live if p + 1 < n and bits[p]}
        else:
            lo = min((next_d[p] + 1 for p in live), default=n)
            nxt = set(range(lo, n))
        if not nxt:
            return False
        live = nxt
    return True


def _tolerant(bits: tuple, a: int, b: int) -> bool:
    lo, hi = min(a, b), max(a, b)
    return hi - lo == 1 and bits[lo]


def reach_order(x: RoughNatural, y: RoughNatural) -> bool:
    """x is obtainable from y by swaps and removals on y's canonical string."""
    if y.nu > MAX_REACH:
        raise DomainError(f"reachability search is capped at length {MAX_REACH}")
    if x.nu > y.nu:
        return False
    bits = y.bits
    start = tuple(range(y.nu))

    def pattern(s):
        if not s:
            return ZERO
        return RoughNatural.from_bits(_tolerant(bits, s[i], s[i + 1]) for i in range(len(s) - 1))

    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if len(s) == x.nu and pattern(s) == x:
            return True
        n = len(s)
        nxt = []
        for k in range(n - 1):
            if not _tolerant(bits, s[k], s[k + 1]):
                t = s[:k] + (s[k + 1], s[k]) + s[k + 2:]
                nxt.append(t)
        if n > x.nu:
            for k in range(n):
                right = k == n - 1 or not _tolerant(bits, s[k], s[k + 1])
                left = k == 0 or not _tolerant(bits, s[k - 1], s[k])
                if right or left:
                    nxt.append(s[:k] + s[k + 1:])
        for t in nxt:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return False


def order(x: RoughNatural, y: RoughNatural, kind: str) -> bool:
    kind = ORDER_ALIASES.get(kind, kind)
    if kind == "⊴":
        return x.nu <= y.nu
    if kind == "≤p":
        return x.zeta and y.zeta and x.nu <= y.nu
    if kind == "≤⊕":
        return leq_oplus(x, y)
    if kind == "≤⊙":
        return leq_odot(x, y)
    if kind == "≤⊗":
        return leq_otimes(x, y)
    if kind == "⊑":
        return sub_order(x, y)
    if kind == "≼":
        return reach_order(x, y)
    raise ValueError(f"unknown order {kind!r}")


# enumeration helpers -------------------------------------------------------------------

def all_naturals(max_len: int) -> list[RoughNatural]:
    out = [ZERO]
    for n in range(1, max_len + 1):
        for bits in itertools.product((False, True), repeat=n - 1):
            out.append(RoughNatural(n, bits))
    return out


def random_natural(rng: random.Random, max_len: int, p_zero: float = 0.05) -> RoughNatural:
    if rng.random() < p_zero:
        return ZERO
    n = rng.randint(1, max_len)
    return RoughNatural(n, tuple(rng.random() < 0.5 for _ in range(n - 1)))


# expressions -----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([+.x])|(-(?:\{(?:1v2|12|1|2)\})?)|([0-9]+|[DI]+))")


def evaluate(expr: str) -> RoughNatural | None:
    """Evaluate an infix expression: + sum, . copy product, x substitution
    product, - subtraction (``-{12}`` etc. for conditional variants)."""
    toks = []
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression at column {pos + 1}: {expr[pos:]!r}")
        toks.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
        while pos < len(expr) and expr[pos].isspace():
            pos += 1
    toks.append(None)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def atom():
        t = take()
        if t == "(":
            v = additive()
            if take() != ")":
                raise ValueError("missing closing parenthesis")
            return v
        if t is None or t in ")+.x" or t.startswith("-"):
            raise ValueError(f"unexpected token {t!r}")
        return RoughNatural.parse(t)

    def multiplicative():
        v = atom()
        while peek() in (".", "x"):
            op = take()
            w = atom()
            if v is UNDEFINED or w is UNDEFINED:
                v = UNDEFINED
            else:
                v = odot(v, w) if op == "." else otimes(v, w)
        return v

    def additive():
        v = multiplicative()
        while peek() is not None and (peek() == "+" or peek().startswith("-")):
            op = take()
            w = multiplicative()
            if v is UNDEFINED or w is UNDEFINED:
                v = UNDEFINED
            elif op == "+":
                v = oplus(v, w)
            else:
                variant = op[2:-1] if len(op) > 1 else "plain"
                v = ominus(v, w, variant)
        return v

    v = additive()
    if peek() is not None:
        raise ValueError(f"unexpected token {peek()!r}")
    return v
