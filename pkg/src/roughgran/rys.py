"""Rough Y-systems: parthood, mereological predicates and granule axioms.

A system is stored by carrier index.  Parthood is kept as two bitset
tables (``down[i]`` = parts of object i, ``up[i]`` = objects having i as a
part) so every quantifier over the carrier becomes a few integer
operations.

An optional *null object* (for set carriers, the empty set) is a carrier
member that keeps every operator total but never serves as an overlap
witness and is left out of the object ranges of the granule axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .universe import DomainError, ElementSet, Relation, Universe, bits

UNDEFINED = None

Op = Callable[[Hashable], Hashable]


def identity(x):
    return x


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    holds: bool
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, fmt=str) -> str:
        if self.holds:
            return "holds"
        parts = ", ".join(fmt(w) if not isinstance(w, (int, str)) else str(w)
                          for w in self.witness)
        return f"fails({parts})"


class Rys:
    """A finite rough Y-system with lower/upper operator pairs.

    ``ops`` is a list of (lower, upper) callables mapping carrier objects to
    carrier objects.  When ``strict`` is set the five defining conditions
    are verified and a :class:`DomainError` names the first violation.
    """

    def __init__(self, carrier: Sequence[Hashable], ops: Sequence[tuple[Op, Op]],
                 parthood: Callable[[Hashable, Hashable], bool] | None = None,
                 top: Hashable | None = None, null: Hashable | None = None,
                 op_names: Sequence[str] | None = None, strict: bool = True):
        self.objects = list(carrier)
        self.index = {o: i for i, o in enumerate(self.objects)}
        if len(self.index) != len(self.objects):
            raise DomainError("carrier has repeated objects")
        n = len(self.objects)
        self.n = n
        self.all = (1 << n) - 1
        if null is not None and null not in self.index:
            raise DomainError("null object is not in the carrier")
        self.null = None if null is None else self.index[null]
        self.nn = self.all if self.null is None else self.all & ~(1 << self.null)
        self.top = None if top is None else self._idx(top)
        self.down, self.up = self._parthood_tables(parthood)
        self.lower = []
        self.upper = []
        for lo, hi in ops:
            self.lower.append([self._idx(lo(o), "lower approximation") for o in self.objects])
            self.upper.append([self._idx(hi(o), "upper approximation") for o in self.objects])
        self.k = len(self.lower)
        self.op_names = list(op_names) if op_names else [f"op{i + 1}" for i in range(self.k)]
        self._ov = None
        self._by_ov = None
        self._by_down = None
        if strict:
            problem = self.definition_violation()
            if problem:
                raise DomainError(problem)

    # construction helpers ------------------------------------------------

    def _idx(self, obj, what="object"):
        try:
            return self.index[obj]
        except KeyError:
            raise DomainError(f"{what} {obj} lies outside the carrier") from None

    def _parthood_tables(self, parthood):
        objs = self.objects
        n = self.n
        down = [0] * n
        up = [0] * n
        if parthood is None:
            if not all(isinstance(o, ElementSet) for o in objs):
                raise DomainError("a parthood predicate is required for non-set carriers")
            masks = [o.mask for o in objs]
            for i, mi in enumerate(masks):
                for j, mj in enumerate(masks):
                    if mj & ~mi == 0:
                        down[i] |= 1 << j
                        up[j] |= 1 << i
        else:
            for i in range(n):
                for j in range(n):
                    if parthood(objs[j], objs[i]):
                        down[i] |= 1 << j
                        up[j] |= 1 << i
        return down, up

    @classmethod
    def padded(cls, carrier, lowers: Sequence[Op], uppers: Sequence[Op], **kw) -> "Rys":
        """Pair operators, padding the shorter side with the identity."""
        k = max(len(lowers), len(uppers))
        lowers = list(lowers) + [identity] * (k - len(lowers))
        uppers = list(uppers) + [identity] * (k - len(uppers))
        return cls(carrier, list(zip(lowers, uppers)), **kw)

    # basic predicates ----------------------------------------------------

    def P(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def PP(self, i: int, j: int) -> bool:
        return self.P(i, j) and not self.P(j, i)

    @property
    def ov(self) -> list[int]:
        if self._ov is None:
            ov = []
            for i in range(self.n):
                m = 0
                for z in bits(self.down[i] & self.nn):
                    m |= self.up[z]
                ov.append(m)
            self._ov = ov
        return self._ov

    def O(self, i: int, j: int) -> bool:
        return bool(self.down[i] & self.down[j] & self.nn)

    def U(self, i: int, j: int) -> bool:
        return bool(self.up[i] & self.up[j])

    def X(self, i: int, j: int) -> bool:
        return self.O(i, j) and not self.P(i, j)

    def PO(self, i: int, j: int) -> bool:
        return self.X(i, j) and self.X(j, i)

    def crisp(self, op: int, i: int) -> bool:
        return self.lower[op][i] == i and self.upper[op][i] == i

    def crisp_mask(self, op: int, side: str = "both") -> int:
        m = 0
        lo, hi = self.lower[op], self.upper[op]
        for i in range(self.n):
            if side == "lower":
                ok = lo[i] == i
            elif side == "upper":
                ok = hi[i] == i
            else:
                ok = lo[i] == i and hi[i] == i
            if ok:
                m |= 1 << i
        return m

    # partial operations --------------------------------------------------

    def _unique(self, table: dict, key: int):
        hits = table.get(key, ())
        return hits[0] if len(hits) == 1 else UNDEFINED

    def sum(self, i: int, j: int):
        if self._by_ov is None:
            self._by_ov = {}
            for z, m in enumerate(self.ov):
                self._by_ov.setdefault(m, []).append(z)
        return self._unique(self._by_ov, self.ov[i] | self.ov[j])

    def sum_candidates(self, i: int, j: int) -> list[int]:
        self.sum(i, j)
        return list(self._by_ov.get(self.ov[i] | self.ov[j], ()))

    def _down_table(self):
        if self._by_down is None:
            self._by_down = {}
            for z, m in enumerate(self.down):
                self._by_down.setdefault(m, []).append(z)
        return self._by_down

    def product(self, i: int, j: int):
        return self._unique(self._down_table(), self.down[i] & self.down[j])

    def difference(self, i: int, j: int):
        return self._unique(self._down_table(), self.down[i] & ~self.ov[j] & self.all)

    def complement(self, i: int):
        if self.top is None:
            return UNDEFINED
        return self.difference(self.top, i)

    # object-level wrappers -------------------------------------------------

    def obj(self, i):
        return None if i is UNDEFINED else self.objects[i]

    def mereo(self, pred: str, x, y) -> bool:
        f = {"O": self.O, "U": self.U, "PP": self.PP, "X": self.X, "PO": self.PO,
             "P": self.P}.get(pred)
        if f is None:
            raise ValueError(f"unknown mereological predicate {pred!r}")
        return f(self._idx(x), self._idx(y))

    def partial(self, op: str, x, y=None):
        i = self._idx(x)
        if op == "complement":
            return self.obj(self.complement(i))
        j = self._idx(y)
        f = {"sum": self.sum, "product": self.product, "difference": self.difference}[op]
        return self.obj(f(i, j))

    # definition check ------------------------------------------------------

    def definition_violation(self) -> str | None:
        for i in range(self.n):
            if not self.P(i, i):
                return f"parthood is not reflexive at {self.objects[i]}"
            for j in bits(self.down[i] & self.up[i] & ~(1 << i)):
                return (f"parthood is not antisymmetric at "
                        f"{self.objects[i]}, {self.objects[j]}")
        for k in range(self.k):
            lo, hi = self.lower[k], self.upper[k]
            name = self.op_names[k]
            for y in range(self.n):
                for x in bits(self.down[y]):
                    if not self.P(lo[x], lo[y]) or not self.P(hi[x], hi[y]):
                        return (f"{name} is not monotone at "
                                f"{self.objects[x]} <= {self.objects[y]}")
            for x in range(self.n):
                if not self.P(lo[x], x):
                    return f"{name}: lower approximation of {self.objects[x]} is not a part of it"
                if not self.P(x, hi[x]):
                    return f"{name}: {self.objects[x]} is not a part of its upper approximation"
                if self.P(hi[x], lo[x]) and not (lo[x] == x == hi[x]):
                    return f"{name}: upper part of lower at {self.objects[x]} without crispness"
        return None

    def s5_dual(self, op: int) -> AxiomResult:
        lo, hi = self.lower[op], self.upper[op]
        for x in range(self.n):
            if lo[hi[x]] != hi[x] or hi[lo[x]] != lo[x]:
                return AxiomResult("S5-dual", False, (self.objects[x],))
        return AxiomResult("S5-dual", True)


# granule sets and axioms ----------------------------------------------------

@dataclass(frozen=True)
class GranuleSet:
    rys: Rys
    members: tuple[int, ...]

    @classmethod
    def of(cls, rys: Rys, objs: Iterable) -> "GranuleSet":
        seen = []
        for o in objs:
            i = rys._idx(o, "granule")
            if i not in seen:
                seen.append(i)
        return cls(rys, tuple(seen))

    def gamma(self, obj) -> bool:
        return self.rys.index.get(obj) in self.members

    def objects(self) -> list:
        return [self.rys.objects[i] for i in self.members]


ALIASES = {"AS": "ST", "LU": "LFU", "LCG": "LACG", "SRA": "SubRA"}

AXIOMS = (
    "RA", "WRA", "SubRA", "STRA", "LRA", "URA", "LSRA", "USRA",
    "ACG", "SCG", "LACG", "UACG", "LSCG", "USCG",
    "MER", "SMER", "IMER", "LMER", "ILMER", "UMER", "LSMER", "USMER", "IUMER",
    "LS", "US", "ST", "LSS", "USS", "SST",
    "NO", "FU", "LFU", "SFU", "LSFU", "UU", "PS", "LI", "UI", "I",
)


class _Checker:
    """Evaluates granule axioms; results are cached per (axiom, op)."""

    def __init__(self, G: GranuleSet):
        self.G = G
        self.r = G.rys
        self._sums = None
        self._terms = None

    # representability ---------------------------------------------------

    def sum_closure(self) -> int:
        if self._sums is None:
            r = self.r
            have = 0
            for g in self.G.members:
                have |= 1 << g
            if r.null is not None:
                have |= 1 << r.null  # the empty sum
            frontier = have
            gens = list(self.G.members)
            while frontier:
                new = 0
                for a in bits(frontier):
                    for g in gens:
                        s = r.sum(a, g)
                        if s is not UNDEFINED and not have >> s & 1:
                            new |= 1 << s
                have |= new
                frontier = new
            self._sums = have
        return self._sums

    def term_closure(self) -> int:
        if self._terms is None:
            r = self.r
            have = 0
            for g in self.G.members:
                have |= 1 << g
            frontier = have
            while frontier:
                new = 0
                for a in bits(frontier):
                    c = r.complement(a)
                    if c is not UNDEFINED:
                        new |= 1 << c
                    for b in bits(have):
                        for f in (r.sum, r.product):
                            s = f(a, b)
                            if s is not UNDEFINED:
                                new |= 1 << s
                new &= ~have
                have |= new
                frontier = new
            self._terms = have
        return self._terms

    def _rep(self, closure: int, op: int, side: str):
        table = self.r.lower[op] if side == "lower" else self.r.upper[op]
        for x in bits(self.r.nn):
            if not closure >> table[x] & 1:
                return (self.r.op_names[op], side, self.r.objects[x])
        return None

    # per-op bodies, each returning a witness tuple or None ------------------

    def rep_lower(self, op):
        return self._rep(self.sum_closure(), op, "lower")

    def rep_upper(self, op):
        return self._rep(self.sum_closure(), op, "upper")

    def rep_both(self, op):
        return self.rep_lower(op) or self.rep_upper(op)

    def term_both(self, op):
        c = self.term_closure()
        return self._rep(c, op, "lower") or self._rep(c, op, "upper")

    def _crisp_g(self, op, side):
        r = self.r
        for y in self.G.members:
            lo_ok = r.lower[op][y] == y
            hi_ok = r.upper[op][y] == y
            ok = {"both": lo_ok and hi_ok, "lower": lo_ok, "upper": hi_ok}[side]
            if not ok:
                return (r.op_names[op], r.objects[y])
        return None

    def _mer(self, ops, side):
        r = self.r
        crisp = r.nn
        for op in ops:
            crisp &= r.crisp_mask(op, side)
        for y in self.G.members:
            bad = r.down[y] & crisp & ~(1 << y)
            if bad:
                x = next(bits(bad))
                names = tuple(r.op_names[o] for o in ops)
                return names + (r.objects[y], r.objects[x])
        return None

    def ls(self, op):
        r = self.r
        lo = r.lower[op]
        for y in self.G.members:
            for x in bits(r.up[y] & r.nn):
                if not r.P(y, lo[x]):
                    return (r.op_names[op], r.objects[y], r.objects[x])
        return None

    def us(self, op):
        r = self.r
        hi = r.upper[op]
        for y in self.G.members:
            for x in bits(r.ov[y] & r.nn):
                if not r.P(y, hi[x]):
                    return (r.op_names[op], r.objects[y], r.objects[x])
        return None

    def _fu(self, op, side):
        r = self.r
        crisp = r.crisp_mask(op, side) & r.nn
        gs = self.G.members
        for a in gs:
            for b in gs:
                if not r.up[a] & r.up[b] & crisp:
                    return (r.op_names[op], r.objects[a], r.objects[b])
        return None

    def uu(self, op):
        r = self.r
        crisp = r.crisp_mask(op) & r.nn
        gs = self.G.members
        for a in gs:
            for b in gs:
                both = r.up[a] & r.up[b] & crisp
                if both & (both - 1):
                    it = bits(both)
                    z, w = next(it), next(it)
                    return (r.op_names[op], r.objects[a], r.objects[b],
                            r.objects[z], r.objects[w])
        return None

    def idem(self, op, side):
        r = self.r
        t = r.lower[op] if side == "lower" else r.upper[op]
        for x in self.G.members:
            if t[t[x]] != t[x]:
                return (r.op_names[op], side, r.objects[x])
        return None

    # quantifier plumbing -------------------------------------------------

    def forall(self, body) -> tuple | None:
        for op in range(self.r.k):
            w = body(op)
            if w is not None:
                return w
        return None

    def exists(self, body) -> tuple | None:
        first = None
        for op in range(self.r.k):
            w = body(op)
            if w is None:
                return None
            first = first or w
        return first or ("no operator pairs",)

    def check(self, axiom: str) -> AxiomResult:
        name = ALIASES.get(axiom, axiom)
        if name not in AXIOMS:
            raise ValueError(f"unknown axiom {axiom!r}")
        r = self.r
        A, E = self.forall, self.exists
        ops = range(r.k)
        table = {
            "RA": lambda: A(self.rep_both),
            "WRA": lambda: A(self.term_both),
            "SubRA": lambda: E(self.rep_both),
            "STRA": lambda: E(self.term_both),
            "LRA": lambda: A(self.rep_lower),
            "URA": lambda: A(self.rep_upper),
            "LSRA": lambda: E(self.rep_lower),
            "USRA": lambda: E(self.rep_upper),
            "ACG": lambda: A(lambda o: self._crisp_g(o, "both")),
            "SCG": lambda: E(lambda o: self._crisp_g(o, "both")),
            "LACG": lambda: A(lambda o: self._crisp_g(o, "lower")),
            "UACG": lambda: A(lambda o: self._crisp_g(o, "upper")),
            "LSCG": lambda: E(lambda o: self._crisp_g(o, "lower")),
            "USCG": lambda: E(lambda o: self._crisp_g(o, "upper")),
            "MER": lambda: A(lambda o: self._mer([o], "both")),
            "SMER": lambda: E(lambda o: self._mer([o], "both")),
            "IMER": lambda: self._mer(list(ops), "both"),
            "LMER": lambda: A(lambda o: self._mer([o], "lower")),
            "ILMER": lambda: self._mer(list(ops), "lower"),
            "UMER": lambda: A(lambda o: self._mer([o], "upper")),
            "LSMER": lambda: E(lambda o: self._mer([o], "lower")),
            "USMER": lambda: E(lambda o: self._mer([o], "upper")),
            "IUMER": lambda: self._mer(list(ops), "upper"),
            "LS": lambda: A(self.ls),
            "US": lambda: A(self.us),
            "ST": lambda: A(self.ls) or A(self.us),
            "LSS": lambda: E(self.ls),
            "USS": lambda: E(self.us),
            "SST": lambda: E(self.ls) or E(self.us),
            "NO": self._no,
            "FU": lambda: A(lambda o: self._fu(o, "both")),
            "LFU": lambda: A(lambda o: self._fu(o, "lower")),
            "SFU": lambda: E(lambda o: self._fu(o, "both")),
            "LSFU": lambda: E(lambda o: self._fu(o, "lower")),
            "UU": lambda: E(self.uu),
            "PS": self._ps,
            "LI": lambda: A(lambda o: self.idem(o, "lower")),
            "UI": lambda: A(lambda o: self.idem(o, "upper")),
            "I": lambda: A(lambda o: self.idem(o, "lower") or self.idem(o, "upper")),
        }
        w = table[name]()
        return AxiomResult(axiom, w is None, () if w is None else w)

    def _no(self):
        r = self.r
        for a in self.G.members:
            for b in self.G.members:
                if r.PO(a, b):
                    return (r.objects[a], r.objects[b])
        return None

    def _ps(self):
        r = self.r
        gs = self.G.members
        for a in gs:
            for b in gs:
                p = r.product(a, b)
                if p is UNDEFINED or not any(r.P(p, z) for z in gs):
                    return (r.objects[a], r.objects[b])
        return None


def checker(G: GranuleSet) -> _Checker:
    return _Checker(G)


def check_axiom(rys: Rys, G: GranuleSet, axiom: str) -> AxiomResult:
    return _Checker(G).check(axiom)


def admissible(rys: Rys, G: GranuleSet) -> bool:
    c = _Checker(G)
    return all(c.check(a).holds for a in ("WRA", "LS", "LFU"))


# mereology axioms -------------------------------------------------------------

MEREOLOGY = ("Transitivity", "Supplementation", "P5", "P6", "P7", "Top")


def check_mereology(rys: Rys, axiom: str) -> AxiomResult:
    """Closed-extensional-mereology axioms over the whole carrier.

    Supplementation is the strong form with plain overlap; P5 and P6 read
    as the existence of the sum and of the product respectively.
    """
    r = rys
    objs = r.objects
    rng = range(r.n)
    if axiom == "Transitivity":
        for x in rng:
            for y in bits(r.up[x]):
                extra = r.up[y] & ~r.up[x]
                if extra:
                    return AxiomResult(axiom, False, (objs[x], objs[y], objs[next(bits(extra))]))
    elif axiom == "Supplementation":
        for x in rng:
            for y in rng:
                if r.P(x, y):
                    continue
                if not any(not r.O(z, y) for z in bits(r.down[x])):
                    return AxiomResult(axiom, False, (objs[x], objs[y]))
    elif axiom == "P5":
        ov = r.ov
        have = set(ov)
        for x in rng:
            for y in rng:
                if r.U(x, y) and (ov[x] | ov[y]) not in have:
                    return AxiomResult(axiom, False, (objs[x], objs[y]))
    elif axiom == "P6":
        have = set(r.down)
        for x in rng:
            for y in rng:
                if r.O(x, y) and (r.down[x] & r.down[y]) not in have:
                    return AxiomResult(axiom, False, (objs[x], objs[y]))
    elif axiom == "P7":
        have = set(r.down)
        ov = r.ov
        for x in rng:
            for y in rng:
                if any(not r.O(z, y) for z in bits(r.down[x])):
                    if (r.down[x] & ~ov[y] & r.all) not in have:
                        return AxiomResult(axiom, False, (objs[x], objs[y]))
    elif axiom == "Top":
        if not any(r.down[z] == r.all for z in rng):
            return AxiomResult(axiom, False, ())
    else:
        raise ValueError(f"unknown mereology axiom {axiom!r}")
    return AxiomResult(axiom, True)


# discernibility ---------------------------------------------------------------

INDISC_KINDS = ("i-fixed", "any", "all", "granule-fixed", "granule-any", "granule-all")


def indisc(rys: Rys, kind: str, i: int | None = None, G: GranuleSet | None = None) -> list[int]:
    """Indiscernibility on the carrier, returned as row bitsets by index."""
    if kind not in INDISC_KINDS:
        raise ValueError(f"unknown indiscernibility kind {kind!r}")
    r = rys
    if kind in ("i-fixed", "granule-fixed") and i is None:
        raise ValueError(f"{kind} needs an operator index")
    if kind.startswith("granule") and G is None:
        raise ValueError(f"{kind} needs a granule set")

    def sig(op, x):
        lo, hi = r.lower[op][x], r.upper[op][x]
        if not kind.startswith("granule"):
            return (lo, hi)
        gm = 0
        for g in G.members:
            gm = gm << 2 | (r.P(g, lo) << 1) | r.P(g, hi)
        return gm

    ops = [i] if kind in ("i-fixed", "granule-fixed") else list(range(r.k))
    sigs = [[sig(op, x) for x in range(r.n)] for op in ops]
    rows = []
    for x in range(r.n):
        row = 0
        for y in range(r.n):
            eq = [s[x] == s[y] for s in sigs]
            ok = any(eq) if kind in ("any", "granule-any") else all(eq)
            if ok:
                row |= 1 << y
        rows.append(row)
    return rows


# set-carrier conveniences -----------------------------------------------------

def powerset_rys(universe: Universe, ops: Sequence[tuple[Op, Op]], *,
                 null_empty: bool = True, include_empty: bool = True,
                 op_names: Sequence[str] | None = None, strict: bool = True) -> Rys:
    """A system on all subsets of ``universe`` ordered by inclusion.

    By default the empty set is present as the null object.  With
    ``null_empty=False`` it is an ordinary object; with
    ``include_empty=False`` it is dropped from the carrier altogether.
    """
    if len(universe) > 12:
        raise DomainError("powerset carriers are limited to 12 elements; supply a carrier")
    carrier = [s for s in universe.powerset() if include_empty or s]
    null = universe.empty() if include_empty and null_empty else None
    return Rys(carrier, ops, top=universe.full(), null=null, op_names=op_names, strict=strict)


def indisc_relation(rys: Rys, rows: list[int]) -> Relation:
    """Wrap carrier-level rows as a relation over carrier labels."""
    u = Universe(str(o) for o in rys.objects)
    return Relation(u, tuple(rows))
