"""Granule-axiom profiles of concrete rough set theories.

Each :class:`Theory` turns an instance (a relation, several relations or a
cover) into a rough Y-system on the powerset together with its
distinguished granules, and lists the axioms it is expected to satisfy
and to violate.  Expected axioms are checked on fixtures and random
instances; expected violations are refuted on stored witness instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import cover as cv
from .relapprox import (
    ApproxSpace, classical, esoteric, granule_family, lower_mask, multi_approx,
    pseudo_classes, reflexive_approx, tolerance_ops, upper_mask,
)
from .rys import GranuleSet, Rys, check_axiom, powerset_rys
from .universe import DomainError, ElementSet, Relation, Universe, class_masks, closure

INSTANCE_KINDS = ("equivalence", "partial-equivalence", "reflexive", "multiple", "tolerance", "cover")


@dataclass(frozen=True)
class Instance:
    """A named input for a theory: a relation, a tuple of relations or a cover."""

    name: str
    kind: str
    data: object

    @property
    def universe(self) -> Universe:
        if self.kind == "cover":
            return self.data.universe
        if self.kind == "multiple":
            return self.data[0].universe
        return self.data.universe


@dataclass(frozen=True)
class Theory:
    key: str
    title: str
    kind: str
    holds: tuple[str, ...]
    fails: tuple[str, ...]
    build: Callable[[Instance], tuple[Rys, GranuleSet]] = field(repr=False, compare=False)
    needs_cover: bool = True
    note: str = ""


def _sets(u: Universe, masks) -> list[ElementSet]:
    return [ElementSet(u, m) for m in masks]


def _system(inst: Instance, ops: Sequence[tuple], names: Sequence[str], granules, strict=True):
    u = inst.universe
    rys = powerset_rys(u, ops, op_names=names, strict=strict)
    return rys, GranuleSet.of(rys, [g for g in granules if g])


def _mask_op(u: Universe, f):
    return lambda X: ElementSet(u, f(X.mask))


# relation-based builders -------------------------------------------------------------

def _classical(inst):
    sp = ApproxSpace.of(inst.data, "equivalence")
    u = sp.universe
    ops = [(lambda X: classical(sp, X, "lower"), lambda X: classical(sp, X, "upper"))]
    return _system(inst, ops, ["l,u"], _sets(u, class_masks(sp.rel)))


def _esoteric(inst):
    sp = ApproxSpace.of(inst.data, "partial-equivalence")
    u = sp.universe
    ops = [(lambda X: esoteric(sp, X, "lower"), lambda X: esoteric(sp, X, "upper"))]
    # elements outside every pseudo-class escape the upper approximation
    return _system(inst, ops, ["l,u"], _sets(u, pseudo_classes(sp.rel)), strict=False)


def _reflexive(inst):
    sp = ApproxSpace.of(inst.data, "reflexive")
    u = sp.universe
    ops = [(lambda X: reflexive_approx(sp, X, "lower"), lambda X: reflexive_approx(sp, X, "upper"))]
    return _system(inst, ops, ["l,u"], _sets(u, set(sp.rel.rows)))


def _multiple(inst):
    sp = ApproxSpace.multiple(inst.data)
    u = sp.universe
    ops = [(lambda X: multi_approx(sp, X, "ls"), lambda X: multi_approx(sp, X, "us")),
           (lambda X: multi_approx(sp, X, "lw"), lambda X: multi_approx(sp, X, "uw"))]
    gs = {m for r in sp.rels for m in class_masks(r)}
    return _system(inst, ops, ["ls,us", "lw,uw"], _sets(u, sorted(gs)))


def _tol(kinds: Sequence[tuple[str, str]]):
    def build(inst):
        sp = ApproxSpace.of(inst.data, "tolerance")
        ops = [(lambda X, a=a: tolerance_ops(sp, X, a), lambda X, b=b: tolerance_ops(sp, X, b))
               for a, b in kinds]
        fam = granule_family(sp, "T")
        return _system(inst, ops, [f"{a},{b}" for a, b in kinds], list(fam))
    return build


def _asigma(inst):
    sp = ApproxSpace.of(inst.data, "tolerance")
    u = sp.universe
    fam = granule_family(sp, "Asigma").masks
    full = u.full_mask

    def lo(X):
        return ElementSet(u, lower_mask(fam, X.mask))

    def hi(X):
        return ElementSet(u, upper_mask(fam, X.mask) & ~lower_mask(fam, full & ~X.mask))

    return _system(inst, [(lo, hi)], ["lG,uG-bitten"], _sets(u, fam))


# cover-based builders ----------------------------------------------------------------

def _cover_ops(kinds: Sequence[tuple[str, str]], granules: str, strict: bool = True):
    def op(cs, kind):
        u = cs.universe
        if kind in cv.AUAI_KINDS:
            return _mask_op(u, lambda m: cv.auai_mask(cs, m, kind))
        if kind in cv.UPLUS_KINDS:
            return _mask_op(u, lambda m: cv.uplus_mask(cs, m, kind))
        if kind in ("l6+", "u6+"):
            return _mask_op(u, lambda m: cv.nbd_pair_mask(cs, m, kind))
        return _mask_op(u, lambda m: cv.lp_lm_mask(cs, m, kind))

    def build(inst):
        cs = inst.data
        u = cs.universe
        n = len(u)
        if granules == "K":
            gs = list(cs.masks)
        elif granules == "Fr":
            gs = [cv._fr_mask(cs, i) for i in range(n) if cs.containing(i)]
        elif granules == "N":
            gs = [cv._nbd_mask(cs, i) for i in range(n) if cs.containing(i)]
        elif granules == "pi":
            gs = cv.pi_cover_masks(cs)
        else:
            raise ValueError(granules)
        ops = [(op(cs, a), op(cs, b)) for a, b in kinds]
        return _system(inst, ops, [f"{a},{b}" for a, b in kinds],
                       _sets(u, sorted(set(gs))), strict=strict)

    return build


THEORIES: tuple[Theory, ...] = (
    Theory("classical", "classes of an equivalence", "equivalence",
           ("RA", "ACG", "MER", "AS", "FU", "NO", "PS"), ("UU",), _classical),
    Theory("esoteric", "pseudo-classes of a partial equivalence", "partial-equivalence",
           ("RA", "MER", "NO", "UU", "US"), ("ACG",), _esoteric),
    Theory("reflexive", "relateds [x] of a reflexive relation", "reflexive",
           ("RA", "LFU"), ("MER", "ACG", "LI", "UI", "NO", "FU"), _reflexive),
    Theory("multiple", "classes of several equivalences, strong and weak pairs", "multiple",
           ("LSRA", "USRA", "LSS", "USS"), ("RA", "ACG", "SCG"), _multiple),
    Theory("tolerance", "tolerance classes [x] with lT, uT", "tolerance",
           ("RA", "MER", "ST"), ("ACG",), _tol([("lT", "uT")])),
    Theory("tolerance-star", "tolerance classes with lT, uT and the starred pair", "tolerance",
           ("SRA", "SMER", "SST", "IMER", "MER", "US"), ("RA", "NO", "ACG"),
           _tol([("lT", "uT"), ("lstar", "ustar")])),
    Theory("tolerance-bitten", "tolerance classes with lT, uT and the bitten upper", "tolerance",
           ("IMER", "SCG", "LS", "LFU", "SRA"), ("MER", "NO", "URA"),
           _tol([("lT", "uT"), ("lT", "bitten_upper")])),
    Theory("asigma", "intersection-closed blocks with a bitten upper", "tolerance",
           ("LRA", "MER", "LACG", "LMER", "UMER", "ST"), ("RA", "ACG", "NO"), _asigma),
    Theory("auai", "cover blocks with both AUAI pairs", "cover",
           ("WRA", "LS", "SCG", "LFU", "IMER"), ("ACG", "RA", "SRA", "MER"),
           _cover_ops([("l1", "u1"), ("l2", "u2")], "K"), needs_cover=False),
    Theory("auai-1", "cover blocks with l1, u1", "cover",
           ("WRA", "ACG", "ST", "LFU"), ("MER", "NO", "FU", "RA"),
           _cover_ops([("l1", "u1")], "K"), needs_cover=False),
    Theory("auai-2", "cover blocks with l2, u2", "cover",
           ("WRA", "ST"), ("ACG", "MER", "RA", "NO"),
           _cover_ops([("l2", "u2")], "K"), needs_cover=False),
    Theory("friends-1", "friend sets with lp1, up1", "cover",
           ("MER", "URA", "UMER"), ("ACG", "NO", "LS"), _cover_ops([("lp1", "up1")], "Fr")),
    Theory("friends-2", "friend sets with lp2, up2", "cover",
           ("MER", "LMER", "RA", "LACG"), ("ACG", "NO", "LS"), _cover_ops([("lp2", "up2")], "Fr")),
    Theory("blocks-3", "cover blocks with lp3, up3", "cover",
           ("MER", "RA", "ST", "LACG", "LFU"), ("ACG", "NO"), _cover_ops([("lp3", "up3")], "K")),
    Theory("signature", "signature partition with lp4, up4", "cover",
           ("RA", "ACG", "MER", "ST", "FU", "NO", "PS"), (), _cover_ops([("lp4", "up4")], "pi")),
    Theory("signature-blocks", "cover blocks with lp4, up4", "cover",
           ("WRA", "ACG", "ST"), ("RA", "NO", "MER"), _cover_ops([("lp4", "up4")], "K")),
    Theory("minus-1", "cover blocks with lm1, um1", "cover",
           ("WRA", "LS", "LACG"), ("RA", "ST", "LMER"), _cover_ops([("lm1", "um1")], "K")),
    Theory("minus-2", "neighbourhoods with lm2, um2", "cover",
           ("LACG", "LRA", "ST", "MER"), ("RA", "ACG", "LMER", "NO"),
           _cover_ops([("lm2", "um2")], "N")),
    Theory("nbd-6", "neighbourhoods with l6+, u6+", "cover",
           ("LACG", "LRA", "ST", "MER"), ("RA", "ACG", "LMER", "NO"),
           _cover_ops([("l6+", "u6+")], "N")),
    Theory("plus-1", "cover blocks with l1, u1+", "cover",
           ("ACG", "RA", "FU", "LS"), ("MER", "LMER", "NO"), _cover_ops([("l1", "u1+")], "K")),
    Theory("plus-2", "cover blocks with l1, u2+", "cover",
           ("ACG", "RA", "FU", "ST"), ("MER", "LMER", "NO"), _cover_ops([("l1", "u2+")], "K")),
    Theory("plus-3", "cover blocks with l1, u3+", "cover",
           ("ACG", "RA", "FU", "LS"), ("MER", "LMER", "NO"), _cover_ops([("l1", "u3+")], "K")),
    Theory("plus-4", "cover blocks with l1, u4+", "cover",
           ("ACG", "RA", "FU", "LS"), ("MER", "LMER", "NO"), _cover_ops([("l1", "u4+")], "K", strict=False),
           note="u4+ is not monotone, so the system is built without the definition check"),
    Theory("plus-5", "cover blocks with l1, u5+", "cover",
           ("ACG", "RA", "FU", "LS"), ("MER", "LMER", "NO"), _cover_ops([("l1", "u5+")], "K")),
)

THEORY_INDEX = {t.key: t for t in THEORIES}


def theory(key: str) -> Theory:
    try:
        return THEORY_INDEX[key]
    except KeyError:
        raise ValueError(f"unknown theory {key!r}; choose from {', '.join(THEORY_INDEX)}") from None


def profile(th: Theory, inst: Instance, axioms: Sequence[str]) -> dict:
    """Check each axiom on one instance; returns {axiom: AxiomResult}."""
    if inst.kind != th.kind:
        raise DomainError(f"theory {th.key} needs a {th.kind} instance, got {inst.kind}")
    rys, G = th.build(inst)
    return {a: check_axiom(rys, G, a) for a in axioms}


# fixtures ----------------------------------------------------------------------------

def example_cover() -> cv.CoverSystem:
    """Nine blocks over nine elements, with duplicated and nested blocks."""
    u = Universe("a b c e f g h i j".split())
    blocks = [("K1", "ab"), ("K2", "ace"), ("K3", "bf"), ("K4", "j"), ("K5", "fgh"),
              ("K6", "i"), ("K7", "fgja"), ("K8", "fg"), ("K9", "aj")]
    return cv.CoverSystem.from_blocks(u, blocks)


def counting_universe() -> Universe:
    return Universe("f b c a k i n h e l g m".split())


def counting_relations() -> tuple[Relation, Relation]:
    """The two equivalences R (coarser) and Q (finer) of the counting example."""
    u = counting_universe()
    R = closure(Relation.from_pairs(u, [tuple(p) for p in ["ab", "bc", "ef", "ik", "lm", "mn", "gh"]]),
                ("reflexive", "symmetric", "transitive"))
    Q = closure(Relation.from_pairs(u, [tuple(p) for p in ["ab", "ef", "ik", "lm", "mn"]]),
                ("reflexive", "symmetric", "transitive"))
    return R, Q


def small_tolerance() -> Relation:
    u = Universe("abcdef")
    return closure(Relation.from_pairs(u, [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("b", "e")]),
                   ("reflexive", "symmetric"))


def _restrict(rel: Relation, names: Sequence[str]) -> Relation:
    u = Universe(names)
    return Relation.from_pairs(u, [(a, b) for a, b in rel.pairs() if a in u and b in u])


def canonical_instances(kind: str) -> list[Instance]:
    """Hand-built fixtures per instance kind, small enough for powerset carriers."""
    R, Q = counting_relations()
    part = list("abcefikl")
    if kind == "equivalence":
        return [Instance("counting-R", kind, _restrict(R, part)),
                Instance("counting-Q", kind, _restrict(Q, part))]
    if kind == "partial-equivalence":
        u = Universe("abcdef")
        pe = Relation.from_partition(u, ["ab", "cd"])
        rows = list(pe.rows)
        rows[4] = rows[5] = 0  # e and f relate to nothing
        return [Instance("two-pseudo-classes", kind, Relation(u, tuple(rows)))]
    if kind == "reflexive":
        u = Universe("abcde")
        rel = closure(Relation.from_pairs(u, [("a", "b"), ("b", "c"), ("d", "a"), ("e", "e")]),
                      ("reflexive",))
        return [Instance("chain-ish", kind, rel)]
    if kind == "multiple":
        return [Instance("counting-R-Q", kind, (_restrict(R, part), _restrict(Q, part)))]
    if kind == "tolerance":
        return [Instance("path-with-chord", kind, small_tolerance())]
    if kind == "cover":
        return [Instance("nine-blocks", kind, example_cover())]
    raise ValueError(f"unknown instance kind {kind!r}")


# random instances --------------------------------------------------------------------

def _partition(rng, elems):
    blocks = []
    for e in elems:
        if blocks and rng.random() < 0.5:
            rng.choice(blocks).append(e)
        else:
            blocks.append([e])
    return blocks


def random_instance(kind: str, rng: random.Random, n: int = 5, cover: bool = True) -> Instance:
    u = Universe([chr(ord("a") + i) for i in range(n)])
    els = list(u.elements)
    if kind == "equivalence":
        data = Relation.from_partition(u, _partition(rng, els))
    elif kind == "partial-equivalence":
        keep = [e for e in els if rng.random() < 0.75]
        full = Relation.from_partition(u, _partition(rng, keep)) if keep else Relation.empty(u)
        rows = [r if els[i] in keep else 0 for i, r in enumerate(full.rows)]
        data = Relation(u, tuple(rows))
    elif kind == "reflexive":
        rows = [(1 << i) | sum(1 << j for j in range(n) if rng.random() < 0.3) for i in range(n)]
        data = Relation(u, tuple(rows))
    elif kind == "multiple":
        data = tuple(Relation.from_partition(u, _partition(rng, els)) for _ in range(rng.randint(2, 3)))
    elif kind == "tolerance":
        pairs = [(a, b) for i, a in enumerate(els) for b in els[i + 1:] if rng.random() < 0.35]
        data = closure(Relation.from_pairs(u, pairs), ("reflexive", "symmetric"))
    elif kind == "cover":
        k = rng.randint(2, 5)
        masks = set()
        while len(masks) < k:
            m = rng.randrange(1, 1 << n)
            masks.add(m)
        masks = sorted(masks)
        if cover:
            covered = 0
            for m in masks:
                covered |= m
            missing = u.full_mask & ~covered
            if missing:
                masks[0] |= missing
                masks = sorted(set(masks))
        data = cv.CoverSystem(u, tuple(f"K{i + 1}" for i in range(len(masks))), tuple(masks))
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return Instance(f"random-{kind}", kind, data)


# stored witnesses for expected violations ------------------------------------------

def _cover_instance(name: str, elems: str, blocks: Sequence[str]) -> Instance:
    u = Universe(list(elems))
    cs = cv.CoverSystem.from_blocks(u, [(f"K{i + 1}", b) for i, b in enumerate(blocks)])
    return Instance(name, "cover", cs)


def _two_partitions() -> Instance:
    u = Universe("abc")
    return Instance("crossed-pairs", "multiple",
                    (Relation.from_partition(u, ["ab", "c"]), Relation.from_partition(u, ["a", "bc"])))


# (theory, axiom) -> extra instances beyond the canonical fixtures
WITNESSES: dict[tuple[str, str], Callable[[], Instance]] = {
    ("multiple", "RA"): _two_partitions,
    ("minus-2", "NO"): lambda: _cover_instance("two-sharing-blocks", "abc", ["ac", "bc"]),
    ("nbd-6", "NO"): lambda: _cover_instance("two-sharing-blocks", "abc", ["ac", "bc"]),
    ("plus-4", "MER"): lambda: _cover_instance("nested-blocks", "abc", ["c", "abc"]),
    ("plus-4", "LMER"): lambda: _cover_instance("nested-blocks", "abc", ["c", "abc"]),
    ("plus-4", "NO"): lambda: _cover_instance("two-sharing-blocks", "abc", ["ac", "bc"]),
}


@dataclass
class ClaimResult:
    theory: str
    axiom: str
    expected: str          # "holds" or "fails"
    ok: bool
    checked: int
    detail: str = ""

    def describe(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        line = f"{status:8} {self.theory:16} {self.axiom:5} expected {self.expected}"
        return line + (f"  [{self.detail}]" if self.detail else "")


def _instances_for(th: Theory, random_count: int, seed: int) -> list[Instance]:
    out = list(canonical_instances(th.kind))
    rng = random.Random(seed)
    for n in (3, 4, 5):
        for _ in range(random_count):
            cover = th.needs_cover or rng.random() < 0.7
            out.append(random_instance(th.kind, rng, n, cover=cover))
    return out


def _describe_instance(inst: Instance) -> str:
    if inst.kind == "cover":
        return f"{inst.name} blocks " + " ".join(str(b) for b in inst.data.blocks)
    if inst.kind == "multiple":
        from .universe import partition_classes
        return f"{inst.name} " + " | ".join(
            " ".join(str(c) for c in partition_classes(r)) for r in inst.data)
    return f"{inst.name} pairs " + " ".join(f"{a}{b}" for a, b in inst.data.pairs() if a != b)


def evaluate(th: Theory, random_count: int = 15, seed: int = 0) -> list[ClaimResult]:
    """Check expected axioms everywhere and expected violations on witnesses."""
    systems = []
    for inst in _instances_for(th, random_count, seed):
        systems.append((inst, *th.build(inst)))
    canon = systems[:len(canonical_instances(th.kind))]
    out = []
    for a in th.holds:
        bad = None
        for inst, rys, G in systems:
            r = check_axiom(rys, G, a)
            if not r.holds:
                bad = f"fails on {_describe_instance(inst)}: {r.describe()}"
                break
        out.append(ClaimResult(th.key, a, "holds", bad is None, len(systems), bad or ""))
    for a in th.fails:
        pool = list(canon)
        if (th.key, a) in WITNESSES:
            inst = WITNESSES[th.key, a]()
            pool.append((inst, *th.build(inst)))
        hit = None
        for inst, rys, G in pool:
            r = check_axiom(rys, G, a)
            if not r.holds:
                hit = f"refuted on {inst.name}: {r.describe()}"
                break
        out.append(ClaimResult(th.key, a, "fails", hit is not None, len(pool),
                               hit or "no stored instance refutes it"))
    return out


def evaluate_all(random_count: int = 15, seed: int = 0) -> list[ClaimResult]:
    out = []
    for th in THEORIES:
        out.extend(evaluate(th, random_count, seed))
    return out
