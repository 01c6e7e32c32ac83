import random

import pytest
from hypothesis import given, strategies as st

from roughgran.relapprox import ApproxSpace, classical, tolerance_ops
from roughgran.rys import (
    AXIOMS, MEREOLOGY, GranuleSet, Rys, admissible, check_axiom, check_mereology,
    indisc, powerset_rys,
)
from roughgran.theories import THEORY_INDEX, random_instance
from roughgran.universe import DomainError, Relation, Universe, closure, partition_classes

from conftest import equivalences

IDENTITY = [(lambda X: X, lambda X: X)]


def classical_system(rel, **kw):
    sp = ApproxSpace.of(rel, "equivalence")
    ops = [(lambda X: classical(sp, X, "lower"), lambda X: classical(sp, X, "upper"))]
    return powerset_rys(rel.universe, ops, op_names=["l,u"], **kw)


def test_overlap_depends_on_the_empty_object():
    u = Universe("ab")
    a, b = u.set("a"), u.set("b")
    assert not powerset_rys(u, IDENTITY).mereo("O", a, b)
    assert powerset_rys(u, IDENTITY, null_empty=False).mereo("O", a, b)
    assert not powerset_rys(u, IDENTITY, include_empty=False).mereo("O", a, b)
    r = powerset_rys(u, IDENTITY)
    assert r.mereo("PP", a, u.full()) and not r.mereo("PP", a, a)


def test_partial_sum_and_product():
    u = Universe("abcd")
    r = powerset_rys(u, IDENTITY, include_empty=False)
    for x in r.objects:
        for y in r.objects:
            assert r.partial("sum", x, y) == (x | y)
            assert r.partial("product", x, y) == ((x & y) if x.meets(y) else None)
    sparse = Rys([u.set("a"), u.set("b")], IDENTITY)
    assert sparse.partial("sum", u.set("a"), u.set("b")) is None


def test_s5_duality():
    u = Universe("abcd")
    assert classical_system(Relation.from_partition(u, ["ab", "cd"])).s5_dual(0).holds
    assert powerset_rys(u, IDENTITY).s5_dual(0).holds
    path = closure(Relation.from_pairs(u, [("a", "b"), ("b", "c"), ("c", "d")]), ("reflexive", "symmetric"))
    sp = ApproxSpace.of(path, "tolerance")
    r = powerset_rys(u, [(lambda X: tolerance_ops(sp, X, "lT"), lambda X: tolerance_ops(sp, X, "uT"))])
    res = r.s5_dual(0)
    assert not res.holds and res.witness


def test_classical_profile():
    u = Universe("abcde")
    rel = Relation.from_partition(u, ["ab", "cde"])
    r = classical_system(rel)
    G = GranuleSet.of(r, partition_classes(rel))
    for a in ("RA", "ACG", "MER", "AS", "FU", "NO", "PS"):
        assert check_axiom(r, G, a).holds, a
    uu = check_axiom(r, G, "UU")
    assert not uu.holds and uu.witness


def test_mereology_on_powersets():
    u = Universe("abcd")
    r = powerset_rys(u, IDENTITY)
    for a in ("Transitivity", "P5", "P6", "Top"):
        assert check_mereology(r, a).holds
    ordinary = classical_system(Relation.from_partition(u, ["ab", "cd"]), null_empty=False)
    assert not check_mereology(ordinary, "Supplementation").holds
    single = Rys([u.full()], IDENTITY)
    assert all(check_mereology(single, a).holds for a in MEREOLOGY)


def test_admissibility():
    u = Universe("abcd")
    rel = Relation.from_partition(u, ["ab", "cd"])
    r = classical_system(rel)
    assert admissible(r, GranuleSet.of(r, partition_classes(rel)))
    assert not admissible(r, GranuleSet.of(r, [u.full()]))
    assert not admissible(r, GranuleSet.of(r, []))


def test_definition_check_rejects_non_monotone_ops():
    u = Universe("ab")
    flip = (lambda X: X, lambda X: u.full() if len(X) == 1 else X)
    with pytest.raises(DomainError):
        powerset_rys(u, [flip, (lambda X: u.empty() if X == u.full() else X, lambda X: X)])


def test_unknown_axiom():
    u = Universe("a")
    r = powerset_rys(u, IDENTITY)
    with pytest.raises(ValueError):
        check_axiom(r, GranuleSet.of(r, []), "NOPE")


@given(equivalences(1, 5))
def test_indiscernibility_kinds(rel):
    r = classical_system(rel)
    rows = indisc(r, "i-fixed", 0)
    for x in range(r.n):
        for y in range(r.n):
            same = r.lower[0][x] == r.lower[0][y] and r.upper[0][x] == r.upper[0][y]
            assert bool(rows[x] >> y & 1) == same
    assert indisc(r, "any") == indisc(r, "all") == rows
    G = GranuleSet.of(r, partition_classes(rel))
    assert indisc(r, "granule-fixed", 0, G) == rows


IMPLICATIONS = [("RA", "WRA"), ("ACG", "SCG"), ("MER", "SMER"), ("MER", "IMER"), ("FU", "LFU")]


@pytest.mark.parametrize("key", ["classical", "reflexive", "tolerance", "auai", "friends-1", "plus-1"])
def test_implications_between_axioms(key):
    th = THEORY_INDEX[key]
    rng = random.Random(7)
    for _ in range(25):
        inst = random_instance(th.kind, rng, rng.choice([3, 4]), cover=True)
        rys, G = th.build(inst)
        for p, q in IMPLICATIONS:
            if check_axiom(rys, G, p).holds:
                assert check_axiom(rys, G, q).holds, (key, p, q, inst)


def test_results_are_deterministic():
    th = THEORY_INDEX["tolerance-star"]
    rng = random.Random(3)
    inst = random_instance(th.kind, rng, 4)
    rys, G = th.build(inst)
    first = [check_axiom(rys, G, a) for a in AXIOMS]
    rys2, G2 = th.build(inst)
    assert first == [check_axiom(rys2, G2, a) for a in AXIOMS]
