import itertools

import pytest
from hypothesis import given, strategies as st

from roughgran.relapprox import (
    ApproxSpace, classical, esoteric, generic_granule_approx, granule_family,
    multi_approx, reflexive_approx, tolerance_ops,
)
from roughgran.theories import counting_relations
from roughgran.universe import DomainError, Relation, Universe, closure, partition_classes

from conftest import EQUIV, equivalence_pairs, equivalences, relations, subsets


def _row(rel, x):
    return {y for a, y in rel.pairs() if a == x}


def _clique_oracle(rel):
    """Maximal all-related subsets, by testing every subset."""
    u = list(rel.universe)
    cliques = [set(c) for k in range(1, len(u) + 1) for c in itertools.combinations(u, k)
               if all(rel.related(a, b) for a in c for b in c)]
    return {frozenset(c) for c in cliques if not any(c < d for d in cliques)}


def test_counting_relation_lower_and_upper():
    R, _ = counting_relations()
    sp = ApproxSpace.of(R, "equivalence")
    X = R.universe.set("efl")
    assert set(classical(sp, X, "lower")) == set("ef")
    assert set(classical(sp, X, "upper")) == set("eflmn")


def test_multiple_strong_lower_on_counting_pair():
    R, Q = counting_relations()
    sp = ApproxSpace.multiple([R, Q])
    assert set(multi_approx(sp, R.universe.set("ef"), "ls")) == set("ef")


def test_kind_mismatch_is_rejected():
    u = Universe("abc")
    path = closure(Relation.from_pairs(u, [("a", "b"), ("b", "c")]), ("reflexive", "symmetric"))
    with pytest.raises(DomainError):
        ApproxSpace.of(path, "equivalence")
    with pytest.raises(DomainError):
        classical(ApproxSpace.of(path, "tolerance"), u.set("a"), "lower")


def test_esoteric_uses_pseudo_classes():
    u = Universe("abcd")
    rel = Relation.from_pairs(u, [("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")])
    sp = ApproxSpace.of(rel, "partial-equivalence")
    assert set(esoteric(sp, u.set("abc"), "lower")) == set("ab")
    empty = ApproxSpace.of(Relation.empty(u), "partial-equivalence")
    assert not esoteric(empty, u.full(), "lower")


def test_reflexive_lower_needs_own_neighbourhood_inside():
    u = Universe("ab")
    rel = Relation.from_pairs(u, [("a", "a"), ("b", "b"), ("a", "b")])
    sp = ApproxSpace.of(rel, "reflexive")
    assert not reflexive_approx(sp, u.set("a"), "lower")
    assert set(reflexive_approx(sp, u.set("ab"), "lower")) == set("ab")


def test_path_blocks_and_intersections():
    u = Universe("abc")
    path = closure(Relation.from_pairs(u, [("a", "b"), ("b", "c")]), ("reflexive", "symmetric"))
    sp = ApproxSpace.of(path, "tolerance")
    assert {frozenset(b) for b in granule_family(sp, "B")} == {frozenset("ab"), frozenset("bc")}
    assert frozenset("b") in {frozenset(b) for b in granule_family(sp, "A")}
    tri = ApproxSpace.of(Relation.full(u), "tolerance")
    assert [set(b) for b in granule_family(tri, "B")] == [set("abc")]


@given(relations(1, 6, kinds=("reflexive", "symmetric")))
def test_blocks_match_subset_enumeration(rel):
    sp = ApproxSpace.of(rel, "tolerance")
    assert {frozenset(b) for b in granule_family(sp, "B")} == _clique_oracle(rel)


@given(relations(1, 6, kinds=("reflexive", "symmetric")))
def test_intersection_families_are_closed(rel):
    sp = ApproxSpace.of(rel, "tolerance")
    for kind in ("A", "Asigma", "TI"):
        fam = {g.mask for g in granule_family(sp, kind)}
        assert 0 not in fam
        for a in fam:
            for b in fam:
                assert a & b == 0 or a & b in fam


@given(equivalences(1, 6), st.data())
def test_classical_matches_class_enumeration(rel, data):
    X = data.draw(subsets(rel.universe))
    sp = ApproxSpace.of(rel, "equivalence")
    classes = [set(c) for c in partition_classes(rel)]
    lo = set().union(*[c for c in classes if c <= set(X)])
    hi = set().union(*[c for c in classes if c & set(X)])
    assert set(classical(sp, X, "lower")) == lo
    assert set(classical(sp, X, "upper")) == hi
    fam = granule_family(sp, "classes")
    assert generic_granule_approx(fam, X, "lG") == classical(sp, X, "lower")
    sp_t = ApproxSpace.of(rel, "tolerance")
    assert {frozenset(b) for b in granule_family(sp_t, "B")} == {frozenset(c) for c in classes}
    assert tolerance_ops(sp_t, X, "lstar") == classical(sp, X, "lower")


@given(relations(1, 7, kinds=("reflexive", "symmetric")), st.data())
def test_tolerance_chain_and_duality(rel, data):
    sp = ApproxSpace.of(rel, "tolerance")
    X = data.draw(subsets(rel.universe))
    lT, ls, us, uT = (tolerance_ops(sp, X, k) for k in ("lT", "lstar", "ustar", "uT"))
    assert lT <= ls <= X <= us <= uT
    assert us == ~tolerance_ops(sp, ~X, "lstar")
    assert tolerance_ops(sp, rel.universe.full(), "ustar") == rel.universe.full()


@given(relations(1, 6, kinds=("reflexive",)), st.data())
def test_reflexive_sandwich(rel, data):
    sp = ApproxSpace.of(rel, "reflexive")
    X = data.draw(subsets(rel.universe))
    assert reflexive_approx(sp, X, "lower") <= X <= reflexive_approx(sp, X, "upper")


@given(equivalence_pairs(1, 6), st.data())
def test_multiple_pointwise_bounds(pair, data):
    R, Q = pair
    X = data.draw(subsets(R.universe))
    sp = ApproxSpace.multiple([R, Q])
    ls, lw, us, uw = (multi_approx(sp, X, k) for k in ("ls", "lw", "us", "uw"))
    for r in (R, Q):
        one = ApproxSpace.of(r, "equivalence")
        assert ls <= classical(one, X, "lower") <= lw
        assert uw <= classical(one, X, "upper") <= us


@given(equivalences(1, 6), st.data())
def test_classical_is_idempotent_and_dual(rel, data):
    sp = ApproxSpace.of(rel, "equivalence")
    X = data.draw(subsets(rel.universe))
    lo = classical(sp, X, "lower")
    assert classical(sp, lo, "lower") == lo
    assert classical(sp, X, "upper") == ~classical(sp, ~X, "lower")


def test_generic_empty_index_conventions():
    u = Universe("abc")
    G = [u.set("ab")]
    assert generic_granule_approx(G, u.full(), "u1G") == u.full()
    assert not generic_granule_approx(G, u.empty(), "lG")
