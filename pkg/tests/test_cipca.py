import itertools

import pytest
from hypothesis import given, settings

from roughgran.cipca import (
    build_cipca, certificate, check_semilinear, compose, ipc_counts,
)
from roughgran.counting import count_preceq
from roughgran.universe import DomainError, Relation, Universe

from conftest import relations


@pytest.fixture(scope="module")
def two_pairs():
    u = Universe("abcde")
    return build_cipca(u, Relation.from_partition(u, ["ab", "cd", "e"]))


def test_two_pairs_classes(two_pairs):
    cp = two_pairs
    assert len(cp.counts) == 8
    assert sum(len(m) for m in cp.members) == 120
    assert certificate(cp).holds
    assert cp.density() == pytest.approx(8 / 64)


def test_identity_class_acts_as_identity(two_pairs):
    cp = two_pairs
    e = cp.identity_class()
    for a in range(len(cp.counts)):
        for v in (cp.op(e, a), cp.op(a, e)):
            assert v is None or v == a


def test_undefined_entries_carry_clashes(two_pairs):
    cp = two_pairs
    for (a, b), (x, y, x2, y2) in cp.clashes.items():
        assert cp.op(a, b) is None
        assert cp.class_of(compose(x, y)) != cp.class_of(compose(x2, y2))


def test_certificate_catches_tampering(two_pairs):
    cp = two_pairs
    (a, b), v = next((k, v) for k, v in cp.table.items() if v is not None)
    cp.table[a, b] = (v + 1) % len(cp.counts)
    try:
        cert = certificate(cp)
        assert not cert.holds
        assert any(f"({a},{b})" in p for p in cert.problems)
    finally:
        cp.table[a, b] = v


def test_two_pairs_counts_are_not_semilinear(two_pairs):
    res = check_semilinear(two_pairs.counts)
    assert not res.holds and res.clause == "down-set is not a chain"


def test_trivial_relations_collapse_to_one_class():
    u = Universe("abc")
    for rel in (Relation.identity(u), Relation.full(u)):
        cp = build_cipca(u, rel)
        assert len(cp.counts) == 1 and cp.density() == 1.0
        assert check_semilinear(cp.counts).holds


def test_size_cap():
    u = Universe("abcdefg")
    with pytest.raises(DomainError, match="capped"):
        build_cipca(u, Relation.identity(u))


def test_compose_applies_left_first():
    x, y = (1, 2, 0), (0, 2, 1)
    assert compose(x, y) == (2, 1, 0)
    perms = list(itertools.permutations(range(3)))
    for a, b, c in itertools.product(perms, repeat=3):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_semilinear_checker_on_small_orders():
    chain = [0, 1, 2, 3]
    assert check_semilinear(chain, lambda a, b: a <= b).holds
    # a tree rooted below: 0 < 1, 0 < 2
    tree = {(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)}
    assert check_semilinear([0, 1, 2], lambda a, b: (a, b) in tree).holds
    # an upside-down tree: 1 and 2 both sit below 0
    vee = {(0, 0), (1, 1), (2, 2), (1, 0), (2, 0)}
    res = check_semilinear([0, 1, 2], lambda a, b: (a, b) in vee)
    assert not res.holds and res.clause == "down-set is not a chain"
    anti = {(0, 0), (1, 1)}
    res = check_semilinear([0, 1], lambda a, b: (a, b) in anti)
    assert res.clause == "no common lower bound"


@settings(max_examples=25)
@given(relations(1, 4))
def test_certificate_holds(rel):
    cp = build_cipca(rel.universe, rel)
    assert certificate(cp).holds
    assert {c for c in cp.counts} == set(ipc_counts(rel.universe, rel))


@settings(max_examples=25)
@given(relations(1, 4))
def test_classes_partition_permutations(rel):
    cp = build_cipca(rel.universe, rel)
    for i, ms in enumerate(cp.members):
        for x in ms:
            assert cp.class_of(x) == i


@settings(max_examples=25)
@given(relations(1, 4))
def test_count_order_is_reflexive_on_classes(rel):
    for c in ipc_counts(rel.universe, rel):
        assert count_preceq(c, c)
