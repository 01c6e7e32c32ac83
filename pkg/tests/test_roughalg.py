import itertools

import pytest

from roughgran.roughalg import (
    SUITES, algebra_suite, compatibility_laws, format_report, implication_laws,
    independence_search, negation_search, noncommutativity_witness, quasi_order_items,
    ripca_laws, ripcna_laws, run_law, zeta_fragment,
)
from roughgran.roughnat import ZERO, all_naturals, natural, oplus, order, reach_order

SAMPLES = 1500


def _by_name(results):
    return {r.name: r for r in results}


@pytest.mark.parametrize("law", ripcna_laws(), ids=lambda l: l.name)
def test_sum_and_copy_laws(law):
    res = run_law(law, exhaustive_len=4, samples=SAMPLES, max_len=7)
    assert res.holds, res.describe()


@pytest.mark.parametrize("law", ripca_laws(), ids=lambda l: l.name)
def test_substitution_laws(law):
    res = run_law(law, exhaustive_len=4, samples=SAMPLES, max_len=7)
    assert res.holds, res.describe()


@pytest.mark.parametrize("law", implication_laws() + compatibility_laws(), ids=lambda l: l.name)
def test_order_laws(law):
    res = run_law(law, exhaustive_len=4, samples=SAMPLES, max_len=7)
    assert res.holds, res.describe()


def test_zeta_fragment_matches_integers():
    res = _by_name(zeta_fragment(50))
    assert res["naturals agree with integer + x and - where defined"].holds
    assert res["naturals have no zero divisors"].holds
    # counts are never negative, so no nonzero natural can be cancelled by a sum
    inv = res["every natural has an additive inverse"]
    assert not inv.holds and inv.witness == (1,)


def test_sum_is_not_commutative():
    res = noncommutativity_witness()
    assert res.holds
    x, y = res.witness
    assert oplus(x, y) != oplus(y, x)


def test_no_additive_negation():
    res = negation_search(4)
    assert res.holds
    (x,) = res.witness
    assert all(oplus(x, y) != ZERO for y in all_naturals(6))


def test_sum_divisors_are_always_reachable():
    # half of the independence claim fails: no sum-divisible pair escapes reachability
    a, b = independence_search(4)
    assert not a.holds and a.witness is None
    elems = all_naturals(4)
    for x, y in itertools.product(elems, repeat=2):
        if order(x, y, "≤⊕"):
            assert reach_order(x, y), (x, y)
    assert b.holds
    x, y = b.witness
    assert reach_order(x, y) and not order(x, y, "≤⊕")


def test_quasi_order_items_recorded():
    res = _by_name(quasi_order_items(4))
    assert res["length order is a quasi order"].holds
    assert res["length order is not antisymmetric"].holds
    assert res["length order on naturals is the usual order"].holds

    reach = res["reachability is a quasi order"]
    assert not reach.holds
    x, y, z = reach.witness
    assert reach_order(x, y) and reach_order(y, z) and not reach_order(x, z)

    mutual = res["nonzero naturals are mutually reachable"]
    assert not mutual.holds
    x, y = mutual.witness
    assert y.nu < x.nu or not reach_order(x, y)


def test_reachability_never_lengthens():
    for x, y in itertools.product(all_naturals(4), repeat=2):
        if reach_order(x, y):
            assert x.nu <= y.nu


def test_suite_dispatch_and_report():
    with pytest.raises(ValueError):
        algebra_suite("RING")
    res = algebra_suite("ripca", samples=200, exhaustive_len=3)
    assert all(r.name.startswith("substitution") for r in res)
    text = format_report(res)
    assert text.count("\n") == len(res) - 1
    assert all(line.startswith("pass") for line in text.splitlines())


def test_small_suites_have_expected_failures():
    failing = {}
    for kind in SUITES:
        failing[kind] = sorted(r.name for r in algebra_suite(kind, samples=100, exhaustive_len=3)
                               if not r.holds)
    assert failing["RIPCNA"] == ["every natural has an additive inverse"]
    assert failing["RIPCA"] == []
    assert failing["FORIPCA"] == [
        "6a some sum-divisible pair is not reachable",
        "nonzero naturals are mutually reachable",
        "reachability is a quasi order",
    ]


def test_natural_sum_matches_integer_sum():
    for a, b in itertools.product(range(12), repeat=2):
        assert oplus(natural(a), natural(b)) == natural(a + b)
