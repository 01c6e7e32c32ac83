import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from roughgran.counting import (
    Count, CountedSequence, count, count_preceq, countability, definites_from_count,
    granular_hpc, granules_from_count, is_lower, is_upper, max_ipc_order, one_runs,
    rough_quotient, rough_quotient_from_counts, runs_preceq, tau_eps,
)
from roughgran.relapprox import ApproxSpace, classical
from roughgran.theories import counting_relations
from roughgran.universe import DomainError, Relation, Universe, partition_classes

from conftest import equivalences, relations, subsets

SEQ = "f b c a k i n h e l g m".split()
HPC_Q = "1_1 2_1 3_1 1_2 2_2 1_3 2_3 3_3 1_4 1_5 2_5 1_6"
HPPC_R = "1 2 * * 3 * 4 5 * * * *"
IPC_R_HEAD = "1_1 2_1 1_2 1_3 2_3 1_4 2_4 3_4"
IPC_R = IPC_R_HEAD + " 4_4 5_4 6_4 7_4"


def oracle(rel, names, scheme):
    """Token strings from the counting rules, reading related pairs by name."""
    out, top = [], 0
    for p, x in enumerate(names):
        if p == 0:
            val, typ = 1, 1
        else:
            near = rel.related(names[p - 1], x)
            earlier = any(rel.related(y, x) for y in names[:p])
            v, t = out[-1] if isinstance(out[-1], tuple) else (None, 1)
            if scheme == "IPC":
                val, typ = (1, t + 1) if near else (v + 1, t)
            elif scheme == "HPC":
                val, typ = (1, t + 1) if earlier else (v + 1, t)
            else:
                hit = earlier if scheme == "HPPC" else near
                if hit:
                    out.append("*")
                    continue
                val, typ = top + 1, 1
        top = max(top, val)
        out.append((val, typ))
    if scheme in ("IPC", "HPC"):
        return " ".join(f"{v}_{t}" for v, t in out)
    return " ".join(t if t == "*" else str(t[0]) for t in out)


def test_counting_example_lines():
    R, Q = counting_relations()
    assert count(CountedSequence.of(Q, SEQ), "HPC").render() == HPC_Q
    assert count(CountedSequence.of(R, SEQ), "HPPC").render() == HPPC_R
    ipc = count(CountedSequence.of(R, SEQ), "IPC").render()
    assert ipc.split()[:8] == IPC_R_HEAD.split()
    assert ipc == IPC_R


def test_tau_eps():
    _, Q = counting_relations()
    seq = CountedSequence.of(Q, SEQ)
    assert tau_eps(seq, None, 12) == (7, 10)
    assert tau_eps(seq, None, 1) == (1, None)
    with pytest.raises(IndexError):
        tau_eps(seq, None, 13)
    diag = CountedSequence.of(Relation.identity(Q.universe), SEQ)
    assert all(tau_eps(diag, None, p) == (p, None) for p in range(1, 13))


def test_count_round_trip_and_preceq_examples():
    c = Count.parse(HPC_Q, "HPC")
    assert c.render() == HPC_Q
    assert runs_preceq([2, 2], [3, 2]) and not runs_preceq([3, 2], [2, 2])
    assert not runs_preceq([3], [1, 2]) and not runs_preceq([1, 2], [3])
    with pytest.raises(DomainError):
        count_preceq(Count.parse("1_1"), Count.parse("1_1 2_1"))


def test_countability_examples():
    u = Universe("abc")
    assert countability(u, Relation.identity(u), "IPPC", "index") == 1
    assert countability(u, Relation.full(u), "HPPC", "index") == 0
    pair = Relation.from_pairs(u, [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b")])
    good = sum(1 for o in itertools.permutations("abc")
               if not any(o[i] == "a" and o[i + 1] == "b" for i in range(2)))
    assert countability(u, pair, "IPPC", "index") == Fraction(good, 6)
    assert countability(u, pair, "IPPC")


def test_max_order_on_counting_example():
    R, _ = counting_relations()
    seq = max_ipc_order(R.universe, R)
    assert " ".join(seq.names()) == "f e b c a k i n l m h g"
    assert count(seq, "IPC").render() == "1_1 1_2 2_2 1_3 1_4 2_4 1_5 2_5 1_6 1_7 2_7 1_8"
    got = {frozenset(g) for g in granules_from_count(seq, count(seq, "IPC"))}
    assert got == {frozenset(c) for c in partition_classes(R)}


def test_trivial_recoveries():
    u = Universe("abcd")
    diag = max_ipc_order(u, Relation.identity(u))
    assert count(diag, "IPC").render() == "1_1 2_1 3_1 4_1"
    assert [set(g) for g in granules_from_count(diag, count(diag, "IPC"))] == [{x} for x in "abcd"]
    one = max_ipc_order(u, Relation.full(u))
    assert count(one, "IPC").render() == "1_1 1_2 1_3 1_4"


@given(relations(1, 6), st.data())
def test_counts_match_rule_oracle(rel, data):
    names = data.draw(st.permutations(list(rel.universe)))
    seq = CountedSequence.of(rel, names)
    for scheme in ("IPC", "HPC", "HPPC", "IPPC"):
        assert count(seq, scheme).render() == oracle(rel, names, scheme)


@given(relations(1, 6), st.data())
def test_hppc_star_iff_related_to_some_predecessor(rel, data):
    names = data.draw(st.permutations(list(rel.universe)))
    toks = count(CountedSequence.of(rel, names), "HPPC").tokens
    for p, t in enumerate(toks):
        assert t.star == any(rel.related(y, names[p]) for y in names[:p])


@given(relations(2, 6), st.data())
def test_ipc_ignores_non_adjacent_pairs(rel, data):
    names = data.draw(st.permutations(list(rel.universe)))
    i, j = sorted(data.draw(st.lists(st.integers(0, len(names) - 1), min_size=2, max_size=2, unique=True)))
    if j == i + 1:
        return
    u = rel.universe
    rows = list(rel.rows)
    a, b = u.position(names[i]), u.position(names[j])
    rows[a] ^= 1 << b
    flipped = Relation(u, tuple(rows))
    assert count(CountedSequence.of(rel, names), "IPC") == count(CountedSequence.of(flipped, names), "IPC")


@given(equivalences(1, 8), st.data())
def test_recovery_and_lower_upper(rel, data):
    u = rel.universe
    seq = max_ipc_order(u, rel)
    grans = granules_from_count(seq, count(seq, "IPC"))
    assert {g.mask for g in grans} == {c.mask for c in partition_classes(rel)}
    sp = ApproxSpace.of(rel, "equivalence")
    A = data.draw(subsets(u))
    assert is_lower(grans, A, classical(sp, A, "lower"))
    assert is_upper(grans, A, classical(sp, A, "upper"))
    defs = definites_from_count(seq, count(seq, "IPC"))
    assert len(defs) == 2 ** len(grans)


@given(equivalences(1, 5))
def test_maximal_count_is_preceq_maximal(rel):
    u = rel.universe
    best = count(max_ipc_order(u, rel), "IPC")
    for order in itertools.permutations(range(len(u))):
        other = count(CountedSequence(u, order, rel), "IPC")
        assert not (count_preceq(best, other) and not count_preceq(other, best))


@given(st.lists(st.integers(1, 4), max_size=4), st.lists(st.integers(1, 4), max_size=4))
def test_preceq_is_reflexive_and_antisymmetric_on_profiles(a, b):
    assert runs_preceq(a, a)
    if runs_preceq(a, b) and runs_preceq(b, a):
        pad = max(len(a), len(b))
        assert a + [0] * (pad - len(a)) == b + [0] * (pad - len(b))


def test_granular_words():
    u = Universe("abcd")
    G = [u.set("ab"), u.set("cd")]
    seq = CountedSequence.of(Relation.from_partition(u, ["ab", "cd"]), "abcd")
    gc = granular_hpc(seq, G, ["C1", "C2"])
    assert gc.words[0] == () and gc.words[1] == ((0, 1),)
    assert gc.empty_words() == [1, 3]
    assert "[(C1,C2)]" in gc.render()


def test_rough_quotient():
    u = Universe("ab")
    q = rough_quotient(u, Relation.full(u))
    assert set(q.pairs) == {(0, 0), (0, 3), (3, 3)}
    for x in q.pairs:
        assert q.L(q.L(x)) == q.L(x)
        if x[0] == x[1]:
            assert q.neg(q.neg(x)) == x


@given(equivalences(1, 5))
def test_quotient_rebuilt_from_counts(rel):
    assert rough_quotient_from_counts(rel.universe, rel) == rough_quotient(rel.universe, rel)


def test_count_determinism_and_one_runs():
    R, _ = counting_relations()
    seq = CountedSequence.of(R, SEQ)
    assert count(seq, "IPC") == count(seq, "IPC")
    assert one_runs(Count.parse("1_1 1_2 2_2 1_3 1_4 2_4")) == [2, 2]
